#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "probespec/floquet.hpp"
#include "probespec/peaks.hpp"
#include "probespec/system.hpp"

using namespace probespec;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectrumTrace sample(double lo, double hi, int n, double (*f)(double)) {
    SpectrumTrace t;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        t.delta.push_back(x);
        t.absorption.push_back(f(x));
    }
    return t;
}

double lorentzian_0306(double x) {
    const double c = 0.306, hw = 0.25;
    return hw * hw / (hw * hw + (x - c) * (x - c));
}

double two_bumps(double x) {
    return 1.0 / (1.0 + (x + 1.0) * (x + 1.0) / 0.04) +
           0.05 / (1.0 + (x - 1.0) * (x - 1.0) / 0.04);
}

}  // namespace

TEST_CASE("single Lorentzian gives one refined peak at its center") {
    const auto t = sample(-2.0, 2.0, 161, lorentzian_0306);  // step 0.025
    const auto peaks = find_peaks(t);
    REQUIRE(peaks.size() == 1);
    const double step = 0.025;
    CHECK(std::abs(peaks[0].delta - 0.306) < step);       // within one grid step
    CHECK(std::abs(peaks[0].delta - 0.306) < step / 5);   // refinement does better
    CHECK(peaks[0].height == doctest::Approx(1.0).epsilon(1e-3));
    // Global maximum: prominence reaches down to the higher of the two tails.
    CHECK(peaks[0].prominence > 0.9);
    CHECK(peaks[0].prominence <= peaks[0].height);
}

TEST_CASE("flat and monotone traces have no peaks") {
    SpectrumTrace flat;
    for (int i = 0; i < 50; ++i) {
        flat.delta.push_back(0.1 * i);
        flat.absorption.push_back(0.7);
    }
    CHECK(find_peaks(flat).empty());

    SpectrumTrace ramp;
    for (int i = 0; i < 50; ++i) {
        ramp.delta.push_back(0.1 * i);
        ramp.absorption.push_back(0.01 * i);
    }
    CHECK(find_peaks(ramp).empty());
}

TEST_CASE("prominence filter drops minor bumps") {
    const auto t = sample(-3.0, 3.0, 601, two_bumps);
    const auto all = find_peaks(t);
    REQUIRE(all.size() == 2);
    CHECK(all[0].delta == doctest::Approx(-1.0).epsilon(1e-3));
    // The minor bump rides the major one's tail, which shifts its apex a bit.
    CHECK(std::abs(all[1].delta - 1.0) < 0.01);
    CHECK(all[0].prominence > all[1].prominence);

    const auto big = find_peaks(t, 0.5);
    REQUIRE(big.size() == 1);
    CHECK(big[0].delta == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("flat-topped maxima count once, at the midpoint") {
    SpectrumTrace t;
    t.delta = {0.0, 1.0, 2.0, 3.0, 4.0};
    t.absorption = {0.0, 1.0, 1.0, 1.0, 0.0};
    const auto peaks = find_peaks(t);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].delta == 2.0);  // no quadratic refinement on a plateau
    CHECK(peaks[0].height == 1.0);
    CHECK(peaks[0].prominence == 1.0);

    SpectrumTrace edge;  // plateau running off the end is not a maximum
    edge.delta = {0.0, 1.0, 2.0};
    edge.absorption = {0.0, 1.0, 1.0};
    CHECK(find_peaks(edge).empty());
}

TEST_CASE("equal twin peaks both get full prominence") {
    SpectrumTrace t;
    t.delta = {0.0, 1.0, 2.0, 3.0, 4.0};
    t.absorption = {0.0, 1.0, 0.2, 1.0, 0.0};
    const auto peaks = find_peaks(t);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].prominence == 1.0);
    CHECK(peaks[1].prominence == 1.0);
}

TEST_CASE("refinement stays inside its cell on a lopsided grid") {
    SpectrumTrace t;
    t.delta = {0.0, 0.1, 0.9, 1.0};
    t.absorption = {0.0, 0.8, 0.9, 0.0};
    const auto peaks = find_peaks(t);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].delta >= 0.1);
    CHECK(peaks[0].delta <= 1.0);
    CHECK(peaks[0].height >= 0.9);
}

TEST_CASE("rejects malformed traces") {
    SpectrumTrace bad;
    bad.delta = {0.0, 1.0};
    bad.absorption = {0.0};
    CHECK_THROWS_AS((void)find_peaks(bad), std::invalid_argument);

    SpectrumTrace unsorted;
    unsorted.delta = {0.0, 2.0, 1.0};
    unsorted.absorption = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS((void)find_peaks(unsorted), std::invalid_argument);

    SpectrumTrace ok;
    ok.delta = {0.0, 1.0, 2.0};
    ok.absorption = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS((void)find_peaks(ok, -0.1), std::invalid_argument);
}

TEST_CASE("oracle trace: strong-coupling F_g=2 -> F_e=2 shows two flank peaks") {
    // The center of this spectrum is exactly dark (the combined field traps
    // the population in a non-absorbing superposition), so the only peaks are
    // the dressed flanks at +-Omega_2/4 = +-Omega_1/2 = +-0.408 Gamma.
    const auto sys = build_system(2, 2, 2.0, 1.0, 0.0, ProbeGeometry{kPi / 2});
    std::vector<double> grid;
    for (int i = 0; i < 241; ++i) grid.push_back(-1.5 + 3.0 * i / 240.0);
    const auto spec = oracle_spectrum(sys, 0.1, grid);

    double top = 0.0;
    for (double v : spec.trace.absorption) top = std::max(top, v);
    const auto peaks = find_peaks(spec.trace, 0.01 * top);

    REQUIRE(peaks.size() == 2);
    const double pos = 2.0 * 0.81649658092772603 / 4.0;  // Omega_2 / 4
    CHECK(std::abs(peaks[0].delta + pos) < 0.0125);
    CHECK(std::abs(peaks[1].delta - pos) < 0.0125);
    CHECK(std::abs(peaks[0].delta + peaks[1].delta) < 1e-6);  // mirror pair
    CHECK(peaks[0].height == doctest::Approx(peaks[1].height).epsilon(1e-8));
    CHECK(peaks[0].height > 0.4);
    for (const auto& p : peaks) CHECK(std::abs(p.delta) > 0.3);
}
