#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "probespec/dressed.hpp"
#include "probespec/pathways.hpp"
#include "probespec/pumping.hpp"
#include "probespec/system.hpp"

using namespace probespec;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Frozen Clebsch-Gordan literals (Condon-Shortley), independent of the
// library's own angular-momentum code.
constexpr double kC0_21 = -0.63245553203367588;   // <2 0;1 0|1 0>
constexpr double kC1_21 = -0.54772255750516607;   // <2 1;1 0|1 1>
constexpr double kDe1g2_21 = 0.7745966692414834;  // <2 2;1 -1|1 1>
constexpr double kDe0g1_21 = 0.54772255750516607; // <2 1;1 -1|1 0>
constexpr double kC1_11 = 0.70710678118654757;    // <1 1;1 0|1 1>
constexpr double kC1_22 = 0.40824829046386302;    // <2 1;1 0|2 1>
constexpr double kC2_22 = 0.81649658092772603;    // <2 2;1 0|2 2>

DressedStateRef member(HalfInt m, int sign) { return {true, m, sign, {}}; }
DressedStateRef survivor(SublevelRef s) { return {false, {}, +1, s}; }

struct Setup {
    TransitionSystem sys;
    DressedBasis basis;
    PopulationDistribution pops;
    std::vector<Pathway> paths;
};

Setup make(HalfInt fg, HalfInt fe, double omega_c, double theta,
           double phi_c = 0.0) {
    Setup s{build_system(fg, fe, omega_c, 1.0, phi_c, ProbeGeometry{theta}),
            {}, {}, {}};
    s.basis = dress(s.sys);
    s.pops = pump_steady_state(s.sys);
    s.paths = enumerate_pathways(s.sys, s.basis, s.pops);
    return s;
}

std::vector<const Pathway*> of_class(const std::vector<Pathway>& paths,
                                     PathwayClass cls) {
    std::vector<const Pathway*> out;
    for (const auto& p : paths)
        if (p.cls == cls) out.push_back(&p);
    return out;
}

std::vector<Pathway> two_photon_only(const std::vector<Pathway>& paths) {
    std::vector<Pathway> out;
    for (const auto& p : paths)
        if (p.photons() == 2) out.push_back(p);
    return out;
}

// Independent closed form for the (2->1) second-order amplitude
// |g 2> -> |1, s_mid> -> |0, s_fin> at unit probe Rabi, built from the
// frozen literals and the explicit doublet mixing coefficients.
Complex closed_form_21(int s_mid, int s_fin, double omega_c, double theta,
                       double phi_c) {
    const Complex I(0.0, 1.0);
    const double eps_minus = std::sin(theta) / std::sqrt(2.0);
    const double p_e1_g2 = eps_minus * kDe1g2_21;  // bare |g 2> -> |e 1>
    const double p_e0_g1 = eps_minus * kDe0g1_21;  // bare |g 1> -> |e 0>
    // Both pi couplings are negative, so each doublet phase is phi_c + pi.
    const double phi1 = phi_c + kPi;
    const double phi0 = phi_c + kPi;
    const double omega1 = omega_c * std::abs(kC1_21);
    const double omega0 = omega_c * std::abs(kC0_21);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // |m,+> = (e^{-i phi}|g m> + |e m>)/sqrt(2); |m,-> = (|g m> - e^{i phi}|e m>)/sqrt(2)
    const Complex mid_g = s_mid > 0 ? std::exp(-I * phi1) * inv_sqrt2
                                    : Complex(inv_sqrt2, 0.0);
    const Complex mid_e = s_mid > 0 ? Complex(inv_sqrt2, 0.0)
                                    : -std::exp(I * phi1) * inv_sqrt2;
    const Complex fin_e = s_fin > 0 ? Complex(inv_sqrt2, 0.0)
                                    : -std::exp(I * phi0) * inv_sqrt2;
    const Complex up = std::conj(mid_e) * p_e1_g2;            // <mid|P|g2>
    const Complex on = std::conj(fin_e) * p_e0_g1 * mid_g;    // <fin|P|mid>
    const double denom = s_mid * omega1 / 2.0 - s_fin * omega0 / 4.0;
    return on * up / denom;
}
}  // namespace

TEST_CASE("(2->1) census: four one-photon and four two-photon pathways") {
    auto s = make(2, 1, 2.0, kPi / 2);
    REQUIRE(s.paths.size() == 8);
    auto obd = of_class(s.paths, PathwayClass::OnePhotonBareDressed);
    auto tbd = of_class(s.paths, PathwayClass::TwoPhotonBareDressed);
    auto tbb = of_class(s.paths, PathwayClass::TwoPhotonBareBare);
    CHECK(obd.size() == 4);
    CHECK(tbd.size() == 4);
    CHECK(tbb.empty());  // every excited sublevel is coupled

    const double omega1 = 2.0 * std::abs(kC1_21);
    const double omega0 = 2.0 * std::abs(kC0_21);
    for (const auto* p : obd) {
        CHECK(std::abs(std::abs(p->resonance_detuning) - omega1 / 2) < 1e-12);
        CHECK(p->initial_population == doctest::Approx(0.5).epsilon(1e-9));
        // |<m ±|P|g ±2>| = eps_- * <2 2;1 -1|1 1> / sqrt(2)
        const double expect = (1.0 / std::sqrt(2.0)) * kDe1g2_21 / std::sqrt(2.0);
        CHECK(std::abs(std::abs(p->total_amplitude) - expect) < 1e-12);
        CHECK(p->branches.empty());  // single direct transition, no routes
    }
    for (const auto* p : tbd) {
        CHECK(std::abs(std::abs(p->resonance_detuning) - omega0 / 4) < 1e-12);
        REQUIRE(p->branches.size() == 2);
        CHECK(!p->has_divergent);
        // Both routes interfere constructively: amplitudes share one sign.
        std::vector<Complex> amps{p->branches[0].amplitude,
                                  p->branches[1].amplitude};
        CHECK(interference_verdict(amps) == Interference::Constructive);
    }
}

TEST_CASE("(2->1) closed-form branch amplitudes over random draws") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int draw = 0; draw < 20; ++draw) {
        const double omega_c = 0.1 + 4.9 * u01(rng);
        const double phi_c = 2.0 * kPi * u01(rng);
        const double theta = 0.15 + (kPi - 0.3) * u01(rng);
        CAPTURE(draw);
        CAPTURE(omega_c);
        CAPTURE(phi_c);
        CAPTURE(theta);
        auto sys = build_system(2, 1, omega_c, 1.0, phi_c, ProbeGeometry{theta});
        auto basis = dress(sys);
        for (int s_fin : {+1, -1}) {
            for (int s_mid : {+1, -1}) {
                const Complex engine = branch_amplitude(
                    SublevelRef{false, 2}, member(1, s_mid), member(0, s_fin),
                    sys, basis);
                const Complex oracle =
                    closed_form_21(s_mid, s_fin, omega_c, theta, phi_c);
                CHECK(std::abs(engine - oracle) < 1e-10);
            }
            // Interfering-route ratio: real, positive, and exactly
            // (2 omega1 + omega0)/(2 omega1 - omega0) = 2 + sqrt(3).
            // The route whose intermediate lies on the same side as the
            // final state has the smaller mismatch, hence the larger
            // amplitude.
            const Complex near_route =
                closed_form_21(s_fin, s_fin, omega_c, theta, phi_c);
            const Complex far_route =
                closed_form_21(-s_fin, s_fin, omega_c, theta, phi_c);
            const Complex ratio = near_route / far_route;
            CHECK(std::abs(ratio.imag()) < 1e-10);
            CHECK(ratio.real() > 0.0);
            CHECK(std::abs(ratio.real() - (2.0 + std::sqrt(3.0))) < 1e-10);
        }
    }
}

TEST_CASE("(1->1) census: the four-branch central group cancels exactly") {
    auto s = make(1, 1, 2.0, kPi / 2);
    REQUIRE(s.paths.size() == 5);
    auto obd = of_class(s.paths, PathwayClass::OnePhotonBareDressed);
    auto tbb = of_class(s.paths, PathwayClass::TwoPhotonBareBare);
    CHECK(obd.size() == 4);
    REQUIRE(tbb.size() == 1);

    const Pathway& c = *tbb[0];
    CHECK(c.initial.m == HalfInt(0));
    CHECK(!c.initial.excited);
    CHECK(!c.final_state.is_doublet);
    CHECK(c.final_state.bare == SublevelRef{true, 0});
    CHECK(c.resonance_detuning == doctest::Approx(0.0).epsilon(1e-15));
    REQUIRE(c.branches.size() == 4);

    // The m = -1 routes carry the opposite sign of the m = +1 routes: the
    // sigma+ / sigma- matrix-element mirror and the coupling-sign flip leave
    // amplitudes {+a, +a, -a, -a}, so the net amplitude vanishes.
    std::vector<Complex> a;
    for (const auto& b : c.branches) a.push_back(b.amplitude);
    REQUIRE(a.size() == 4);
    CHECK(std::abs(a[0] - a[1]) < 1e-14);
    CHECK(std::abs(a[2] - a[3]) < 1e-14);
    CHECK(std::abs(a[0] + a[2]) < 1e-14);
    CHECK(std::abs(a[0]) > 0.1);  // individually large ...
    CHECK(std::abs(c.total_amplitude) < 1e-14);  // ... yet summing to zero
    CHECK(interference_verdict(a) == Interference::Destructive);

    auto table = peak_table(s.paths);
    REQUIRE(table.peaks.size() == 3);
    const double omega1 = 2.0 * kC1_11;
    CHECK(std::abs(table.peaks[0].delta + omega1 / 2) < 1e-12);
    CHECK(std::abs(table.peaks[1].delta) < 1e-12);
    CHECK(std::abs(table.peaks[2].delta - omega1 / 2) < 1e-12);
    CHECK(table.peaks[1].weight < 1e-25);
    CHECK(table.peaks[1].interference == Interference::Destructive);
}

TEST_CASE("(2->2) census: coincident resonances and one divergent route each") {
    auto s = make(2, 2, 2.0, kPi / 2);
    REQUIRE(s.paths.size() == 9);
    auto obd = of_class(s.paths, PathwayClass::OnePhotonBareDressed);
    auto tbd = of_class(s.paths, PathwayClass::TwoPhotonBareDressed);
    auto tbb = of_class(s.paths, PathwayClass::TwoPhotonBareBare);
    CHECK(obd.size() == 4);
    CHECK(tbd.size() == 4);
    REQUIRE(tbb.size() == 1);

    // Central group cancels exactly, just as in (1->1).
    CHECK(std::abs(tbb[0]->total_amplitude) < 1e-14);
    CHECK(interference_verdict([&] {
              std::vector<Complex> a;
              for (const auto& b : tbb[0]->branches) a.push_back(b.amplitude);
              return a;
          }()) == Interference::Destructive);

    // omega_2 / 4 == omega_1 / 2 exactly (c_2 = 2 c_1), so for each
    // stretched-state pathway one route's intermediate mismatch vanishes
    // identically: flagged divergent, leaving a single finite route.
    const double omega1 = 2.0 * kC1_22;
    const double omega2 = 2.0 * kC2_22;
    REQUIRE(std::abs(omega2 / 4 - omega1 / 2) < 1e-15);
    for (const auto* p : tbd) {
        CHECK(std::abs(std::abs(p->resonance_detuning) - omega2 / 4) < 1e-12);
        REQUIRE(p->branches.size() == 2);
        CHECK(p->has_divergent);
        int divergent = 0, finite = 0;
        for (const auto& b : p->branches) {
            if (b.divergent) {
                ++divergent;
                CHECK(std::abs(b.denominator) < 1e-12);
                CHECK(b.amplitude == Complex(0.0, 0.0));
            } else {
                ++finite;
                CHECK(std::abs(std::abs(b.denominator) - omega1) < 1e-12);
            }
        }
        CHECK(divergent == 1);
        CHECK(finite == 1);
    }

    // With the default tolerance the one- and two-photon resonances merge
    // into three numeric peaks.
    auto table = peak_table(s.paths);
    REQUIRE(table.peaks.size() == 3);
    CHECK(std::abs(table.peaks[0].delta + omega2 / 4) < 1e-12);
    CHECK(std::abs(table.peaks[1].delta) < 1e-12);
    CHECK(std::abs(table.peaks[2].delta - omega2 / 4) < 1e-12);
    CHECK(table.peaks[1].weight < 1e-25);

    // The two-photon subset alone resolves the paper-level prediction
    // {0, +-omega_2/4}.
    auto table2 = peak_table(two_photon_only(s.paths), 1e-9);
    REQUIRE(table2.peaks.size() == 3);
    CHECK(std::abs(table2.peaks[0].delta + omega2 / 4) < 1e-12);
    CHECK(std::abs(table2.peaks[1].delta) < 1e-12);
    CHECK(std::abs(table2.peaks[2].delta - omega2 / 4) < 1e-12);
}

TEST_CASE("exact resonance positions scale linearly with the coupling Rabi") {
    for (double omega_c : {0.1, 1.0, 10.0}) {
        CAPTURE(omega_c);
        {
            auto s = make(2, 1, omega_c, kPi / 2);
            auto table = peak_table(s.paths, 1e-9);
            REQUIRE(table.peaks.size() == 4);
            const double w1 = omega_c * std::abs(kC1_21) / 2;
            const double w0 = omega_c * std::abs(kC0_21) / 4;
            CHECK(std::abs(table.peaks[0].delta + w1) < 1e-12);
            CHECK(std::abs(table.peaks[1].delta + w0) < 1e-12);
            CHECK(std::abs(table.peaks[2].delta - w0) < 1e-12);
            CHECK(std::abs(table.peaks[3].delta - w1) < 1e-12);
        }
        {
            auto s = make(1, 1, omega_c, kPi / 2);
            auto table = peak_table(s.paths, 1e-9);
            REQUIRE(table.peaks.size() == 3);
            const double w1 = omega_c * kC1_11 / 2;
            CHECK(std::abs(table.peaks[0].delta + w1) < 1e-12);
            CHECK(std::abs(table.peaks[1].delta) < 1e-12);
            CHECK(std::abs(table.peaks[2].delta - w1) < 1e-12);
        }
        {
            auto s = make(2, 2, omega_c, kPi / 2);
            auto table = peak_table(two_photon_only(s.paths), 1e-9);
            REQUIRE(table.peaks.size() == 3);
            const double w2 = omega_c * kC2_22 / 4;
            CHECK(std::abs(table.peaks[0].delta + w2) < 1e-12);
            CHECK(std::abs(table.peaks[1].delta) < 1e-12);
            CHECK(std::abs(table.peaks[2].delta - w2) < 1e-12);
        }
    }
}

TEST_CASE("peak positions, weights, and verdicts ignore the coupling phase") {
    auto ref = make(2, 1, 1.7, kPi / 2, 0.0);
    auto ref_table = peak_table(ref.paths);
    for (double phi_c : {0.7, 2.1, kPi, 5.5}) {
        CAPTURE(phi_c);
        auto s = make(2, 1, 1.7, kPi / 2, phi_c);
        auto table = peak_table(s.paths);
        REQUIRE(table.peaks.size() == ref_table.peaks.size());
        for (std::size_t i = 0; i < table.peaks.size(); ++i) {
            CHECK(std::abs(table.peaks[i].delta - ref_table.peaks[i].delta) < 1e-10);
            CHECK(std::abs(table.peaks[i].weight - ref_table.peaks[i].weight) < 1e-10);
            CHECK(table.peaks[i].interference == ref_table.peaks[i].interference);
        }
        // Branch magnitudes are phase-independent as well.
        for (std::size_t i = 0; i < s.paths.size(); ++i) {
            REQUIRE(s.paths[i].branches.size() == ref.paths[i].branches.size());
            CHECK(std::abs(std::abs(s.paths[i].total_amplitude) -
                           std::abs(ref.paths[i].total_amplitude)) < 1e-10);
        }
    }
}

TEST_CASE("peak tables are mirror-symmetric for a transverse probe") {
    for (auto [fg, fe] : {std::pair<int, int>{2, 1}, {1, 1}, {2, 2}}) {
        CAPTURE(fg);
        CAPTURE(fe);
        auto s = make(fg, fe, 2.3, kPi / 2);
        auto table = peak_table(s.paths);
        const std::size_t n = table.peaks.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = table.peaks[i];
            const auto& b = table.peaks[n - 1 - i];
            CHECK(std::abs(a.delta + b.delta) < 1e-12);
            CHECK(std::abs(a.weight - b.weight) < 1e-12);
        }
    }
}

TEST_CASE("peak_table invariants: ordering, separation, weight bookkeeping") {
    auto s = make(2, 1, 2.0, kPi / 3);
    auto table = peak_table(s.paths);
    for (std::size_t i = 1; i < table.peaks.size(); ++i) {
        CHECK(table.peaks[i].delta > table.peaks[i - 1].delta);
        CHECK(table.peaks[i].delta - table.peaks[i - 1].delta >
              table.merge_tolerance);
    }
    for (const auto& pk : table.peaks) {
        double w = 0.0;
        double heaviest = -1.0;
        PathwayClass heavy_cls = pk.cls;
        for (int idx : pk.constituents) {
            REQUIRE(idx >= 0);
            REQUIRE(idx < static_cast<int>(s.paths.size()));
            const auto& p = s.paths[idx];
            const double wi =
                p.initial_population * std::norm(p.total_amplitude);
            w += wi;
            if (wi > heaviest) {
                heaviest = wi;
                heavy_cls = p.cls;
            }
        }
        CHECK(std::abs(pk.weight - w) < 1e-12);
        CHECK(pk.cls == heavy_cls);
    }
}

TEST_CASE("interference_verdict classifies coherent sums") {
    const Complex a(0.3, -0.2);
    const Complex I(0.0, 1.0);
    CHECK(interference_verdict({a, a, a, a}) == Interference::Constructive);
    CHECK(interference_verdict({a, 0.5 * a}) == Interference::Constructive);
    CHECK(interference_verdict({a, -a}) == Interference::Destructive);
    CHECK(interference_verdict({a, a, -a, -a}) == Interference::Destructive);
    CHECK(interference_verdict({a, I * a}) == Interference::Mixed);
    CHECK(interference_verdict({a}) == Interference::NotApplicable);
    CHECK(interference_verdict({}) == Interference::NotApplicable);
    // A vanishing partner neither helps nor hurts: coherent and incoherent
    // sums agree exactly.
    CHECK(interference_verdict({a, Complex(0.0, 0.0)}) == Interference::Mixed);
}

TEST_CASE("branch_amplitude rejects bad labels and divergent routes") {
    auto sys = build_system(2, 2, 2.0, 1.0, 0.0, ProbeGeometry{kPi / 2});
    auto basis = dress(sys);
    // Divergent route: |0> -> |2,+> via |1,+> has an exactly vanishing
    // intermediate mismatch.
    CHECK_THROWS_AS(branch_amplitude(SublevelRef{false, 0}, member(1, +1),
                                     member(2, +1), sys, basis),
                    std::domain_error);
    // The mirror route through |1,-> is finite.
    CHECK_NOTHROW(branch_amplitude(SublevelRef{false, 0}, member(1, -1),
                                   member(2, +1), sys, basis));
    // Excited initial state.
    CHECK_THROWS_AS(branch_amplitude(SublevelRef{true, 0}, member(1, +1),
                                     member(2, +1), sys, basis),
                    std::invalid_argument);
    // Survivor used as the intermediate.
    CHECK_THROWS_AS(branch_amplitude(SublevelRef{false, 0},
                                     survivor(SublevelRef{false, 0}),
                                     member(2, +1), sys, basis),
                    std::invalid_argument);
}

TEST_CASE("enumerate_pathways argument validation and degenerate inputs") {
    auto sys = build_system(2, 1, 2.0, 1.0, 0.0, ProbeGeometry{kPi / 2});
    auto basis = dress(sys);
    auto pops = pump_steady_state(sys);
    CHECK_THROWS_AS(enumerate_pathways(sys, basis, pops, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_pathways(sys, basis, pops, 0),
                    std::invalid_argument);

    PopulationDistribution bad = pops;
    bad.populations = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(enumerate_pathways(sys, basis, bad),
                    std::invalid_argument);

    // One-photon truncation drops the second-order pathways.
    auto one = enumerate_pathways(sys, basis, pops, 1);
    CHECK(one.size() == 4);
    for (const auto& p : one) CHECK(p.photons() == 1);

    // Without the coupling there are no doublets, hence no pathways.
    auto bare_sys = build_system(2, 1, 0.0, 1.0, 0.0, ProbeGeometry{kPi / 2});
    auto bare_basis = dress(bare_sys);
    auto bare_pops = pump_steady_state(bare_sys);
    CHECK(enumerate_pathways(bare_sys, bare_basis, bare_pops).empty());
}

TEST_CASE("predict_breakup reproduces the transverse-probe counts") {
    const auto p21 = predict_breakup(2, 1, kPi / 2);
    REQUIRE(p21.two_photon_peak_count == 2);
    CHECK(p21.positions[0].str() == "-Omega_0/4");
    CHECK(p21.positions[1].str() == "+Omega_0/4");

    const auto p11 = predict_breakup(1, 1, kPi / 2);
    REQUIRE(p11.two_photon_peak_count == 1);
    CHECK(p11.positions[0].str() == "0");

    const auto p22 = predict_breakup(2, 2, kPi / 2);
    REQUIRE(p22.two_photon_peak_count == 3);
    CHECK(p22.positions[0].str() == "-Omega_2/4");
    CHECK(p22.positions[1].str() == "0");
    CHECK(p22.positions[2].str() == "+Omega_2/4");

    const auto ph = predict_breakup(HalfInt::from_twice(3),
                                    HalfInt::from_twice(1), kPi / 2);
    CHECK(ph.two_photon_peak_count == 2);
}

TEST_CASE("predict_breakup adds pi-probe resonances away from 90 degrees") {
    const double theta = kPi / 3;
    const auto p21 = predict_breakup(2, 1, theta);
    REQUIRE(p21.two_photon_peak_count == 4);
    CHECK(p21.positions[0].str() == "-Omega_0/4");
    CHECK(p21.positions[1].str() == "-Omega_1/4");
    CHECK(p21.positions[2].str() == "+Omega_1/4");
    CHECK(p21.positions[3].str() == "+Omega_0/4");

    CHECK(predict_breakup(1, 1, theta).two_photon_peak_count == 3);
    CHECK(predict_breakup(2, 2, theta).two_photon_peak_count == 5);
}

TEST_CASE("predict_breakup is empty without trapped ground population") {
    CHECK(predict_breakup(1, 2, kPi / 2).two_photon_peak_count == 0);
    CHECK(predict_breakup(1, 2, kPi / 3).two_photon_peak_count == 0);
    CHECK(predict_breakup(1, 0, kPi / 2).two_photon_peak_count == 0);
}

TEST_CASE("synthesize_spectrum renders Lorentzian peaks by class") {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(-2.0 + i * 0.01);
    WidthPolicy widths;  // 0.5 one-photon, 0.25 two-photon half-widths

    PeakTable empty;
    auto flat = synthesize_spectrum(empty, widths, grid);
    REQUIRE(flat.delta.size() == grid.size());
    for (double v : flat.absorption) CHECK(v == 0.0);

    PeakTable one;
    one.peaks.push_back(
        {0.5, 2.0, PathwayClass::OnePhotonBareDressed, {}, Interference::NotApplicable});
    auto trace = synthesize_spectrum(one, widths, grid);
    const auto at = [&](double x) {
        const auto it = std::min_element(
            grid.begin(), grid.end(),
            [&](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
        return trace.absorption[it - grid.begin()];
    };
    CHECK(at(0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(at(0.5 + widths.one_photon_half_width) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at(0.5) == *std::max_element(trace.absorption.begin(),
                                       trace.absorption.end()));

    PeakTable two = one;
    two.peaks.push_back(
        {-0.75, 1.0, PathwayClass::TwoPhotonBareDressed, {}, Interference::Constructive});
    std::sort(two.peaks.begin(), two.peaks.end(),
              [](const Peak& a, const Peak& b) { return a.delta < b.delta; });
    auto both = synthesize_spectrum(two, widths, grid);
    const auto atb = [&](double x) {
        const auto it = std::min_element(
            grid.begin(), grid.end(),
            [&](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
        return both.absorption[it - grid.begin()];
    };
    // Narrower two-photon peak rides on the one-photon tail.
    CHECK(atb(-0.75) > 1.0);
    CHECK(atb(-0.75 + widths.two_photon_half_width) < atb(-0.75));

    std::vector<double> unsorted{0.0, -1.0, 1.0};
    CHECK_THROWS_AS(synthesize_spectrum(one, widths, unsorted),
                    std::invalid_argument);
}
