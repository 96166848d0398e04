#include "probespec/angular.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <vector>

namespace probespec {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRat = mp::cpp_rational;
using BigFloat = mp::cpp_bin_float_quad;

// ------------------------------------------------------------------ HalfInt

HalfInt HalfInt::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("HalfInt: empty string");
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            const int num = std::stoi(s.substr(0, slash));
            const int den = std::stoi(s.substr(slash + 1));
            if (den == 2) return HalfInt::from_twice(num);
            if (den == 1) return HalfInt(num);
            throw std::invalid_argument("denominator must be 1 or 2");
        }
        if (s.find('.') != std::string::npos) {
            const double v = std::stod(s);
            const double t = 2.0 * v;
            const double r = std::round(t);
            if (std::abs(t - r) > 1e-9)
                throw std::invalid_argument("not a half-integer");
            return HalfInt::from_twice(static_cast<int>(r));
        }
        return HalfInt(std::stoi(s));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("HalfInt: cannot parse '" + s + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("HalfInt: out of range '" + s + "'");
    }
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

// ------------------------------------------------------------- Racah 3-j sum

namespace {

BigInt factorial(int n) {
    static std::vector<BigInt> cache{1};  // cache[k] = k!
    if (n < 0) throw std::domain_error("factorial of negative number");
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.back() * static_cast<int>(cache.size()));
    return cache[n];
}

double sqrt_of(const BigRat& r) {
    const BigFloat num(numerator(r));
    const BigFloat den(denominator(r));
    return sqrt(num / den).convert_to<double>();
}

bool valid_pair(HalfInt j, HalfInt m) {
    // m must range over -j..j in integer steps, which also forces j+m integral
    return (j.twice() + m.twice()) % 2 == 0 && m.twice() >= -j.twice() &&
           m.twice() <= j.twice();
}

}  // namespace

double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt m1, HalfInt m2, HalfInt m3) {
    if (j1.twice() < 0 || j2.twice() < 0 || j3.twice() < 0) return 0.0;
    if ((m1 + m2 + m3).twice() != 0) return 0.0;
    if (!integer_sum(j1, j2, j3)) return 0.0;
    if (!valid_pair(j1, m1) || !valid_pair(j2, m2) || !valid_pair(j3, m3))
        return 0.0;
    if ((j1 - j2).twice() > j3.twice() || (j2 - j1).twice() > j3.twice() ||
        j3.twice() > (j1 + j2).twice())
        return 0.0;

    // Everything below is integral once the checks above pass.
    const int a1 = (j1 + j2 - j3).as_int();
    const int a2 = (j1 - j2 + j3).as_int();
    const int a3 = (-j1 + j2 + j3).as_int();
    const int b1p = (j1 + m1).as_int(), b1m = (j1 - m1).as_int();
    const int b2p = (j2 + m2).as_int(), b2m = (j2 - m2).as_int();
    const int b3p = (j3 + m3).as_int(), b3m = (j3 - m3).as_int();

    const int kmin = std::max({0, (j2 - j3 - m1).as_int(), (j1 - j3 + m2).as_int()});
    const int kmax = std::min({a1, b1m, b2p});
    if (kmax < kmin) return 0.0;

    BigRat sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        BigInt den = factorial(k) * factorial(a1 - k) * factorial(b1m - k) *
                     factorial(b2p - k) * factorial((j3 - j2 + m1).as_int() + k) *
                     factorial((j3 - j1 - m2).as_int() + k);
        BigRat term(1, den);
        if (k % 2 != 0) term = -term;
        sum += term;
    }
    if (sum == 0) return 0.0;

    const BigRat delta(factorial(a1) * factorial(a2) * factorial(a3),
                       factorial((j1 + j2 + j3).as_int() + 1));
    const BigRat norm = delta * factorial(b1p) * factorial(b1m) * factorial(b2p) *
                        factorial(b2m) * factorial(b3p) * factorial(b3m);

    // value = phase * sqrt(norm) * sum, evaluated as sign * sqrt(norm * sum^2)
    int sign = sum < 0 ? -1 : 1;
    const int phase_exp = (j1 - j2 - m3).as_int();
    if (phase_exp % 2 != 0) sign = -sign;
    return sign * sqrt_of(norm * sum * sum);
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M) {
    const double w = wigner3j(j1, j2, J, m1, m2, -M);
    if (w == 0.0) return 0.0;
    // (-1)^(j1 - j2 + M); integral whenever the 3-j above is nonzero
    const int e = (j1 - j2 + M).as_int();
    const double s = (e % 2 == 0) ? 1.0 : -1.0;
    return s * std::sqrt(static_cast<double>(J.twice() + 1)) * w;
}

// ------------------------------------------------------- dipole and branching

namespace {

void check_manifolds(HalfInt F_g, HalfInt F_e) {
    if (F_g.twice() < 0 || F_e.twice() < 0)
        throw std::domain_error("angular momentum must be non-negative");
    if ((F_g - F_e).twice() % 2 != 0)
        throw std::domain_error("Fg and Fe must differ by an integer");
    const int d = std::abs((F_e - F_g).twice());
    if (d > 2)
        throw std::domain_error("no dipole transition: |Fe - Fg| > 1");
    if (F_g.twice() == 0 && F_e.twice() == 0)
        throw std::domain_error("no dipole transition: Fg = Fe = 0");
}

}  // namespace

DipoleElement dipole_element(HalfInt F_g, HalfInt m_g, HalfInt F_e, HalfInt m_e) {
    check_manifolds(F_g, F_e);
    if ((F_g.twice() + m_g.twice()) % 2 != 0 || (F_e.twice() + m_e.twice()) % 2 != 0)
        throw std::domain_error("m does not match the parity of F");

    DipoleElement el;
    el.m_g = m_g;
    el.m_e = m_e;
    const HalfInt q = m_e - m_g;  // integral by the parity checks above
    if (std::abs(q.twice()) > 2 || std::abs(m_g.twice()) > F_g.twice() ||
        std::abs(m_e.twice()) > F_e.twice()) {
        el.q = 0;
        el.value = 0.0;  // out of range or |q| > 1: no such coupling
        return el;
    }
    el.q = q.as_int();
    el.value = clebsch_gordan(F_g, m_g, 1, q, F_e, m_e);
    return el;
}

std::vector<DecayBranch> decay_branching(HalfInt F_e, HalfInt m_e, HalfInt F_g) {
    check_manifolds(F_g, F_e);
    if ((F_e.twice() + m_e.twice()) % 2 != 0 || std::abs(m_e.twice()) > F_e.twice())
        throw std::domain_error("decay_branching: no such excited sublevel");

    std::vector<DecayBranch> out;
    double total = 0.0;
    for (int q = -1; q <= 1; ++q) {
        const HalfInt m_g = m_e - HalfInt(q);
        if (std::abs(m_g.twice()) > F_g.twice()) continue;
        const double c = clebsch_gordan(F_g, m_g, 1, q, F_e, m_e);
        if (c == 0.0) continue;
        out.push_back({m_g, q, c * c});
        total += c * c;
    }
    // Closed system: the |CG|^2 already sum to 1; renormalize to keep the
    // contract exact against rounding.
    for (auto& b : out) b.weight /= total;
    return out;
}

bool eia_candidate(HalfInt F_g, HalfInt F_e) {
    return F_g.twice() > 0 && (F_e - F_g).twice() == 2;
}

}  // namespace probespec
