#include "probespec/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "probespec/liouville.hpp"

namespace probespec {

namespace {

// State layout: dim*dim entries of rho (column major) plus one trailing slot
// accumulating the absorbed-photon count.
struct Rhs {
    const TransitionSystem& sys;
    Matrix K0;  // drift without the probe
    double probe_rabi, delta;
    int n;

    Rhs(const TransitionSystem& s, double pr, double d)
        : sys(s),
          K0(effective_drift(s, s.coupling_hamiltonian())),
          probe_rabi(pr),
          delta(d),
          n(s.dim) {}

    void operator()(double t, const Vector& y, Vector& dy) const {
        const Eigen::Map<const Matrix> rho(y.data(), n, n);
        Matrix K = K0;
        Complex pol = 0.0;
        if (probe_rabi != 0.0) {
            const Complex beat = std::polar(1.0, -delta * t);
            K += Complex(0, -0.5 * probe_rabi) *
                 (beat * sys.probe_op + std::conj(beat) * sys.probe_op.adjoint());
            pol = (sys.probe_op.adjoint() * rho).trace() / beat;  // e^{+i d t} tr(P^dag rho)
        }
        Matrix drho = K * rho + rho * K.adjoint();
        for (const auto& J : sys.decay_channels)
            drho.noalias() += J * rho * J.adjoint();
        dy.head(n * n) = Eigen::Map<const Vector>(drho.data(), n * n);
        dy[n * n] = -probe_rabi * pol.imag();  // absorbed-photon rate
    }
};

// Dormand-Prince 5(4) with a standard PI-free step controller.
void dopri5(const Rhs& f, double t0, double t1, Vector& y,
            const TimeDomainOptions& opt) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                        e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                        e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    if (t1 <= t0) return;
    const auto m = y.size();
    Vector k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), ytmp(m), ynew(m);

    double t = t0;
    double h = std::min(opt.max_step, (t1 - t0) / 10);
    f(t, y, k1);
    int rejects_in_a_row = 0;

    while (t < t1) {
        h = std::min(h, t1 - t);
        ytmp = y + h * a21 * k1;
        f(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);

        // embedded 4th-order error estimate
        double err2 = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale =
                opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err2 += std::norm(e / scale);
        }
        const double err = std::sqrt(err2 / static_cast<double>(m));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            rejects_in_a_row = 0;
        } else if (++rejects_in_a_row > 60) {
            throw std::runtime_error("time-domain integrator: step size collapsed");
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h = std::min(fac * h, opt.max_step);
        if (!(h > 1e-14)) throw std::runtime_error("time-domain integrator: zero step");
    }
}

}  // namespace

Matrix evolve(const TransitionSystem& sys, Matrix rho, double t0, double t1,
              double probe_rabi, double delta, const TimeDomainOptions& opt) {
    const int n = sys.dim;
    Rhs f(sys, probe_rabi, delta);
    Vector y(n * n + 1);
    y.head(n * n) = vec(rho);
    y[n * n] = 0.0;
    dopri5(f, t0, t1, y, opt);
    return unvec(y.head(n * n), n);
}

TimeDomainResult time_domain_solve(const TransitionSystem& sys, double probe_rabi,
                                   double delta, const Matrix& rho_start,
                                   const TimeDomainOptions& opt) {
    const int n = sys.dim;
    if (probe_rabi < 0) throw std::domain_error("probe_rabi must be >= 0");

    TimeDomainOptions o = opt;
    if (delta != 0.0)
        o.max_step = std::min(o.max_step, 2.0 * M_PI / std::abs(delta) / 8.0);

    Rhs f(sys, probe_rabi, delta);
    Vector y(n * n + 1);
    y.head(n * n) = vec(rho_start);
    y[n * n] = 0.0;

    // transient, then an integer number of beat periods for the average
    dopri5(f, 0.0, o.transient, y, o);
    const double acc0 = y[n * n].real();
    double window = o.min_average / sys.gamma;
    if (delta != 0.0) {
        const double period = 2.0 * M_PI / std::abs(delta);
        window = period * std::max(1.0, std::ceil(window / period));
    }
    dopri5(f, o.transient, o.transient + window, y, o);

    TimeDomainResult out;
    out.window = window;
    out.raw_absorption = (y[n * n].real() - acc0) / window;
    out.absorption = probe_rabi > 0 ? out.raw_absorption / (probe_rabi * probe_rabi)
                                    : 0.0;
    out.rho_final = unvec(y.head(n * n), n);
    return out;
}

}  // namespace probespec
