#include "probespec/floquet.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "probespec/liouville.hpp"
#include "probespec/pumping.hpp"

namespace probespec {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}
}  // namespace

const Matrix& FloquetSolution::harmonic(int k) const {
    if (k < -K || k > K)
        throw std::out_of_range("FloquetSolution::harmonic: |k| > K");
    return harmonics[static_cast<std::size_t>(k + K)];
}

FloquetSolution floquet_solve(const TransitionSystem& sys, double probe_rabi,
                              double delta, int K) {
    if (K < 1) throw std::invalid_argument("floquet_solve: K must be >= 1");
    if (probe_rabi < 0)
        throw std::invalid_argument("floquet_solve: negative probe Rabi");

    const int n = sys.dim;
    const int m = n * n;
    const int J = 2 * K + 1;
    const int mid = K;

    FloquetSolution sol;
    sol.K = K;
    sol.delta = delta;
    sol.probe_rabi = probe_rabi;
    sol.harmonics.assign(static_cast<std::size_t>(J), Matrix::Zero(n, n));

    if (probe_rabi == 0.0) {
        // No drive at the beat frequency: the k = 0 harmonic is the pumped
        // steady state and every other harmonic vanishes.
        sol.harmonics[static_cast<std::size_t>(mid)] = pump_steady_state(sys).rho;
        const Matrix L0 = build_liouvillian(sys, sys.coupling_hamiltonian());
        sol.residual =
            (L0 * vec(sol.harmonics[static_cast<std::size_t>(mid)]))
                .cwiseAbs()
                .maxCoeff();
        return sol;
    }

    const Matrix L0 = build_liouvillian(sys, sys.coupling_hamiltonian());
    // commutator_superop already carries the -i factor: Lp acts on the
    // harmonic below (absorbing a beat quantum), Lm on the one above.
    const Matrix Lp = 0.5 * probe_rabi * commutator_superop(sys.probe_op);
    const Matrix Lm =
        0.5 * probe_rabi * commutator_superop(sys.probe_op.adjoint().eval());
    const Matrix Im = Matrix::Identity(m, m);

    // Unit-trace row replacing the (0,0)-population equation of the k = 0
    // block; that row is redundant (the block's diagonal rows sum to zero).
    const int trace_row = 0;  // vec index of element (0, 0)
    Vector trace_vec = Vector::Zero(m);
    for (int i = 0; i < n; ++i) trace_vec(i * (n + 1)) = 1.0;

    auto diag_block = [&](int j) {
        const int k = j - K;
        Matrix D = L0 + Complex(0, k * delta) * Im;
        if (j == mid) D.row(trace_row) = trace_vec.transpose();
        return D;
    };
    auto sub_block = [&](int j) {  // multiplies x_{j-1}
        Matrix B = Lp;
        if (j == mid) B.row(trace_row).setZero();
        return B;
    };
    auto super_block = [&](int j) {  // multiplies x_{j+1}
        Matrix B = Lm;
        if (j == mid) B.row(trace_row).setZero();
        return B;
    };

    // Block-Thomas elimination. RHS is zero except the trace entry.
    std::vector<Eigen::PartialPivLU<Matrix>> lus;
    lus.reserve(static_cast<std::size_t>(J));
    std::vector<Vector> g(static_cast<std::size_t>(J), Vector::Zero(m));
    if (mid == 0) g[0](trace_row) = 1.0;

    Matrix C = diag_block(0);
    lus.emplace_back(C);
    for (int j = 1; j < J; ++j) {
        const Matrix X = lus.back().solve(super_block(j - 1));
        const Matrix Lj = sub_block(j);
        C = diag_block(j) - Lj * X;
        Vector b = Vector::Zero(m);
        if (j == mid) b(trace_row) = 1.0;
        g[static_cast<std::size_t>(j)] =
            b - Lj * lus.back().solve(g[static_cast<std::size_t>(j - 1)]);
        lus.emplace_back(C);
    }

    std::vector<Vector> x(static_cast<std::size_t>(J));
    x[static_cast<std::size_t>(J - 1)] =
        lus[static_cast<std::size_t>(J - 1)].solve(
            g[static_cast<std::size_t>(J - 1)]);
    for (int j = J - 2; j >= 0; --j) {
        x[static_cast<std::size_t>(j)] = lus[static_cast<std::size_t>(j)].solve(
            (g[static_cast<std::size_t>(j)] -
             super_block(j) * x[static_cast<std::size_t>(j + 1)])
                .eval());
    }

    for (int j = 0; j < J; ++j)
        sol.harmonics[static_cast<std::size_t>(j)] =
            unvec(x[static_cast<std::size_t>(j)], n);

    // Defect of the untouched equations (the replaced row's original
    // equation is implied by the others, so this covers the full system).
    double defect = 0.0;
    double scale = 1.0;
    for (int j = 0; j < J; ++j) {
        const int k = j - K;
        Vector r = L0 * x[static_cast<std::size_t>(j)] +
                   Complex(0, k * delta) * x[static_cast<std::size_t>(j)];
        if (j > 0) r += Lp * x[static_cast<std::size_t>(j - 1)];
        if (j < J - 1) r += Lm * x[static_cast<std::size_t>(j + 1)];
        if (j == mid) r(trace_row) = 0.0;
        defect = std::max(defect, r.cwiseAbs().maxCoeff());
        scale = std::max(scale, x[static_cast<std::size_t>(j)].cwiseAbs().maxCoeff());
    }
    const double trace_defect =
        std::abs(sol.harmonics[static_cast<std::size_t>(mid)].trace() -
                 Complex(1.0, 0.0));
    sol.residual = std::max(defect, trace_defect);

    if (!(sol.residual < 1e-8 * scale) || !std::isfinite(sol.residual)) {
        throw std::runtime_error(
            "floquet_solve: singular or ill-conditioned harmonic-balance "
            "system at delta=" + fmt(delta) + " (residual " +
            fmt(sol.residual) + ", solution scale " + fmt(scale) +
            ", middle-block rcond " +
            fmt(lus[static_cast<std::size_t>(mid)].rcond()) + ")");
    }
    return sol;
}

double absorption_at(const FloquetSolution& sol, const TransitionSystem& sys,
                     Normalization norm) {
    const double raw =
        -sol.probe_rabi *
        (sys.probe_op.adjoint() * sol.harmonic(1)).trace().imag();
    if (norm == Normalization::Raw) return raw;
    return sol.probe_rabi > 0 ? raw / (sol.probe_rabi * sol.probe_rabi) : 0.0;
}

double degenerate_absorption(const TransitionSystem& sys, double probe_rabi,
                             const OracleOptions& opt) {
    if (probe_rabi < 0)
        throw std::invalid_argument("degenerate_absorption: negative probe");
    if (probe_rabi == 0.0) return 0.0;
    if (opt.phase_points < 1)
        throw std::invalid_argument("degenerate_absorption: phase_points < 1");

    const Matrix pumped = pump_steady_state(sys).rho;
    const Matrix coupling = sys.coupling_hamiltonian();
    double sum = 0.0;
    for (int i = 0; i < opt.phase_points; ++i) {
        const double phi = 2.0 * kPi * i / opt.phase_points;
        const Complex ph = std::exp(Complex(0, -phi));
        const Matrix Hp = 0.5 * probe_rabi *
                          (ph * sys.probe_op + std::conj(ph) * sys.probe_op.adjoint());
        const Matrix rho = steady_state_from(sys, coupling + Hp, pumped);
        // Static limit of the beat-resolved absorbed power.
        sum += -probe_rabi *
               (std::exp(Complex(0, phi)) *
                (sys.probe_op.adjoint() * rho).trace())
                   .imag();
    }
    const double raw = sum / opt.phase_points;
    if (opt.norm == Normalization::Raw) return raw;
    return raw / (probe_rabi * probe_rabi);
}

OraclePoint oracle_point(const TransitionSystem& sys, double probe_rabi,
                         double delta, const OracleOptions& opt) {
    if (std::abs(delta) < opt.degenerate_cut)
        return {degenerate_absorption(sys, probe_rabi, opt), 0};
    if (probe_rabi == 0.0) return {0.0, opt.k_start};

    int K = opt.k_start;
    double prev = absorption_at(floquet_solve(sys, probe_rabi, delta, K), sys,
                                opt.norm);
    while (2 * K <= opt.k_max) {
        K *= 2;
        const double next =
            absorption_at(floquet_solve(sys, probe_rabi, delta, K), sys, opt.norm);
        if (std::abs(next - prev) < opt.k_tol) return {next, K};
        prev = next;
    }
    throw std::runtime_error(
        "oracle_point: truncation doubling did not converge at delta=" +
        fmt(delta) + " (last K=" + std::to_string(K) + ", change still > " +
        fmt(opt.k_tol) + ")");
}

double oracle_absorption(const TransitionSystem& sys, double probe_rabi,
                         double delta, const OracleOptions& opt) {
    return oracle_point(sys, probe_rabi, delta, opt).absorption;
}

OracleSpectrum oracle_spectrum(const TransitionSystem& sys, double probe_rabi,
                               const std::vector<double>& grid,
                               SolveMethod method, const OracleOptions& opt) {
    if (grid.empty())
        throw std::invalid_argument("oracle_spectrum: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument(
                "oracle_spectrum: grid must be strictly increasing");

    OracleSpectrum out;
    out.trace.delta = grid;
    out.trace.absorption.assign(grid.size(), 0.0);
    out.meta.system = "Fg=" + sys.F_g.str() + " -> Fe=" + sys.F_e.str();
    out.meta.omega_c_rabi = sys.omega_c_rabi;
    out.meta.probe_rabi = probe_rabi;
    out.meta.gamma = sys.gamma;
    out.meta.theta = sys.probe.theta;
    out.meta.method = method == SolveMethod::Floquet ? "floquet" : "time-domain";
    out.meta.normalization =
        opt.norm == Normalization::PerIntensity ? "per-intensity" : "raw";

    Matrix pumped;
    if (method == SolveMethod::TimeDomain) pumped = pump_steady_state(sys).rho;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            if (method == SolveMethod::Floquet) {
                const auto pt = oracle_point(sys, probe_rabi, grid[i], opt);
                out.trace.absorption[i] = pt.absorption;
                out.meta.max_K = std::max(out.meta.max_K, pt.K);
            } else {
                const auto r = time_domain_solve(sys, probe_rabi, grid[i],
                                                 pumped, opt.time_domain);
                out.trace.absorption[i] = opt.norm == Normalization::Raw
                                              ? r.raw_absorption
                                              : r.absorption;
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("oracle_spectrum: delta=" + fmt(grid[i]) +
                                     ": " + e.what());
        }
    }
    return out;
}

}  // namespace probespec
