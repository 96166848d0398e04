#include "probespec/scan.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "probespec/pumping.hpp"

namespace probespec {

namespace {

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

OracleSpectrum parallel_spectrum(const TransitionSystem& sys, double probe_rabi,
                                 const std::vector<double>& grid,
                                 SolveMethod method, const OracleOptions& opt,
                                 int num_threads) {
    if (grid.empty())
        throw std::invalid_argument("parallel_spectrum: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument(
                "parallel_spectrum: grid must be strictly increasing");
    if (probe_rabi < 0)
        throw std::invalid_argument("parallel_spectrum: negative probe Rabi");
    if (num_threads < 0)
        throw std::invalid_argument("parallel_spectrum: negative thread count");

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

    const long n = static_cast<long>(grid.size());
    std::vector<int> ks(grid.size(), 0);
    std::vector<std::exception_ptr> errors(grid.size());
    const int threads = num_threads > 0 ? num_threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            if (method == SolveMethod::Floquet) {
                const auto pt = oracle_point(sys, probe_rabi, grid[u], opt);
                out.trace.absorption[u] = pt.absorption;
                ks[u] = pt.K;
            } else {
                const auto r = time_domain_solve(sys, probe_rabi, grid[u],
                                                 pumped, opt.time_domain);
                out.trace.absorption[u] = opt.norm == Normalization::Raw
                                              ? r.raw_absorption
                                              : r.absorption;
            }
        } catch (...) {
            errors[u] = std::current_exception();
        }
    }

    // Reduce in grid order: the lowest failing delta reports, deterministically.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!errors[i]) {
            out.meta.max_K = std::max(out.meta.max_K, ks[i]);
            continue;
        }
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("parallel_spectrum: delta=" +
                                     fmt(grid[i]) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace probespec
