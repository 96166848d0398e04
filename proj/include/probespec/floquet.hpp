#pragma once

#include <string>
#include <vector>

#include "probespec/pathways.hpp"
#include "probespec/system.hpp"
#include "probespec/timedomain.hpp"

namespace probespec {

// Harmonic-balance steady state of the bichromatically driven master
// equation.  rho(t) = sum_k rho^{(k)} e^{-i k delta t} with k in [-K, K];
// the probe-driven optical coherence lives in the k = +1 harmonic.
struct FloquetSolution {
    int K = 0;
    double delta = 0.0;       // probe-coupling detuning, units of gamma
    double probe_rabi = 0.0;
    std::vector<Matrix> harmonics;  // index k + K
    double residual = 0.0;    // max-abs defect of the untouched equations

    const Matrix& harmonic(int k) const;
};

enum class Normalization {
    PerIntensity,  // absorbed photon rate / probe_rabi^2 (default)
    Raw            // plain absorbed photon rate
};

enum class SolveMethod { Floquet, TimeDomain };

// Solves the block-tridiagonal harmonic-balance system
//   (L0 + i k delta) rho^{(k)} + Lp rho^{(k-1)} + Lm rho^{(k+1)} = 0,
// with L0 the coupling+decay Liouvillian, Lp = -i(probe/2)[P, .],
// Lm = -i(probe/2)[P^dag, .], truncated at |k| > K, and the unit-trace row
// replacing one redundant k = 0 equation.  Throws std::invalid_argument for
// K < 1 or negative probe, std::runtime_error (with condition diagnostics)
// when a pivot block is numerically singular.
FloquetSolution floquet_solve(const TransitionSystem& sys, double probe_rabi,
                              double delta, int K);

// Probe absorption carried by a solution: raw = -probe * Im tr(P^dag rho^{(1)}),
// positive on an undriven two-level resonance; per-intensity divides by
// probe^2 (zero probe gives zero).
double absorption_at(const FloquetSolution& sol, const TransitionSystem& sys,
                     Normalization norm = Normalization::PerIntensity);

struct OracleOptions {
    int k_start = 4;          // initial truncation order
    int k_max = 64;           // doubling cap before a convergence error
    double k_tol = 1e-8;      // |change in absorption| accepted as converged
    int phase_points = 16;    // relative-phase average for the static case
    double degenerate_cut = 1e-9;  // |delta| below which the static path runs
    Normalization norm = Normalization::PerIntensity;
    TimeDomainOptions time_domain{};
};

struct OraclePoint {
    double absorption = 0.0;
    int K = 0;  // truncation that met the tolerance (0 for the static path)
};

// Absorption at one detuning with automatic truncation control: starts at
// k_start and doubles K until the absorption moves by less than k_tol.
// |delta| < degenerate_cut is dispatched to degenerate_absorption.  Throws
// std::runtime_error when the doubling cap is exceeded.
OraclePoint oracle_point(const TransitionSystem& sys, double probe_rabi,
                         double delta, const OracleOptions& opt = {});

double oracle_absorption(const TransitionSystem& sys, double probe_rabi,
                         double delta, const OracleOptions& opt = {});

// The probe-coupling-degenerate point solved as a genuine time-independent
// problem: for each relative phase the total static field's steady state is
// taken (the fixed point reached from the pumped state) and the absorbed
// power attributed to the probe; the result is averaged uniformly over
// phase_points relative phases.
double degenerate_absorption(const TransitionSystem& sys, double probe_rabi,
                             const OracleOptions& opt = {});

struct TraceMeta {
    std::string system;        // e.g. "Fg=2 -> Fe=1"
    double omega_c_rabi = 0.0;
    double probe_rabi = 0.0;
    double gamma = 1.0;
    double theta = 0.0;
    int max_K = 0;             // largest truncation used across the grid
    std::string method;        // "floquet" | "time-domain"
    std::string normalization; // "per-intensity" | "raw"
};

struct OracleSpectrum {
    SpectrumTrace trace;
    TraceMeta meta;
};

// Absorption over a strictly increasing detuning grid (serial reference
// implementation; see scan.hpp for the parallel kernel).  Throws
// std::invalid_argument for an empty or unsorted grid; solver errors are
// annotated with the failing delta.
OracleSpectrum oracle_spectrum(const TransitionSystem& sys, double probe_rabi,
                               const std::vector<double>& grid,
                               SolveMethod method = SolveMethod::Floquet,
                               const OracleOptions& opt = {});

}  // namespace probespec
