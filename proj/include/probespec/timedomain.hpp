#pragma once

#include "probespec/system.hpp"

namespace probespec {

struct TimeDomainOptions {
    double rtol = 1e-10;       // adaptive step relative tolerance
    double atol = 1e-12;
    double transient = 50.0;   // discarded lead-in after the probe turns on, 1/gamma
    double min_average = 20.0; // floor for the averaging window, 1/gamma
    double max_step = 0.5;
};

// Integrates the master equation with the coupling static and the probe term
// (probe_rabi/2)(P e^{-i delta t} + h.c.) from t0 to t1, returning rho(t1).
// probe_rabi == 0 gives plain relaxation under the coupling alone.
Matrix evolve(const TransitionSystem& sys, Matrix rho, double t0, double t1,
              double probe_rabi = 0.0, double delta = 0.0,
              const TimeDomainOptions& opt = {});

struct TimeDomainResult {
    double absorption = 0.0;      // photon absorption rate / probe intensity
    double raw_absorption = 0.0;  // plain photon absorption rate
    Matrix rho_final;
    double window = 0.0;          // length of the averaging window actually used
};

// Probe response by direct integration: starts from rho_start (normally the
// pumped steady state), discards a transient, then averages the absorbed
// power over an integer number of beat periods 2 pi / |delta| (or over the
// plain window when delta == 0).  The instantaneous absorbed-photon rate is
//   R(t) = -probe_rabi * Im[ e^{i delta t} tr(P^dag rho(t)) ],
// whose beat average converges to the harmonic-balance value.
TimeDomainResult time_domain_solve(const TransitionSystem& sys, double probe_rabi,
                                   double delta, const Matrix& rho_start,
                                   const TimeDomainOptions& opt = {});

}  // namespace probespec
