#pragma once

#include <vector>

#include "probespec/floquet.hpp"

namespace probespec {

// OpenMP-parallel grid scan.  Grid points are independent, each is computed
// by exactly the same code path as oracle_spectrum, and results are written
// by index, so the output is byte-identical to the serial scan regardless of
// thread count or scheduling.  num_threads = 0 uses the OpenMP default; the
// serial reference oracle_spectrum stays available for testing.
//
// Errors behave as in oracle_spectrum: invalid_argument for bad inputs, and
// solver failures annotated with the failing delta (when several points fail
// concurrently, the lowest delta wins deterministically).
OracleSpectrum parallel_spectrum(const TransitionSystem& sys, double probe_rabi,
                                 const std::vector<double>& grid,
                                 SolveMethod method = SolveMethod::Floquet,
                                 const OracleOptions& opt = OracleOptions{},
                                 int num_threads = 0);

}  // namespace probespec
