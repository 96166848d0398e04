#pragma once

#include <string>
#include <vector>

#include "probespec/config.hpp"
#include "probespec/floquet.hpp"
#include "probespec/pathways.hpp"
#include "probespec/peaks.hpp"

namespace probespec {

// One predicted two-photon resonance paired with the measured maximum that
// accounts for it.
struct PeakMatch {
    double predicted = 0.0;  // predicted position, units of gamma
    double oracle = 0.0;     // matched maximum of the computed spectrum
    double distance = 0.0;   // |predicted - oracle|
};

// Outcome of holding the pathway predictions against the nonperturbative
// spectrum.  The verdict is concordant when (a) every two-photon resonance
// predicted with nonzero weight is matched by a spectral maximum within the
// tolerance and (b) every maximum inside the central region sits within the
// tolerance of some predicted position.  Predictions with zero weight assert
// the absence of a peak and are listed separately.
struct CompareReport {
    PeakTable predicted;                        // full prediction table
    std::vector<FoundPeak> oracle_peaks;        // prominent maxima of the trace
    std::vector<PeakMatch> matches;             // weighted two-photon matches
    std::vector<double> unmatched_predictions;  // weighted two-photon, no peak
    std::vector<double> absence_predictions;    // zero-weight two-photon
    std::vector<double> unmatched_oracle;       // central maxima never predicted
    double tolerance = 0.0;
    double central_radius = 0.0;
    bool concordant = false;
};

// Position tolerance for declaring a predicted resonance and a spectral
// maximum the same feature: max(0.1 * gamma, 0.05 * omega_c_rabi).  Scales
// with the coupling because strong driving shifts and broadens everything.
double match_tolerance(const TransitionSystem& sys);

// Radius of the central region, where two-photon features live and where
// unexplained maxima count against the predictions:
// max(0.25 * gamma, largest |two-photon resonance| + tolerance).
// The reach comes from the raw pathway resonances, not the merged peak
// table, so a two-photon line that happens to coincide with a one-photon
// line still extends the region out to its position.
double central_region_radius(const TransitionSystem& sys,
                             const std::vector<Pathway>& pathways);

// Matches predictions against the maxima of a computed spectrum (prominence
// floor: 1% of the largest absorption on the trace) using greedy
// nearest-first pairing, then applies the concordance rule above.
CompareReport compare_predictions(const TransitionSystem& sys,
                                  const std::vector<Pathway>& pathways,
                                  const PeakTable& predicted,
                                  const OracleSpectrum& spectrum);

// Each runner writes its report bundle into cfg.output_dir (created on
// demand; an unset output_dir is a ConfigError) and throws on solver
// failures.  File contents are deterministic: rerunning a config reproduces
// the bytes.
//
// analyze   pathway enumeration only (no master-equation solve):
//           pathways.json, peaks.csv (delta,weight,class),
//           spectrum.csv (perturbative Lorentzian sketch), report.json
// spectrum  nonperturbative scan: spectrum.csv (delta,absorption),
//           spectrum.meta.json, peaks.csv (delta,height,prominence)
// compare   both of the above plus the matching verdict in report.json;
//           the returned report carries the verdict for the exit code
// sweep     one spectrum file per coupling strength plus sweep.csv
//           (omega_c,central_peak_count,dip_depth,splitting) and
//           report.json with the smallest coupling that splits the
//           central region into more than one maximum
void run_analyze(const RunConfig& cfg);
void run_spectrum(const RunConfig& cfg,
                  SolveMethod method = SolveMethod::Floquet);
CompareReport run_compare(const RunConfig& cfg,
                          SolveMethod method = SolveMethod::Floquet);
void run_sweep(const RunConfig& cfg,
               SolveMethod method = SolveMethod::Floquet);

}  // namespace probespec
