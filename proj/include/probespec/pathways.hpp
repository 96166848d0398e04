#pragma once

#include <complex>
#include <string>
#include <vector>

#include "probespec/dressed.hpp"
#include "probespec/pumping.hpp"
#include "probespec/system.hpp"

namespace probespec {

// Multiphoton probe transitions are classified by photon number and by the
// nature of the endpoints: bare (uncoupled) sublevels or dressed-doublet
// members.  Initial states are always bare ground sublevels; one probe photon
// can only end on a doublet member, two probe photons end either on a bare
// excited sublevel or on a doublet member two rungs up the probe ladder.
enum class PathwayClass {
    OnePhotonBareDressed,
    TwoPhotonBareBare,
    TwoPhotonBareDressed,
};

std::string pathway_class_name(PathwayClass cls);

enum class Interference { Constructive, Destructive, Mixed, NotApplicable };

std::string interference_name(Interference v);

// One second-order route i -> intermediate -> f.  The denominator is the
// detuning of the intermediate state evaluated at the pathway's own
// two-photon resonance; when it (nearly) vanishes the perturbative expression
// is meaningless and the branch is flagged divergent instead of evaluated.
struct Branch {
    DressedStateRef intermediate;
    Complex amplitude{0.0, 0.0};  // numerator/denominator; 0 when divergent
    Complex numerator{0.0, 0.0};  // <f|V|mid><mid|V|i> at unit probe Rabi
    double denominator = 0.0;     // E_mid - E_i - delta_res (absolute units)
    bool divergent = false;
};

// All coherent routes between one populated initial state and one final
// state, evaluated at the resonance detuning where the pathway absorbs.
struct Pathway {
    PathwayClass cls = PathwayClass::OnePhotonBareDressed;
    SublevelRef initial;          // populated bare ground sublevel
    DressedStateRef final_state;  // doublet member or bare excited sublevel
    std::vector<Branch> branches; // empty for one-photon pathways
    Complex total_amplitude{0.0, 0.0};  // single element (1 photon) or the
                                        // coherent sum of finite branches
    double resonance_detuning = 0.0;    // units of gamma
    double initial_population = 0.0;
    bool has_divergent = false;

    int photons() const {
        return cls == PathwayClass::OnePhotonBareDressed ? 1 : 2;
    }
    std::string label() const { return initial.str() + " -> " + final_state.str(); }
};

// One entry of the predicted spectrum: pathways whose resonances fall within
// the merge tolerance of each other, reported together.
struct Peak {
    double delta = 0.0;   // units of gamma
    double weight = 0.0;  // sum of population * |total amplitude|^2
    PathwayClass cls = PathwayClass::OnePhotonBareDressed;  // dominant class
    std::vector<int> constituents;  // indices into the source pathway list
    Interference interference = Interference::NotApplicable;
};

struct PeakTable {
    std::vector<Peak> peaks;  // ascending delta, separated > merge_tolerance
    double merge_tolerance = 0.05;
};

// Position of a two-photon resonance written in terms of the doublet
// splittings: sign * Omega_m / 4, or exactly 0 for bare-to-bare transitions.
struct SymbolicOffset {
    HalfInt m;     // doublet label (|m|); meaningless when sign == 0
    int sign = 0;  // -1, 0, +1

    std::string str() const;
    friend bool operator==(const SymbolicOffset&, const SymbolicOffset&) = default;
};

struct BreakupPrediction {
    int two_photon_peak_count = 0;
    std::vector<SymbolicOffset> positions;  // distinct, ascending position
};

// Half-widths (HWHM) used when rendering a peak table as a curve, in units
// of gamma.  Doublet members carry half the bare excited-state width, hence
// the one-photon default; two-photon features are narrower still, and their
// true width is a property of the full dynamics, not of this sketch.
struct WidthPolicy {
    double one_photon_half_width = 0.5;
    double two_photon_half_width = 0.25;
};

struct SpectrumTrace {
    std::vector<double> delta;       // units of gamma
    std::vector<double> absorption;  // arbitrary units unless stated
};

// Enumerates every probe-allowed pathway with up to max_photons photons that
// starts from a bare ground sublevel holding more than population_threshold.
// Matrix elements smaller than amplitude_threshold are treated as zero.
// Results are sorted by (class, initial sublevel, final state) and carry the
// coherent branch sums evaluated at each pathway's own resonance.
// Throws std::invalid_argument for max_photons outside {1, 2} or a
// population vector of the wrong dimension.
std::vector<Pathway> enumerate_pathways(const TransitionSystem& sys,
                                        const DressedBasis& basis,
                                        const PopulationDistribution& pops,
                                        int max_photons = 2,
                                        double population_threshold = 1e-3,
                                        double amplitude_threshold = 1e-12);

// Second-order amplitude <f|V|mid><mid|V|i> / (E_mid - E_i - delta_res) for
// one route at unit probe Rabi, with delta_res the two-photon resonance of
// the (i, f) pair.  Throws std::invalid_argument when the labels are not a
// bare ground initial plus a doublet-member intermediate from this basis,
// and std::domain_error when the denominator is degenerate (divergent).
Complex branch_amplitude(const SublevelRef& initial,
                         const DressedStateRef& intermediate,
                         const DressedStateRef& final_state,
                         const TransitionSystem& sys, const DressedBasis& basis);

// Compares the coherent and incoherent sums of the competing amplitudes:
// Constructive when |sum|^2 exceeds sum of |.|^2 (relative margin 1e-9),
// Destructive when it falls short, Mixed in between, NotApplicable for
// fewer than two finite amplitudes.
Interference interference_verdict(const std::vector<Complex>& amplitudes);

// Groups pathways by resonance position (clusters separated by more than
// merge_tolerance, in units of gamma) into a sorted peak list.  Within a
// peak, distinct pathways add incoherently: weight = sum over constituents
// of initial_population * |total_amplitude|^2.
PeakTable peak_table(const std::vector<Pathway>& pathways,
                     double merge_tolerance = 0.05);

// Number and symbolic positions of the distinct two-photon resonances for
// the given manifolds and probe angle, obtained by running the enumeration
// at a reference coupling strength and clustering the resulting resonances.
BreakupPrediction predict_breakup(HalfInt F_g, HalfInt F_e, double theta);

// Renders the peak table as a sum of Lorentzians on the given ascending
// grid, one per peak, height proportional to weight, half-width by class.
SpectrumTrace synthesize_spectrum(const PeakTable& table,
                                  const WidthPolicy& widths,
                                  const std::vector<double>& grid);

}  // namespace probespec
