#pragma once

#include <vector>

#include "probespec/system.hpp"

namespace probespec {

struct PopulationDistribution {
    Eigen::VectorXd populations;       // bare-basis sublevel populations
    std::vector<SublevelRef> trapped;  // dark sublevels holding > threshold
    Matrix rho;                        // the full steady-state density matrix
};

// Ground sublevels the coupling cannot touch: zero pi matrix element (or the
// field switched off entirely).  Population that reaches them stays there.
std::vector<SublevelRef> dark_states(const TransitionSystem& sys);

// Steady state of the coupling-only master equation (probe off), computed
// from the null space of the Liouvillian (dense SVD, singular values below
// 1e-10 of the largest counted as zero).  A degenerate null space (dark
// manifolds) is resolved by matching every conserved quantity to its value
// in the unpolarized initial state, i.e. the uniform mixture over ground
// sublevels -- the long-time limit of the actual pumping process.
// Throws std::runtime_error when no steady state exists (e.g. external loss
// has emptied the system) or the projection is singular.
PopulationDistribution pump_steady_state(const TransitionSystem& sys,
                                         double threshold = 1e-3);

}  // namespace probespec
