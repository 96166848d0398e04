#pragma once

#include <vector>

#include "probespec/halfint.hpp"

namespace probespec {

// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3).
//
// Evaluated through the Racah single-sum formula with exact big-integer
// rational arithmetic internally; the only rounding happens in the final
// square root / division, so results are accurate to ~1 ulp for all j
// this project ever uses (j <= 6 is what the test suite pins down).
// Selection-rule violations return exactly 0.
double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt m1, HalfInt m2, HalfInt m3);

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
// phase convention.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M);

// One spherical component of the dipole coupling between a ground sublevel
// |Fg mg> and an excited sublevel |Fe me>.  q = me - mg is the photon's
// spherical polarization index.
struct DipoleElement {
    HalfInt m_g;
    HalfInt m_e;
    int q = 0;           // -1, 0, +1
    double value = 0.0;  // <Fg mg; 1 q | Fe me>, reduced matrix element == 1
};

// Returns the (possibly zero) dipole element for the given sublevel pair.
// |me - mg| > 1 yields a zero element, as does any selection-rule violation
// (notably q=0 between m=0 sublevels when Fe == Fg).
// Throws std::domain_error when |Fe - Fg| > 1 or the manifolds are invalid
// (e.g. Fg == Fe == 0), since no dipole transition exists at all.
DipoleElement dipole_element(HalfInt F_g, HalfInt m_g, HalfInt F_e, HalfInt m_e);

// Spontaneous-decay branching from one excited sublevel into the ground
// manifold.  Weights are |CG|^2, normalized to sum to exactly 1 (closed
// system: every decay lands in the ground manifold).
struct DecayBranch {
    HalfInt m_g;
    int q = 0;
    double weight = 0.0;
};

std::vector<DecayBranch> decay_branching(HalfInt F_e, HalfInt m_e, HalfInt F_g);

// True when the level pair supports the enhanced-absorption sign of the
// probe response in the degenerate two-level configuration: closed system,
// Fe = Fg + 1, and a degenerate ground manifold (Fg > 0).
bool eia_candidate(HalfInt F_g, HalfInt F_e);

}  // namespace probespec
