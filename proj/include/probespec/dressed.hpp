#pragma once

#include <string>
#include <vector>

#include "probespec/system.hpp"

namespace probespec {

// One resonantly dressed sublevel pair (|g m>, |e m>), split by the coupling
// into |m,+> and |m,-> at energies +-omega/2 around the manifold center:
//   |m,+> = (e^{-i phi}|g m> + |e m>)/sqrt(2)
//   |m,-> = (|g m> - e^{i phi}|e m>)/sqrt(2)
// phi is the phase of the coupling matrix element for this m.
struct DressedDoublet {
    HalfInt m;
    double omega = 0.0;  // splitting, = omega_c_rabi * |c_m|, exact algebra
    double phi = 0.0;
};

// Either one member of a doublet or an uncoupled bare sublevel.
struct DressedStateRef {
    bool is_doublet = false;
    HalfInt m;       // doublet label when is_doublet
    int sign = +1;   // +1 upper / -1 lower member
    SublevelRef bare;  // survivor identity when !is_doublet

    std::string str() const {
        if (is_doublet) return "|" + m.str() + (sign > 0 ? "+" : "-") + ">";
        return bare.str();
    }
    friend bool operator==(const DressedStateRef&, const DressedStateRef&) = default;
};

// Diagonalized coupling: doublets plus untouched survivors, with the unitary
// that maps dressed coordinates to bare ones (columns = dressed states).
struct DressedBasis {
    std::vector<DressedDoublet> doublets;   // ascending m
    std::vector<SublevelRef> survivors;     // bare states with no coupling
    std::vector<DressedStateRef> labels;    // column labels of `transform`
    Matrix transform;                       // unitary, bare <- dressed

    int index(const DressedStateRef& ref) const;
    const DressedDoublet& doublet(HalfInt m) const;
    bool has_doublet(HalfInt m) const;
};

// Block-diagonalizes the resonant coupling analytically, one 2x2 block per
// coupled m.  With omega_c_rabi == 0 every sublevel survives unchanged and
// the transform is the identity.
DressedBasis dress(const TransitionSystem& sys);

// Energy of a dressed-basis state relative to its manifold center:
// +-omega_m/2 for doublet members, 0 for survivors.
double dressed_energy(const DressedBasis& basis, const DressedStateRef& ref);

// The unit-Rabi probe raising operator expressed in the dressed basis:
// transform^dagger * probe_op * transform.  Element (a, b) is the amplitude
// for absorbing one probe photon while going from dressed state b to a (one
// manifold up).
Matrix probe_in_dressed_basis(const DressedBasis& basis, const TransitionSystem& sys);

}  // namespace probespec
