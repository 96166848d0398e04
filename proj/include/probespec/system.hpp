#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "probespec/angular.hpp"
#include "probespec/halfint.hpp"

namespace probespec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Spherical components (eps_minus, eps_0, eps_plus) of a linear probe
// polarization tilted by theta (radians) from the coupling axis z:
//   eps_0 = cos(theta),  eps_{+-} = -+ sin(theta)/sqrt(2)
std::array<double, 3> polarization_components(double theta);

struct ProbeGeometry {
    double theta = 1.5707963267948966;  // pi/2: probe perpendicular to coupling
};

// One Zeeman sublevel of either manifold.
struct SublevelRef {
    bool excited = false;
    HalfInt m;

    friend bool operator==(const SublevelRef&, const SublevelRef&) = default;
    std::string str() const {  // |m> for ground, |m'> for excited
        return "|" + m.str() + (excited ? "'" : "") + ">";
    }
};

// A degenerate two-level system (ground manifold Fg, excited manifold Fe)
// driven on resonance by a pi-polarized coupling field, probed by a weak
// linear field at angle theta.  All frequencies are in units of gamma unless
// gamma is set to something other than 1.  Built once by build_system and
// treated as immutable afterwards.
struct TransitionSystem {
    HalfInt F_g, F_e;
    double omega_c_rabi = 0.0;   // coupling Rabi frequency (via unit CG)
    double gamma = 1.0;          // excited-state decay rate
    double coupling_phase = 0.0; // optical phase of the coupling field
    ProbeGeometry probe;
    double external_loss_rate = 0.0;  // extra non-radiative loss, default 0

    int n_ground = 0, n_excited = 0, dim = 0;

    // Raising part of the coupling interaction: entries
    //   <e m| coupling_op |g m> = (omega_c_rabi/2) e^{i phase} <Fg m;1 0|Fe m>.
    // The full Hamiltonian term is coupling_op + coupling_op^dagger.
    Matrix coupling_op;

    // Unit-probe-Rabi raising operator sum_q eps_q D_q where
    //   <e m+q| D_q |g m> = <Fg m;1 q|Fe m+q>.
    // The probe Hamiltonian is (probe_rabi/2)(probe_op e^{-i delta t} + h.c.).
    Matrix probe_op;

    // Jump operators, one per spherical polarization q = -1, 0, +1, with
    // entries sqrt(gamma) * CG taking excited sublevels down to ground ones.
    std::vector<Matrix> decay_channels;

    // pi coupling coefficient <Fg m;1 0|Fe m> (0 when either sublevel is
    // missing); the per-sublevel Rabi frequency is omega_c_rabi * |c_m|.
    double coupling_coeff(HalfInt m) const;

    int ground_index(HalfInt m) const { return (m - (-F_g)).twice() / 2; }
    int excited_index(HalfInt m) const { return n_ground + (m - (-F_e)).twice() / 2; }
    int index(const SublevelRef& s) const {
        return s.excited ? excited_index(s.m) : ground_index(s.m);
    }
    SublevelRef sublevel(int idx) const;
    bool has_ground(HalfInt m) const { return std::abs(m.twice()) <= F_g.twice(); }
    bool has_excited(HalfInt m) const { return std::abs(m.twice()) <= F_e.twice(); }

    // Hermitian coupling Hamiltonian (rotating frame, resonant coupling).
    Matrix coupling_hamiltonian() const { return coupling_op + coupling_op.adjoint(); }
};

// Assembles the operators for the given configuration.
// Throws std::domain_error for level pairs with no dipole transition,
// non-positive gamma, negative Rabi frequency, or negative loss.
TransitionSystem build_system(HalfInt F_g, HalfInt F_e, double omega_c_rabi,
                              double gamma = 1.0, double coupling_phase = 0.0,
                              ProbeGeometry probe = {},
                              double external_loss_rate = 0.0);

}  // namespace probespec
