#include "probespec/system.hpp"

#include <cmath>
#include <stdexcept>

namespace probespec {

std::array<double, 3> polarization_components(double theta) {
    double s = std::sin(theta) / std::sqrt(2.0);
    double c = std::cos(theta);
    // snap rounding residue (cos(pi/2) ~ 6e-17) so that special angles give
    // exact zeros; a 1e-15 component is never physical here
    if (std::abs(s) < 1e-15) s = 0.0;
    if (std::abs(c) < 1e-15) c = 0.0;
    return {s, c, -s};  // (eps_minus, eps_0, eps_plus)
}

double TransitionSystem::coupling_coeff(HalfInt m) const {
    if (!has_ground(m) || !has_excited(m)) return 0.0;
    return dipole_element(F_g, m, F_e, m).value;
}

SublevelRef TransitionSystem::sublevel(int idx) const {
    if (idx < 0 || idx >= dim) throw std::out_of_range("sublevel index");
    if (idx < n_ground) return {false, -F_g + HalfInt(idx)};
    return {true, -F_e + HalfInt(idx - n_ground)};
}

TransitionSystem build_system(HalfInt F_g, HalfInt F_e, double omega_c_rabi,
                              double gamma, double coupling_phase,
                              ProbeGeometry probe, double external_loss_rate) {
    // dipole_element validates the manifold pair for us
    (void)dipole_element(F_g, -F_g, F_e, -F_e);
    if (gamma <= 0.0) throw std::domain_error("gamma must be positive");
    if (omega_c_rabi < 0.0) throw std::domain_error("coupling Rabi must be >= 0");
    if (external_loss_rate < 0.0) throw std::domain_error("loss rate must be >= 0");

    TransitionSystem sys;
    sys.F_g = F_g;
    sys.F_e = F_e;
    sys.omega_c_rabi = omega_c_rabi;
    sys.gamma = gamma;
    sys.coupling_phase = coupling_phase;
    sys.probe = probe;
    sys.external_loss_rate = external_loss_rate;
    sys.n_ground = F_g.twice() + 1;
    sys.n_excited = F_e.twice() + 1;
    sys.dim = sys.n_ground + sys.n_excited;

    sys.coupling_op = Matrix::Zero(sys.dim, sys.dim);
    sys.probe_op = Matrix::Zero(sys.dim, sys.dim);
    sys.decay_channels.assign(3, Matrix::Zero(sys.dim, sys.dim));

    const Complex cphase = std::polar(1.0, coupling_phase);
    const auto eps = polarization_components(probe.theta);

    for (int ig = 0; ig < sys.n_ground; ++ig) {
        const HalfInt m_g = -F_g + HalfInt(ig);
        for (int q = -1; q <= 1; ++q) {
            const HalfInt m_e = m_g + HalfInt(q);
            if (!sys.has_excited(m_e)) continue;
            const double cg = dipole_element(F_g, m_g, F_e, m_e).value;
            if (cg == 0.0) continue;
            const int ie = sys.excited_index(m_e);
            if (q == 0)
                sys.coupling_op(ie, ig) = 0.5 * omega_c_rabi * cphase * cg;
            sys.probe_op(ie, ig) += eps[q + 1] * cg;
        }
    }

    // decay: jump operators per emitted polarization, sqrt(gamma) * CG
    const double sg = std::sqrt(gamma);
    for (int ie = 0; ie < sys.n_excited; ++ie) {
        const HalfInt m_e = -F_e + HalfInt(ie);
        for (int q = -1; q <= 1; ++q) {
            const HalfInt m_g = m_e - HalfInt(q);
            if (!sys.has_ground(m_g)) continue;
            const double cg = dipole_element(F_g, m_g, F_e, m_e).value;
            if (cg == 0.0) continue;
            sys.decay_channels[q + 1](sys.ground_index(m_g),
                                      sys.excited_index(m_e)) = sg * cg;
        }
    }
    return sys;
}

}  // namespace probespec
