#include "probespec/dressed.hpp"

#include <cmath>
#include <stdexcept>

namespace probespec {

int DressedBasis::index(const DressedStateRef& ref) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == ref) return static_cast<int>(i);
    throw std::out_of_range("dressed state not in basis: " + ref.str());
}

const DressedDoublet& DressedBasis::doublet(HalfInt m) const {
    for (const auto& d : doublets)
        if (d.m == m) return d;
    throw std::out_of_range("no dressed doublet at m = " + m.str());
}

bool DressedBasis::has_doublet(HalfInt m) const {
    for (const auto& d : doublets)
        if (d.m == m) return true;
    return false;
}

DressedBasis dress(const TransitionSystem& sys) {
    DressedBasis basis;
    basis.transform = Matrix::Zero(sys.dim, sys.dim);

    std::vector<bool> used(sys.dim, false);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // doublets in ascending m over sublevels present in both manifolds
    const HalfInt m_lo = sys.F_g < sys.F_e ? -sys.F_g : -sys.F_e;
    const HalfInt m_hi = sys.F_g < sys.F_e ? sys.F_g : sys.F_e;
    for (HalfInt m = m_lo; m <= m_hi; m += HalfInt(1)) {
        const int ig = sys.ground_index(m), ie = sys.excited_index(m);
        const Complex g = sys.coupling_op(ie, ig);
        if (std::abs(g) == 0.0) continue;  // uncoupled (c_m = 0 or field off)

        DressedDoublet d;
        d.m = m;
        // splitting from exact algebra, not from the numerical eigenproblem
        d.omega = sys.omega_c_rabi * std::abs(sys.coupling_coeff(m));
        d.phi = std::arg(g);
        basis.doublets.push_back(d);
        used[ig] = used[ie] = true;

        const Complex em = std::polar(inv_sqrt2, -d.phi);  // e^{-i phi}/sqrt(2)
        const Complex ep = std::polar(inv_sqrt2, d.phi);

        DressedStateRef plus{true, m, +1, {}};
        const int cp = static_cast<int>(basis.labels.size());
        basis.labels.push_back(plus);
        basis.transform(ig, cp) = em;
        basis.transform(ie, cp) = inv_sqrt2;

        DressedStateRef minus{true, m, -1, {}};
        const int cm = static_cast<int>(basis.labels.size());
        basis.labels.push_back(minus);
        basis.transform(ig, cm) = inv_sqrt2;
        basis.transform(ie, cm) = -ep;
    }

    // everything untouched passes through unchanged
    for (int i = 0; i < sys.dim; ++i) {
        if (used[i]) continue;
        const SublevelRef s = sys.sublevel(i);
        basis.survivors.push_back(s);
        DressedStateRef ref{false, {}, +1, s};
        const int c = static_cast<int>(basis.labels.size());
        basis.labels.push_back(ref);
        basis.transform(i, c) = 1.0;
    }
    return basis;
}

double dressed_energy(const DressedBasis& basis, const DressedStateRef& ref) {
    if (!ref.is_doublet) return 0.0;
    return 0.5 * ref.sign * basis.doublet(ref.m).omega;
}

Matrix probe_in_dressed_basis(const DressedBasis& basis, const TransitionSystem& sys) {
    return basis.transform.adjoint() * sys.probe_op * basis.transform;
}

}  // namespace probespec
