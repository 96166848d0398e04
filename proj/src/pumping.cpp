#include "probespec/pumping.hpp"

#include "probespec/liouville.hpp"

namespace probespec {

std::vector<SublevelRef> dark_states(const TransitionSystem& sys) {
    std::vector<SublevelRef> dark;
    for (int i = 0; i < sys.n_ground; ++i) {
        if (sys.coupling_op.col(i).cwiseAbs().maxCoeff() == 0.0)
            dark.push_back(sys.sublevel(i));
    }
    return dark;
}

PopulationDistribution pump_steady_state(const TransitionSystem& sys,
                                         double threshold) {
    const int n = sys.dim;
    Matrix rho0 = Matrix::Zero(n, n);
    for (int i = 0; i < sys.n_ground; ++i) rho0(i, i) = 1.0 / sys.n_ground;

    PopulationDistribution out;
    out.rho = steady_state_from(sys, sys.coupling_hamiltonian(), rho0);
    out.populations = out.rho.diagonal().real();
    for (const auto& s : dark_states(sys))
        if (out.populations[sys.index(s)] > threshold) out.trapped.push_back(s);
    return out;
}

}  // namespace probespec
