#pragma once

#include "probespec/system.hpp"

namespace probespec {

// Column-major vectorization: vec(rho) stacks columns; for matrices A, X, B
// vec(A X B) = (B^T kron A) vec(X).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int n);

// -i[H, .] as a superoperator on vec(rho).
Matrix commutator_superop(const Matrix& H);

// D[J](.) = J . J^dag - 1/2 {J^dag J, .}
Matrix dissipator_superop(const Matrix& J);

// Full generator for the given Hamiltonian: coherent part, all spontaneous
// decay channels, and (if configured) the external loss term
// -loss/2 {P_exc, rho} which removes population without refeeding it.
Matrix build_liouvillian(const TransitionSystem& sys, const Matrix& H);

// Effective non-Hermitian drift K = -iH - 1/2 sum J^dag J - loss/2 P_exc,
// so that  rho' = K rho + rho K^dag + sum_q J_q rho J_q^dag.
// This is the matrix-form right-hand side used by the integrators.
Matrix effective_drift(const TransitionSystem& sys, const Matrix& H);

// Applies the generator in matrix form (cheaper than the dim^2 superoperator
// for repeated use): rho' = K rho + rho K^dag + sum_q J_q rho J_q^dag.
Matrix apply_generator(const Matrix& K, const std::vector<Matrix>& jumps,
                       const Matrix& rho);

// The fixed point the relaxation reaches from rho0 under the static
// Hamiltonian H: null space of the Liouvillian (dense SVD, singular values
// below 1e-10 of the largest counted as zero), with a degenerate null space
// resolved by matching every conserved functional to its value in rho0.
// Throws std::runtime_error when no steady state exists or the projection
// is singular.
Matrix steady_state_from(const TransitionSystem& sys, const Matrix& H,
                         const Matrix& rho0);

}  // namespace probespec
