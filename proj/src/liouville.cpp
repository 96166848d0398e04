#include "probespec/liouville.hpp"

#include <Eigen/SVD>

#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace probespec {

Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int n) {
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix commutator_superop(const Matrix& H) {
    const int n = static_cast<int>(H.rows());
    const Matrix I = Matrix::Identity(n, n);
    return Complex(0, -1) *
           (Eigen::kroneckerProduct(I, H) - Eigen::kroneckerProduct(H.transpose(), I));
}

Matrix dissipator_superop(const Matrix& J) {
    const int n = static_cast<int>(J.rows());
    const Matrix I = Matrix::Identity(n, n);
    const Matrix JdJ = J.adjoint() * J;
    return Eigen::kroneckerProduct(J.conjugate(), J).eval() -
           0.5 * (Eigen::kroneckerProduct(I, JdJ) +
                  Eigen::kroneckerProduct(JdJ.transpose(), I));
}

namespace {

Matrix excited_projector(const TransitionSystem& sys) {
    Matrix P = Matrix::Zero(sys.dim, sys.dim);
    for (int i = sys.n_ground; i < sys.dim; ++i) P(i, i) = 1.0;
    return P;
}

}  // namespace

Matrix build_liouvillian(const TransitionSystem& sys, const Matrix& H) {
    Matrix L = commutator_superop(H);
    for (const auto& J : sys.decay_channels) L += dissipator_superop(J);
    if (sys.external_loss_rate > 0.0) {
        const int n = sys.dim;
        const Matrix I = Matrix::Identity(n, n);
        const Matrix P = excited_projector(sys);
        L -= 0.5 * sys.external_loss_rate *
             (Eigen::kroneckerProduct(I, P).eval() +
              Eigen::kroneckerProduct(P.transpose(), I).eval());
    }
    return L;
}

Matrix effective_drift(const TransitionSystem& sys, const Matrix& H) {
    Matrix K = Complex(0, -1) * H;
    for (const auto& J : sys.decay_channels) K -= 0.5 * (J.adjoint() * J);
    if (sys.external_loss_rate > 0.0)
        K -= 0.5 * sys.external_loss_rate * excited_projector(sys);
    return K;
}

Matrix apply_generator(const Matrix& K, const std::vector<Matrix>& jumps,
                       const Matrix& rho) {
    Matrix out = K * rho + rho * K.adjoint();
    for (const auto& J : jumps) out.noalias() += J * rho * J.adjoint();
    return out;
}

Matrix steady_state_from(const TransitionSystem& sys, const Matrix& H,
                         const Matrix& rho0) {
    const int n = sys.dim;
    const Matrix L = build_liouvillian(sys, H);

    Eigen::BDCSVD<Matrix> svd(L, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cut = 1e-10 * sv(0);
    int null_dim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= cut) ++null_dim;
    if (null_dim == 0)
        throw std::runtime_error(
            "steady_state_from: no steady state (smallest singular value " +
            std::to_string(sv(sv.size() - 1)) + ")");

    // right null vectors span the steady manifold; left null vectors are the
    // conserved functionals that pick the member actually reached from rho0
    const Matrix R = svd.matrixV().rightCols(null_dim);
    const Matrix E = svd.matrixU().rightCols(null_dim);

    const Matrix M = E.adjoint() * R;  // k x k
    const Vector b = E.adjoint() * vec(rho0);
    const Eigen::FullPivLU<Matrix> lu(M);
    if (!lu.isInvertible())
        throw std::runtime_error(
            "steady_state_from: conserved-quantity projection is singular");
    const Vector c = lu.solve(b);

    Matrix rho = unvec(R * c, n);
    rho = 0.5 * (rho + rho.adjoint()).eval();  // hermitize rounding residue

    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12)
        throw std::runtime_error("steady_state_from: steady state has zero trace");
    return rho / tr;
}

}  // namespace probespec
