#include "entkit/tangle.hpp"

#include "entkit/entropy.hpp"
#include "entkit/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entkit {

namespace {

void require_two_qubits(const DensityOperator& rho) {
    if (rho.dims != std::vector<int>{2, 2})
        throw std::invalid_argument("operation requires a two-qubit state");
}

// sigma_y x sigma_y in the standard basis; real and symmetric.
const Matrix& spin_flip_operator() {
    static const Matrix f = [] {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return f;
}

}  // namespace

TangleValue pure_tangle(const PureState& psi, const Bipartition& cut) {
    validate(psi);
    validate(cut, psi.subsystem_count());
    const double p = reduced_purity(psi, cut.side_a);
    const double value = std::max(0.0, 2.0 * (1.0 - p));
    return TangleValue{value, cut};
}

DensityOperator spin_flip(const DensityOperator& rho) {
    require_two_qubits(rho);
    const Matrix& f = spin_flip_operator();
    return DensityOperator{rho.dims, f * rho.matrix.conjugate() * f};
}

std::array<double, 4> wootters_lambdas(const DensityOperator& rho) {
    require_two_qubits(rho);
    // The lambdas are the singular values of B = sqrt(rho) sqrt(rho~), since
    // B B^dag = sqrt(rho) rho~ sqrt(rho). With F = sigma_y x sigma_y (real)
    // and rho Hermitian, sqrt(rho~) = F sqrt(rho)^T F, so one Hermitian root
    // suffices. Singular values are stable where the eigenvalues of the
    // non-normal product rho rho~ scatter near defective zeros.
    const Matrix root = psd_sqrt(rho.matrix);
    const Matrix& f = spin_flip_operator();
    const Matrix b = root * f * root.transpose() * f;
    Eigen::JacobiSVD<Matrix> svd(b);
    std::array<double, 4> lambdas{};
    for (int i = 0; i < 4; ++i) lambdas[i] = svd.singularValues()(i);
    std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
    return lambdas;
}

double concurrence(const DensityOperator& rho) {
    const auto l = wootters_lambdas(rho);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

TangleValue two_qubit_tangle(const DensityOperator& rho) {
    const double c = concurrence(rho);
    return TangleValue{c * c, Bipartition{{0}, {1}}};
}

double eof_two_qubit(const DensityOperator& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

}  // namespace entkit
