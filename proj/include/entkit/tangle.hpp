// Cut-dependent tangle for pure states in any dimension, and the analytic
// two-qubit mixed-state tangle, concurrence and entanglement of formation.
#pragma once

#include "entkit/types.hpp"

#include <array>

namespace entkit {

struct TangleValue {
    double value = 0.0;
    Bipartition cut;
};

// Linear entropy of the reduced state on cut.side_a; symmetric in the sides.
TangleValue pure_tangle(const PureState& psi, const Bipartition& cut);

// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y); two qubits only.
DensityOperator spin_flip(const DensityOperator& rho);

// The four descending singular values of sqrt(rho) * sqrt(rho~), equal to
// the spectrum of sqrt(sqrt(rho) rho~ sqrt(rho)) and to the square roots of
// the eigenvalues of rho * rho~.
std::array<double, 4> wootters_lambdas(const DensityOperator& rho);

// max(0, l1 - l2 - l3 - l4)^2.
TangleValue two_qubit_tangle(const DensityOperator& rho);

// max(0, l1 - l2 - l3 - l4); its square is the tangle.
double concurrence(const DensityOperator& rho);

// h((1 + sqrt(1 - C^2))/2) with h the base-2 binary entropy.
double eof_two_qubit(const DensityOperator& rho);

}  // namespace entkit
