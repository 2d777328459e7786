// Convex-roof minimization and roof maximization over pure-state
// decompositions of a mixed state.
//
// Every cardinality-m decomposition of a rank-r state corresponds to an
// m x r matrix with orthonormal columns acting on the eigendecomposition;
// the optimizer walks that manifold with random-start hill climbing over
// Givens rotations (exponentials of sparse anti-Hermitian generators) with
// a decaying step size. No gradient is required of the plugged-in measure.
//
// Reported minima are upper bounds and reported maxima are lower bounds on
// the true roof values; the witness ensemble always reproduces the reported
// value and averages back to the input state.
#pragma once

#include "entkit/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace entkit {

struct WeightedState {
    double probability = 0.0;
    PureState state;
};

// Probability-weighted pure states realizing a density operator.
struct Ensemble {
    std::vector<WeightedState> members;
};

struct RoofConfig {
    int cardinality = 0;  // 0 = automatic: min(rank^2, 8), never below rank
    int restarts = 16;
    int max_iterations = 2000;
    double tolerance = 1e-6;
    std::uint64_t seed = 0;
};

// Named measure on pure states across a cut; must be continuous, finite,
// non-negative, and vanish on product states.
struct PureMeasure {
    std::string name;
    std::function<double(const PureState&, const Bipartition&)> fn;
};

// Linear entropy of the side-A reduction (the tangle).
PureMeasure tangle_measure();

// von Neumann entropy of the side-A reduction.
PureMeasure entanglement_entropy_measure();

// Decomposition induced by an isometry on the eigensystem of rho:
// member i is sum_j mix(i,j) sqrt(lambda_j) |v_j>, with its squared norm as
// probability. Rejects column count != rank(rho) and non-isometric mix.
Ensemble ensemble_from_isometry(const DensityOperator& rho, const Matrix& mix);

// sum_i p_i mu(psi_i, cut).
double average_measure(const Ensemble& e, const PureMeasure& mu,
                       const Bipartition& cut);

// Average of the ensemble members, sum p_i |psi_i><psi_i|.
DensityOperator ensemble_average(const Ensemble& e);

struct RoofResult {
    double value = 0.0;
    Ensemble witness;
    bool converged = false;
};

RoofResult roof_minimize(const DensityOperator& rho, const PureMeasure& mu,
                         const Bipartition& cut, const RoofConfig& cfg);

RoofResult roof_maximize(const DensityOperator& rho, const PureMeasure& mu,
                         const Bipartition& cut, const RoofConfig& cfg);

// Lower bound on the entanglement of assistance: roof maximization of the
// von Neumann entanglement entropy.
double assisted_entanglement(const DensityOperator& rho, const Bipartition& cut,
                             const RoofConfig& cfg);

// Cardinality the optimizer uses when cfg.cardinality == 0.
int default_cardinality(long rank);

}  // namespace entkit
