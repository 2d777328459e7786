// Multi-qudit linear algebra: tensor products, partial traces, purification,
// PSD square roots, random-state sampling and witness expectations.
#pragma once

#include "entkit/types.hpp"

#include <cstdint>
#include <vector>

namespace entkit {

// Flat-index bookkeeping for a (kept, traced) split of subsystems.
// kept_offsets[k] + traced_offsets[t] enumerates every full-space index whose
// kept digits decode k and traced digits decode t, preserving subsystem order.
struct IndexSplit {
    std::vector<int> kept;
    std::vector<int> kept_dims;
    long kept_dim = 1;
    long traced_dim = 1;
    std::vector<long> kept_offsets;
    std::vector<long> traced_offsets;
};

IndexSplit make_index_split(const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Kronecker products; dims concatenate left-to-right. Mixing a pure state
// with a density operator is rejected by the type system.
PureState tensor_product(const PureState& a, const PureState& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

// Trace out every subsystem not listed in `keep`; kept subsystems retain
// their original relative order.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep);

// Reduced state of a pure state without forming the full projector.
DensityOperator reduced_state(const PureState& psi, const std::vector<int>& keep);

// Purity of the reduction, tr(rho_keep^2), via the Gram matrix of the
// reshaped amplitude matrix. Cheap path used heavily by the tangle.
double reduced_purity(const PureState& psi, const std::vector<int>& keep);

// Eigenvalues of the reduced state (descending, zero-padded spectrum dropped
// to the smaller of the two sides; zeros do not affect entropies).
std::vector<double> reduced_spectrum(const PureState& psi,
                                     const std::vector<int>& keep);

// Purification over a minimal environment: eigenvalues below 1e-12 are
// dropped, the appended subsystem has dimension rank(rho).
PureState purify(const DensityOperator& rho);

// Hermitian PSD square root. Eigenvalues in [-1e-9, 0) are clipped to zero;
// anything below -1e-9 or a non-Hermitian input is rejected.
Matrix psd_sqrt(const Matrix& m);

// Haar-random pure state from a normalized complex-Gaussian vector.
// Identical seeds produce bit-identical amplitudes.
PureState haar_random_pure(const std::vector<int>& dims, std::uint64_t seed);

// Hilbert-Schmidt-style random mixed state: G G^dag / tr(G G^dag) with G a
// complex-Gaussian (dim x rank) matrix.
DensityOperator ginibre_random_density(const std::vector<int>& dims, int rank,
                                       std::uint64_t seed);

// Tr(rho W); throws if dims mismatch or the imaginary residue exceeds 1e-6.
double witness_expectation(const DensityOperator& rho, const WitnessOperator& w);

// Reorder subsystems: position k of the output holds input subsystem perm[k].
DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<int>& perm);
PureState permute_subsystems(const PureState& psi, const std::vector<int>& perm);

// Deterministic stream splitting for seeded sub-generators.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace entkit
