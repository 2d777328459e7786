#include "entkit/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace entkit {

namespace {

std::vector<long> strides_for(const std::vector<int>& dims) {
    std::vector<long> strides(dims.size());
    long s = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        strides[k] = s;
        s *= dims[k];
    }
    return strides;
}

// Offsets of every digit combination of `subsystems` within the full space.
std::vector<long> group_offsets(const std::vector<int>& dims,
                                const std::vector<long>& strides,
                                const std::vector<int>& subsystems) {
    long group_dim = 1;
    for (int s : subsystems) group_dim *= dims[s];
    std::vector<long> offsets(group_dim, 0);
    long repeat = group_dim;
    for (int s : subsystems) {
        const int d = dims[s];
        repeat /= d;
        // Digit for subsystem s cycles with period `repeat` inside the group
        // index, matching row-major order of the subsystem list.
        for (long g = 0; g < group_dim; ++g) {
            const long digit = (g / repeat) % d;
            offsets[g] += digit * strides[s];
        }
    }
    return offsets;
}

std::mt19937_64 seeded_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

Vector gaussian_vector(long n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (long i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over seed xor stream tag
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

IndexSplit make_index_split(const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
    std::vector<bool> kept_mask(dims.size(), false);
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size()))
            throw std::invalid_argument("keep index out of range");
        if (kept_mask[k]) throw std::invalid_argument("duplicate keep index");
        kept_mask[k] = true;
    }
    IndexSplit split;
    std::vector<int> traced;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
        if (kept_mask[i]) {
            split.kept.push_back(i);
            split.kept_dims.push_back(dims[i]);
            split.kept_dim *= dims[i];
        } else {
            traced.push_back(i);
            split.traced_dim *= dims[i];
        }
    }
    const auto strides = strides_for(dims);
    split.kept_offsets = group_offsets(dims, strides, split.kept);
    split.traced_offsets = traced.empty() ? std::vector<long>{0}
                                          : group_offsets(dims, strides, traced);
    return split;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    validate(a);
    validate(b);
    PureState out;
    out.dims = a.dims;
    out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
    const long db = b.amplitudes.size();
    out.amplitudes.resize(a.amplitudes.size() * db);
    for (long i = 0; i < a.amplitudes.size(); ++i)
        out.amplitudes.segment(i * db, db) = a.amplitudes(i) * b.amplitudes;
    return out;
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    validate(a);
    validate(b);
    DensityOperator out;
    out.dims = a.dims;
    out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
    const long da = a.matrix.rows();
    const long db = b.matrix.rows();
    out.matrix.resize(da * db, da * db);
    for (long i = 0; i < da; ++i)
        for (long j = 0; j < da; ++j)
            out.matrix.block(i * db, j * db, db, db) = a.matrix(i, j) * b.matrix;
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep) {
    const auto split = make_index_split(rho.dims, keep);
    Matrix out = Matrix::Zero(split.kept_dim, split.kept_dim);
    for (long r = 0; r < split.kept_dim; ++r) {
        for (long c = 0; c < split.kept_dim; ++c) {
            Complex sum = 0.0;
            for (long t = 0; t < split.traced_dim; ++t)
                sum += rho.matrix(split.kept_offsets[r] + split.traced_offsets[t],
                                  split.kept_offsets[c] + split.traced_offsets[t]);
            out(r, c) = sum;
        }
    }
    return DensityOperator{split.kept_dims, std::move(out)};
}

namespace {

// Amplitudes reshaped to a (kept x traced) matrix.
Matrix reshaped_amplitudes(const PureState& psi, const IndexSplit& split) {
    Matrix m(split.kept_dim, split.traced_dim);
    for (long k = 0; k < split.kept_dim; ++k)
        for (long t = 0; t < split.traced_dim; ++t)
            m(k, t) = psi.amplitudes(split.kept_offsets[k] + split.traced_offsets[t]);
    return m;
}

}  // namespace

DensityOperator reduced_state(const PureState& psi, const std::vector<int>& keep) {
    const auto split = make_index_split(psi.dims, keep);
    const Matrix m = reshaped_amplitudes(psi, split);
    return DensityOperator{split.kept_dims, m * m.adjoint()};
}

double reduced_purity(const PureState& psi, const std::vector<int>& keep) {
    const auto split = make_index_split(psi.dims, keep);
    const Matrix m = reshaped_amplitudes(psi, split);
    // tr(rho^2) = ||G||_F^2 for G the Gram matrix on the smaller side.
    if (split.kept_dim <= split.traced_dim) {
        const Matrix g = m * m.adjoint();
        return g.squaredNorm();
    }
    const Matrix g = m.adjoint() * m;
    return g.squaredNorm();
}

std::vector<double> reduced_spectrum(const PureState& psi,
                                     const std::vector<int>& keep) {
    const auto split = make_index_split(psi.dims, keep);
    const Matrix m = reshaped_amplitudes(psi, split);
    const Matrix g = (split.kept_dim <= split.traced_dim) ? Matrix(m * m.adjoint())
                                                          : Matrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(g, Eigen::EigenvaluesOnly);
    std::vector<double> spectrum(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + g.rows());
    std::sort(spectrum.begin(), spectrum.end(), std::greater<double>());
    return spectrum;
}

PureState purify(const DensityOperator& rho) {
    validate(rho);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix);
    const long d = rho.matrix.rows();
    std::vector<long> order;
    for (long i = d - 1; i >= 0; --i)
        if (solver.eigenvalues()(i) > kSpectrumCutoff) order.push_back(i);
    const long rank = static_cast<long>(order.size());
    if (rank == 0) throw std::invalid_argument("state has numerically zero rank");
    Vector amps = Vector::Zero(d * rank);
    for (long j = 0; j < rank; ++j) {
        const double w = std::sqrt(solver.eigenvalues()(order[j]));
        for (long i = 0; i < d; ++i)
            amps(i * rank + j) = w * solver.eigenvectors()(i, order[j]);
    }
    amps /= amps.norm();
    PureState out;
    out.dims = rho.dims;
    out.dims.push_back(static_cast<int>(rank));
    out.amplitudes = std::move(amps);
    return out;
}

Matrix psd_sqrt(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw std::invalid_argument("psd_sqrt requires a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    Eigen::VectorXd lambda = solver.eigenvalues();
    for (long i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < kEigenvalueFloor)
            throw std::invalid_argument("psd_sqrt input has an eigenvalue below -1e-9");
        // Sub-cutoff eigenvalues count as exact zeros; sqrt would otherwise
        // amplify solver noise from 1e-16 to 1e-8.
        lambda(i) = lambda(i) < kSpectrumCutoff ? 0.0 : std::sqrt(lambda(i));
    }
    return solver.eigenvectors() * lambda.asDiagonal() *
           solver.eigenvectors().adjoint();
}

PureState haar_random_pure(const std::vector<int>& dims, std::uint64_t seed) {
    const long d = total_dimension(dims);
    auto rng = seeded_engine(seed);
    Vector v = gaussian_vector(d, rng);
    v /= v.norm();
    return PureState{dims, std::move(v)};
}

DensityOperator ginibre_random_density(const std::vector<int>& dims, int rank,
                                       std::uint64_t seed) {
    const long d = total_dimension(dims);
    if (rank < 1 || rank > d)
        throw std::invalid_argument("ginibre rank must lie in [1, dim]");
    auto rng = seeded_engine(seed);
    Matrix g(d, rank);
    for (long j = 0; j < rank; ++j) g.col(j) = gaussian_vector(d, rng);
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityOperator{dims, std::move(m)};
}

double witness_expectation(const DensityOperator& rho, const WitnessOperator& w) {
    if (rho.dims != w.dims)
        throw std::invalid_argument("state and witness dims mismatch");
    const Complex value = (rho.matrix * w.matrix).trace();
    if (std::abs(value.imag()) > 1e-6)
        throw std::invalid_argument("witness expectation has a non-real residue");
    return value.real();
}

namespace {

// map[new_flat] = old_flat for the given subsystem reordering.
std::vector<long> permutation_map(const std::vector<int>& dims,
                                  const std::vector<int>& perm) {
    if (perm.size() != dims.size())
        throw std::invalid_argument("permutation length does not match dims");
    std::vector<bool> seen(dims.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(dims.size()) || seen[p])
            throw std::invalid_argument("invalid subsystem permutation");
        seen[p] = true;
    }
    const auto old_strides = strides_for(dims);
    std::vector<int> new_dims(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
    const long total = total_dimension(dims);
    std::vector<long> map(total);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        long old_idx = 0;
        for (long k = static_cast<long>(perm.size()) - 1; k >= 0; --k) {
            const long digit = rem % new_dims[k];
            rem /= new_dims[k];
            old_idx += digit * old_strides[perm[k]];
        }
        map[idx] = old_idx;
    }
    return map;
}

}  // namespace

DensityOperator permute_subsystems(const DensityOperator& rho,
                                   const std::vector<int>& perm) {
    const auto map = permutation_map(rho.dims, perm);
    Matrix out(rho.matrix.rows(), rho.matrix.cols());
    for (long i = 0; i < out.rows(); ++i)
        for (long j = 0; j < out.cols(); ++j) out(i, j) = rho.matrix(map[i], map[j]);
    std::vector<int> new_dims(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = rho.dims[perm[k]];
    return DensityOperator{std::move(new_dims), std::move(out)};
}

PureState permute_subsystems(const PureState& psi, const std::vector<int>& perm) {
    const auto map = permutation_map(psi.dims, perm);
    Vector out(psi.amplitudes.size());
    for (long i = 0; i < out.size(); ++i) out(i) = psi.amplitudes(map[i]);
    std::vector<int> new_dims(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = psi.dims[perm[k]];
    return PureState{std::move(new_dims), std::move(out)};
}

}  // namespace entkit
