#include "entkit/types.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace entkit {

long total_dimension(const std::vector<int>& dims) {
    if (dims.empty()) throw std::invalid_argument("subsystem list is empty");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
        total *= d;
    }
    return total;
}

void validate(const DensityOperator& rho) {
    const long d = total_dimension(rho.dims);
    if (rho.matrix.rows() != d || rho.matrix.cols() != d)
        throw std::invalid_argument("density matrix side does not match dims product");
    const double herm_dev = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermitianTol)
        throw std::invalid_argument("density matrix is not Hermitian within tolerance");
    const Complex tr = rho.matrix.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
        throw std::invalid_argument("density matrix trace is not 1 within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kEigenvalueFloor)
        throw std::invalid_argument("density matrix has an eigenvalue below -1e-9");
}

void validate(const PureState& psi) {
    const long d = total_dimension(psi.dims);
    if (psi.amplitudes.size() != d)
        throw std::invalid_argument("amplitude vector length does not match dims product");
    if (std::abs(psi.amplitudes.squaredNorm() - 1.0) > kPureNormTol)
        throw std::invalid_argument("pure state squared norm is not 1 within tolerance");
}

void validate(const Bipartition& cut, int subsystem_count) {
    if (cut.side_a.empty() || cut.side_b.empty())
        throw std::invalid_argument("bipartition sides must be nonempty");
    std::vector<bool> seen(subsystem_count, false);
    auto mark = [&](const std::vector<int>& side) {
        for (int i : side) {
            if (i < 0 || i >= subsystem_count)
                throw std::invalid_argument("bipartition index out of range");
            if (seen[i]) throw std::invalid_argument("bipartition sides overlap");
            seen[i] = true;
        }
    };
    mark(cut.side_a);
    mark(cut.side_b);
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("bipartition does not cover all subsystems");
}

void validate(const WitnessOperator& w) {
    const long d = total_dimension(w.dims);
    if (w.matrix.rows() != d || w.matrix.cols() != d)
        throw std::invalid_argument("witness matrix side does not match dims product");
    const double herm_dev = (w.matrix - w.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermitianTol)
        throw std::invalid_argument("witness operator is not Hermitian within tolerance");
}

DensityOperator make_density(std::vector<int> dims, Matrix m) {
    DensityOperator rho{std::move(dims), std::move(m)};
    validate(rho);
    return rho;
}

PureState make_pure(std::vector<int> dims, Vector amplitudes) {
    PureState psi{std::move(dims), std::move(amplitudes)};
    validate(psi);
    return psi;
}

Bipartition make_bipartition(std::vector<int> side_a, std::vector<int> side_b,
                             int subsystem_count) {
    Bipartition cut{std::move(side_a), std::move(side_b)};
    validate(cut, subsystem_count);
    return cut;
}

Bipartition bipartition_from_side_a(const std::vector<int>& side_a,
                                    int subsystem_count) {
    std::vector<bool> in_a(subsystem_count, false);
    for (int i : side_a) {
        if (i < 0 || i >= subsystem_count)
            throw std::invalid_argument("bipartition index out of range");
        in_a[i] = true;
    }
    std::vector<int> side_b;
    for (int i = 0; i < subsystem_count; ++i)
        if (!in_a[i]) side_b.push_back(i);
    return make_bipartition(side_a, side_b, subsystem_count);
}

DensityOperator projector(const PureState& psi) {
    validate(psi);
    return DensityOperator{psi.dims, psi.amplitudes * psi.amplitudes.adjoint()};
}

Bipartition parse_bipartition(const std::string& text, int subsystem_count) {
    const auto bar = text.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("cut must contain '|' separating the two sides");
    auto parse_side = [](const std::string& part) {
        std::vector<int> indices;
        std::stringstream ss(part);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token.empty()) throw std::invalid_argument("empty index in cut");
            size_t pos = 0;
            int value = std::stoi(token, &pos);
            if (pos != token.size())
                throw std::invalid_argument("bad index '" + token + "' in cut");
            indices.push_back(value);
        }
        return indices;
    };
    return make_bipartition(parse_side(text.substr(0, bar)),
                            parse_side(text.substr(bar + 1)), subsystem_count);
}

}  // namespace entkit
