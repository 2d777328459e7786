#include "entkit/entropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entkit {

namespace {

std::vector<double> spectrum(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues().data(),
            solver.eigenvalues().data() + solver.eigenvalues().size()};
}

double power_trace(const DensityOperator& rho, double p) {
    double sum = 0.0;
    for (double lambda : spectrum(rho))
        if (lambda > kSpectrumCutoff) sum += std::pow(lambda, p);
    return sum;
}

}  // namespace

double purity(const DensityOperator& rho) {
    // tr(rho^2) = ||rho||_F^2 for Hermitian rho.
    return rho.matrix.squaredNorm();
}

double linear_entropy(const DensityOperator& rho) {
    return 2.0 * (1.0 - purity(rho));
}

double von_neumann_of_spectrum(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues)
        if (lambda > kSpectrumCutoff) s -= lambda * std::log2(lambda);
    return s;
}

double von_neumann(const DensityOperator& rho) {
    return von_neumann_of_spectrum(spectrum(rho));
}

double renyi(const DensityOperator& rho, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("renyi order must be positive");
    if (alpha == 1.0) return von_neumann(rho);
    return std::log2(power_trace(rho, alpha)) / (1.0 - alpha);
}

double tsallis(const DensityOperator& rho, double q) {
    if (q <= 0.0) throw std::invalid_argument("tsallis order must be positive");
    if (q == 1.0) return von_neumann(rho) * std::numbers::ln2;
    if (q == 2.0) return 1.0 - purity(rho);  // shares the tr(rho^2) route
    return (1.0 - power_trace(rho, q)) / (q - 1.0);
}

double evaluate_entropy(const DensityOperator& rho, const EntropyKind& kind) {
    switch (kind.family) {
        case EntropyFamily::Linear: return linear_entropy(rho);
        case EntropyFamily::VonNeumann: return von_neumann(rho);
        case EntropyFamily::Renyi: return renyi(rho, kind.parameter);
        case EntropyFamily::Tsallis: return tsallis(rho, kind.parameter);
    }
    throw std::logic_error("unreachable entropy family");
}

EntropyKind parse_entropy_kind(const std::string& text) {
    if (text == "linear") return {EntropyFamily::Linear, 0.0};
    if (text == "vn") return {EntropyFamily::VonNeumann, 1.0};
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string family = text.substr(0, colon);
        const double parameter = std::stod(text.substr(colon + 1));
        if (parameter <= 0.0)
            throw std::invalid_argument("entropy parameter must be positive");
        if (family == "renyi") return {EntropyFamily::Renyi, parameter};
        if (family == "tsallis") return {EntropyFamily::Tsallis, parameter};
    }
    throw std::invalid_argument("unknown entropy kind '" + text + "'");
}

double binary_entropy(double x) {
    double s = 0.0;
    if (x > 0.0) s -= x * std::log2(x);
    if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
    return s;
}

}  // namespace entkit
