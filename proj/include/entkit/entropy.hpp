// Entropy family over density-operator spectra: purity, linear entropy,
// von Neumann, Renyi-alpha and Tsallis-q.
//
// All logarithms are base 2, so one Bell pair carries exactly one bit of
// entanglement entropy. The Tsallis family is polynomial in rho and therefore
// base-free; its q -> 1 limit is the natural-log von Neumann entropy, i.e.
// tsallis(rho, 1) == von_neumann(rho) * ln 2.
#pragma once

#include "entkit/types.hpp"

#include <string>

namespace entkit {

enum class EntropyFamily { Linear, VonNeumann, Renyi, Tsallis };

struct EntropyKind {
    EntropyFamily family = EntropyFamily::VonNeumann;
    double parameter = 1.0;  // alpha or q; ignored for linear / von Neumann
};

// tr(rho^2), in [1/d, 1]; equals 1 iff pure (within tolerance).
double purity(const DensityOperator& rho);

// 2 (1 - tr rho^2).
double linear_entropy(const DensityOperator& rho);

// -sum lambda log2 lambda with 0 log 0 = 0 and eigenvalues below 1e-12
// treated as exact zeros.
double von_neumann(const DensityOperator& rho);

// (1/(1-alpha)) log2 tr rho^alpha; dispatches to von_neumann at alpha == 1.
double renyi(const DensityOperator& rho, double alpha);

// (1/(q-1)) (1 - tr rho^q); dispatches to the natural-log von Neumann
// entropy at q == 1.
double tsallis(const DensityOperator& rho, double q);

double evaluate_entropy(const DensityOperator& rho, const EntropyKind& kind);

// Parse "linear", "vn", "renyi:2", "tsallis:0.5".
EntropyKind parse_entropy_kind(const std::string& text);

// Base-2 binary entropy h(x) = -x log2 x - (1-x) log2(1-x).
double binary_entropy(double x);

// Spectrum entropy helpers shared with reduced-state paths.
double von_neumann_of_spectrum(const std::vector<double>& eigenvalues);

}  // namespace entkit
