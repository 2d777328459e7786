// Core value types for multi-qudit states: density operators, pure states,
// bipartitions and witness operators, together with their validity checks.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace entkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances shared by the validity checks below.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kEigenvalueFloor = -1e-9;
inline constexpr double kPureNormTol = 1e-12;
// Eigenvalues below this are treated as exact zeros (rank decisions, log terms).
inline constexpr double kSpectrumCutoff = 1e-12;

// Total Hilbert-space dimension of a subsystem list.
long total_dimension(const std::vector<int>& dims);

// Mixed state on an ordered list of subsystems. The leftmost subsystem owns
// the most significant basis index, so |e1,e2,e3> maps to
// e1*d2*d3 + e2*d3 + e3.
struct DensityOperator {
    std::vector<int> dims;
    Matrix matrix;

    long dimension() const { return matrix.rows(); }
    int subsystem_count() const { return static_cast<int>(dims.size()); }
};

// Pure state as a unit-norm amplitude vector over the same index convention.
struct PureState {
    std::vector<int> dims;
    Vector amplitudes;

    long dimension() const { return amplitudes.size(); }
    int subsystem_count() const { return static_cast<int>(dims.size()); }
};

// Split of subsystem indices into two sides for cut-dependent measures.
struct Bipartition {
    std::vector<int> side_a;
    std::vector<int> side_b;
};

// Hermitian observable used to witness entanglement via Tr(rho W).
struct WitnessOperator {
    std::vector<int> dims;
    Matrix matrix;
};

// Validity checks. Each throws std::invalid_argument with a one-line reason.
//
// DensityOperator: Hermitian within 1e-9, unit trace within 1e-9, smallest
// eigenvalue >= -1e-9. PureState: squared norm within 1e-12 of 1.
// Bipartition: sides disjoint, nonempty, jointly covering 0..n-1.
void validate(const DensityOperator& rho);
void validate(const PureState& psi);
void validate(const Bipartition& cut, int subsystem_count);
void validate(const WitnessOperator& w);

// Checked constructors; validate and return the value.
DensityOperator make_density(std::vector<int> dims, Matrix m);
PureState make_pure(std::vector<int> dims, Vector amplitudes);
Bipartition make_bipartition(std::vector<int> side_a, std::vector<int> side_b,
                             int subsystem_count);

// Side B as the complement of side A.
Bipartition bipartition_from_side_a(const std::vector<int>& side_a,
                                    int subsystem_count);

// |psi><psi| with the same subsystem structure.
DensityOperator projector(const PureState& psi);

// Parse "0|1,2" into a bipartition over `subsystem_count` subsystems.
Bipartition parse_bipartition(const std::string& text, int subsystem_count);

}  // namespace entkit
