// Quantum conditional mutual information, its chain rule, and variational
// upper bounds on squashed entanglement over bounded-dimension extensions.
//
// The true squashed entanglement takes an infimum over extensions of
// unbounded environment dimension; everything here fixes the environment
// dimension and parameterizes extensions as isometries applied to the
// purifying subsystem followed by tracing a garbage register. Every such
// object is a valid extension, so the computed values are certain upper
// bounds. Entropies are base 2 throughout.
#pragma once

#include "entkit/roof.hpp"
#include "entkit/types.hpp"

#include <string>
#include <vector>

namespace entkit {

// I(A;B|E) = S(AE) + S(BE) - S(ABE) - S(E), base 2. The three index sets
// must partition the subsystems (E may be empty, giving plain mutual
// information). Values in [-1e-9, 0) are clipped to zero; anything lower is
// reported as a numerical failure.
double cmi(const DensityOperator& rho, const std::vector<int>& part_a,
           const std::vector<int>& part_b, const std::vector<int>& part_e);

struct ChainRuleResult {
    double lhs = 0.0;      // I(A;BC|E)
    double rhs = 0.0;      // I(A;B|E) + I(A;C|BE)
    double residue = 0.0;  // |lhs - rhs|
};

// Exact entropy identity I(A;BC|E) = I(A;B|E) + I(A;C|BE).
ChainRuleResult chain_rule_check(const DensityOperator& rho,
                                 const std::vector<int>& part_a,
                                 const std::vector<int>& part_b,
                                 const std::vector<int>& part_c,
                                 const std::vector<int>& part_e);

// A state on base dims ++ [d_E] whose trace over the last subsystem
// reproduces the base state.
struct ExtensionCandidate {
    DensityOperator state;
};

// Throws unless tr_E(candidate) matches `base` within 1e-8 elementwise.
void validate_extension(const ExtensionCandidate& candidate,
                        const DensityOperator& base);

struct SquashedBound {
    double value = 0.0;  // upper bound on E_sq, base 2
    int extension_dim = 1;
    bool converged = false;
    // Pure states across the cut admit only product extensions, so the value
    // is exact rather than a one-sided bound.
    bool exact = false;
    ExtensionCandidate best_extension;  // dims = input dims ++ [extension_dim]
};

// Minimize I(A;B|E)/2 over explored extensions with environment dimension
// up to d_E. Levels 1..d_E are swept with inherited starts, so enlarging
// d_E never worsens the bound. Structured starts always include the trivial
// extension, an eigenvector flag extension, a flag extension over a
// roof-minimized entanglement-entropy ensemble, and any supplied ensembles.
SquashedBound squashed_upper_bound(const DensityOperator& rho,
                                   const Bipartition& cut, int d_E,
                                   const RoofConfig& cfg,
                                   const std::vector<Ensemble>& flag_seeds = {});

// Two-subsystem convenience overload with the 0|1 cut.
SquashedBound squashed_upper_bound(const DensityOperator& rho, int d_E,
                                   const RoofConfig& cfg,
                                   const std::vector<Ensemble>& flag_seeds = {});

struct BoundTerm {
    std::string label;
    double value = 0.0;
    std::string direction;  // "upper" | "lower" | "exact"
};

struct SquashedMonogamyReport {
    BoundTerm lhs;     // E_sq^ub(A|BC)
    BoundTerm rhs_ab;  // E_sq^ub(AB)
    BoundTerm rhs_ac;  // E_sq^ub(AC)
    double gap = 0.0;  // lhs - rhs_ab - rhs_ac
    // All three terms are upper bounds, so the inequality cannot be certified
    // either way; this flag records whether the computed values are compatible
    // with it at the diagnostic tolerance.
    bool consistent_at_bounds = false;
    ChainRuleResult chain;  // exact decomposition at the best A|BC extension
};

SquashedMonogamyReport squashed_monogamy_diag(const DensityOperator& rho,
                                              int d_E, const RoofConfig& cfg);

struct SuperadditivityReport {
    BoundTerm joint;   // E_sq^ub(A1A2|B1B2) of the input
    BoundTerm pair_1;  // E_sq^ub(A1B1)
    BoundTerm pair_2;  // E_sq^ub(A2B2)
    bool superadditive_at_bounds = false;
    // Subadditivity of the bound itself on rho_{A1B1} (x) rho_{A2B2}; the
    // explicit product extension is always evaluated, so this holds by
    // construction up to arithmetic noise.
    double product_bound = 0.0;
    double product_extension_value = 0.0;
    bool subadditive = false;
};

// Input subsystems ordered (A1, A2, B1, B2).
SuperadditivityReport superadditivity_diag(const DensityOperator& rho, int d_E,
                                           const RoofConfig& cfg);

// JSON serialization with per-term bound directions.
std::string to_json(const SquashedMonogamyReport& report);
std::string to_json(const SuperadditivityReport& report);

}  // namespace entkit
