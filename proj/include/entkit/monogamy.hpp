// Entanglement-sharing inequalities: CKW monogamy for pure and mixed states,
// tau1/tau2 averages, polygamy duals, and a randomized search for
// higher-dimensional violations.
//
// Mixed-state left-hand sides come from the roof minimizer and are upper
// bounds; polygamy right-hand sides come from the roof maximizer and are
// lower bounds. Reports carry a method tag per term so that a "satisfied"
// verdict is only claimed when the bound directions make it sound.
#pragma once

#include "entkit/roof.hpp"
#include "entkit/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace entkit {

enum class ReportOrientation { Monogamy, Polygamy };

// Analytic reports are judged at 1e-8; anything involving a roof bound at 1e-4.
inline constexpr double kAnalyticReportTol = 1e-8;
inline constexpr double kRoofReportTol = 1e-4;

struct MonogamyReport {
    double lhs = 0.0;
    std::vector<double> rhs_terms;
    double residual = 0.0;  // lhs - sum(rhs_terms), stored exactly
    bool satisfied = false;
    int focus = 0;
    std::string lhs_method;                // "analytic" | "roof-bound"
    std::vector<std::string> rhs_methods;  // per term
    ReportOrientation orientation = ReportOrientation::Monogamy;
    double tolerance = kAnalyticReportTol;
    // For polygamy reports the rhs terms are lower bounds, so "satisfied" is
    // sound while a violation verdict would be inconclusive; this flag records
    // whether the verdict direction is protected by the bound directions.
    bool verdict_sound = true;
};

double sum_rhs(const MonogamyReport& r);

// Average tangle over the three one-vs-rest bipartitions of a three-qubit
// pure state.
double tau1(const PureState& psi);

// Average analytic two-qubit tangle over the three pairwise reductions.
double tau2(const PureState& psi);

// lhs = tangle(focus | rest); rhs = analytic tangles of the two pairwise
// reductions. Three qubits, pure.
MonogamyReport ckw_check_pure(const PureState& psi, int focus);

// Mixed three-qubit variant; lhs is the roof-minimized tangle (upper bound).
MonogamyReport ckw_check_mixed(const DensityOperator& rho, int focus,
                               const RoofConfig& cfg);

// n-qubit generalization (n >= 3); pure lhs is analytic, mixed lhs roof-bound.
MonogamyReport n_qubit_monogamy(const PureState& psi, int focus,
                                const RoofConfig& cfg);
MonogamyReport n_qubit_monogamy(const DensityOperator& rho, int focus,
                                const RoofConfig& cfg);

// Dual bound: lhs = tangle(focus | rest) <= sum of assisted-tangle lower
// bounds over pairwise reductions.
MonogamyReport polygamy_tangle(const PureState& psi, int focus,
                               const RoofConfig& cfg);

// Von Neumann polygamy for tripartite pure states of any dimensions:
// S(rho_focus) <= sum of assisted-entanglement lower bounds.
MonogamyReport polygamy_vn(const PureState& psi, const RoofConfig& cfg,
                           int focus = 0);

struct ViolationCandidate {
    MonogamyReport report;
    std::uint64_t state_seed = 0;  // sample index seed; 0 for injected trials
    bool refined = false;          // survived the 4x-restart refinement pass
};

struct ViolationSearchResult {
    std::vector<ViolationCandidate> candidates;  // survivors only
    int samples_run = 0;
    int screened = 0;   // reports that crossed the threshold before refinement
    int discarded = 0;  // screened candidates removed by refinement
};

// Randomized CKW search over Haar samples of tripartite `dims`. When all
// subsystem dimensions are equal and > 2 the totally antisymmetric trial
// state is injected ahead of the samples. Candidates must survive a
// refinement pass with 4x restarts and doubled cardinality.
ViolationSearchResult violation_search(const std::vector<int>& dims, int samples,
                                       const RoofConfig& cfg, std::uint64_t seed,
                                       double threshold = 1e-3);

// CSV export: state_seed, focus, lhs, rhs_1..rhs_k, residual, satisfied,
// tau1, tau2, method_tags. tau1/tau2 are written as nan when undefined.
struct SweepRow {
    std::uint64_t state_seed = 0;
    MonogamyReport report;
    double tau1_value = std::numeric_limits<double>::quiet_NaN();
    double tau2_value = std::numeric_limits<double>::quiet_NaN();
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     int rhs_count);

}  // namespace entkit
