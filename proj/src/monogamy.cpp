#include "entkit/monogamy.hpp"

#include "entkit/entropy.hpp"
#include "entkit/qcore.hpp"
#include "entkit/tangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace entkit {

namespace {

void require_qubits(const std::vector<int>& dims, size_t min_count) {
    if (dims.size() < min_count)
        throw std::invalid_argument("too few subsystems for this check");
    for (int d : dims)
        if (d != 2)
            throw std::invalid_argument("this check is defined for qubits only");
}

std::vector<int> others(int focus, int n) {
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (i != focus) rest.push_back(i);
    return rest;
}

MonogamyReport finish_report(MonogamyReport r) {
    r.residual = r.lhs - sum_rhs(r);
    if (r.orientation == ReportOrientation::Monogamy)
        r.satisfied = r.residual >= -r.tolerance;
    else
        r.satisfied = r.residual <= r.tolerance;
    return r;
}

// Pairwise-tangle right-hand side of the qubit monogamy inequality.
void add_pairwise_tangles(MonogamyReport& r, const DensityOperator& rho,
                          int focus) {
    const int n = rho.subsystem_count();
    for (int partner : others(focus, n)) {
        const std::vector<int> keep = focus < partner
                                          ? std::vector<int>{focus, partner}
                                          : std::vector<int>{partner, focus};
        DensityOperator pair = partial_trace(rho, keep);
        // Reduce to the (focus, partner) order the report documents; the
        // tangle is symmetric so the kept order does not matter.
        r.rhs_terms.push_back(two_qubit_tangle(pair).value);
        r.rhs_methods.push_back("analytic");
    }
}

MonogamyReport monogamy_pure_qubits(const PureState& psi, int focus) {
    require_qubits(psi.dims, 3);
    const int n = psi.subsystem_count();
    if (focus < 0 || focus >= n) throw std::invalid_argument("focus out of range");
    MonogamyReport r;
    r.focus = focus;
    r.lhs = pure_tangle(psi, bipartition_from_side_a({focus}, n)).value;
    r.lhs_method = "analytic";
    add_pairwise_tangles(r, projector(psi), focus);
    r.tolerance = kAnalyticReportTol;
    return finish_report(r);
}

MonogamyReport monogamy_mixed_qubits(const DensityOperator& rho, int focus,
                                     const RoofConfig& cfg) {
    require_qubits(rho.dims, 3);
    const int n = rho.subsystem_count();
    if (focus < 0 || focus >= n) throw std::invalid_argument("focus out of range");
    MonogamyReport r;
    r.focus = focus;
    const auto cut = bipartition_from_side_a({focus}, n);
    r.lhs = roof_minimize(rho, tangle_measure(), cut, cfg).value;
    r.lhs_method = "roof-bound";
    add_pairwise_tangles(r, rho, focus);
    r.tolerance = kRoofReportTol;
    return finish_report(r);
}

}  // namespace

double sum_rhs(const MonogamyReport& r) {
    double s = 0.0;
    for (double t : r.rhs_terms) s += t;
    return s;
}

double tau1(const PureState& psi) {
    if (psi.dims != std::vector<int>{2, 2, 2})
        throw std::invalid_argument("tau1 requires three qubits");
    double sum = 0.0;
    for (int focus = 0; focus < 3; ++focus)
        sum += pure_tangle(psi, bipartition_from_side_a({focus}, 3)).value;
    return sum / 3.0;
}

double tau2(const PureState& psi) {
    if (psi.dims != std::vector<int>{2, 2, 2})
        throw std::invalid_argument("tau2 requires three qubits");
    const DensityOperator rho = projector(psi);
    double sum = 0.0;
    sum += two_qubit_tangle(partial_trace(rho, {0, 1})).value;
    sum += two_qubit_tangle(partial_trace(rho, {1, 2})).value;
    sum += two_qubit_tangle(partial_trace(rho, {0, 2})).value;
    return sum / 3.0;
}

MonogamyReport ckw_check_pure(const PureState& psi, int focus) {
    if (psi.dims != std::vector<int>{2, 2, 2})
        throw std::invalid_argument("ckw_check_pure requires three qubits");
    return monogamy_pure_qubits(psi, focus);
}

MonogamyReport ckw_check_mixed(const DensityOperator& rho, int focus,
                               const RoofConfig& cfg) {
    if (rho.dims != std::vector<int>{2, 2, 2})
        throw std::invalid_argument("ckw_check_mixed requires three qubits");
    return monogamy_mixed_qubits(rho, focus, cfg);
}

MonogamyReport n_qubit_monogamy(const PureState& psi, int focus,
                                const RoofConfig&) {
    return monogamy_pure_qubits(psi, focus);
}

MonogamyReport n_qubit_monogamy(const DensityOperator& rho, int focus,
                                const RoofConfig& cfg) {
    return monogamy_mixed_qubits(rho, focus, cfg);
}

MonogamyReport polygamy_tangle(const PureState& psi, int focus,
                               const RoofConfig& cfg) {
    require_qubits(psi.dims, 2);
    const int n = psi.subsystem_count();
    if (focus < 0 || focus >= n) throw std::invalid_argument("focus out of range");
    MonogamyReport r;
    r.orientation = ReportOrientation::Polygamy;
    r.focus = focus;
    r.lhs = pure_tangle(psi, bipartition_from_side_a({focus}, n)).value;
    r.lhs_method = "analytic";
    const DensityOperator rho = projector(psi);
    for (int partner : others(focus, n)) {
        const std::vector<int> keep = focus < partner
                                          ? std::vector<int>{focus, partner}
                                          : std::vector<int>{partner, focus};
        DensityOperator pair = partial_trace(rho, keep);
        r.rhs_terms.push_back(
            roof_maximize(pair, tangle_measure(), Bipartition{{0}, {1}}, cfg).value);
        r.rhs_methods.push_back("roof-bound");
    }
    r.tolerance = kRoofReportTol;
    r = finish_report(r);
    // rhs terms are lower bounds: "satisfied" is sound, "violated" is not.
    r.verdict_sound = r.satisfied;
    return r;
}

MonogamyReport polygamy_vn(const PureState& psi, const RoofConfig& cfg, int focus) {
    validate(psi);
    if (psi.subsystem_count() != 3)
        throw std::invalid_argument("polygamy_vn requires exactly three subsystems");
    if (focus < 0 || focus >= 3) throw std::invalid_argument("focus out of range");
    MonogamyReport r;
    r.orientation = ReportOrientation::Polygamy;
    r.focus = focus;
    r.lhs = von_neumann_of_spectrum(reduced_spectrum(psi, {focus}));
    r.lhs_method = "analytic";
    const DensityOperator rho = projector(psi);
    for (int partner : others(focus, 3)) {
        const std::vector<int> keep = focus < partner
                                          ? std::vector<int>{focus, partner}
                                          : std::vector<int>{partner, focus};
        DensityOperator pair = partial_trace(rho, keep);
        r.rhs_terms.push_back(
            assisted_entanglement(pair, Bipartition{{0}, {1}}, cfg));
        r.rhs_methods.push_back("roof-bound");
    }
    r.tolerance = kRoofReportTol;
    r = finish_report(r);
    r.verdict_sound = r.satisfied;
    return r;
}

namespace {

long state_rank(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix, Eigen::EigenvaluesOnly);
    long rank = 0;
    for (long i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) > kSpectrumCutoff) ++rank;
    return rank;
}

// Tripartite CKW report with roof-bound right-hand sides, any dimensions.
// cardinality_scale > 1 widens the decomposition search (refinement pass).
MonogamyReport qudit_ckw_report(const PureState& psi, int focus,
                                const RoofConfig& cfg, int cardinality_scale) {
    MonogamyReport r;
    r.focus = focus;
    r.lhs = pure_tangle(psi, bipartition_from_side_a({focus}, 3)).value;
    r.lhs_method = "analytic";
    const DensityOperator rho = projector(psi);
    for (int partner : others(focus, 3)) {
        const std::vector<int> keep = focus < partner
                                          ? std::vector<int>{focus, partner}
                                          : std::vector<int>{partner, focus};
        DensityOperator pair = partial_trace(rho, keep);
        RoofConfig rc = cfg;
        if (cardinality_scale > 1) {
            const int base = rc.cardinality > 0
                                 ? rc.cardinality
                                 : default_cardinality(state_rank(pair));
            rc.cardinality = base * cardinality_scale;
        }
        r.rhs_terms.push_back(
            roof_minimize(pair, tangle_measure(), Bipartition{{0}, {1}}, rc).value);
        r.rhs_methods.push_back("roof-bound");
    }
    r.tolerance = kRoofReportTol;
    return finish_report(r);
}

// Totally antisymmetric three-party state on equal local dimension d >= 3.
PureState antisymmetric_trial(int d) {
    const std::vector<int> dims{d, d, d};
    Vector v = Vector::Zero(static_cast<long>(d) * d * d);
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                             {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    const double signs[6] = {1, 1, 1, -1, -1, -1};
    for (int k = 0; k < 6; ++k) {
        const long index = (static_cast<long>(perms[k][0]) * d + perms[k][1]) * d +
                           perms[k][2];
        v(index) = signs[k] / std::sqrt(6.0);
    }
    return PureState{dims, std::move(v)};
}

}  // namespace

ViolationSearchResult violation_search(const std::vector<int>& dims, int samples,
                                       const RoofConfig& cfg, std::uint64_t seed,
                                       double threshold) {
    if (dims.size() != 3)
        throw std::invalid_argument("violation_search expects three subsystems");
    if (samples < 0) throw std::invalid_argument("samples must be >= 0");
    if (threshold <= 0.0) throw std::invalid_argument("threshold must be positive");

    ViolationSearchResult result;
    std::vector<std::pair<std::uint64_t, PureState>> trials;
    const bool equal_qudits =
        dims[0] == dims[1] && dims[1] == dims[2] && dims[0] > 2;
    if (equal_qudits && samples > 0)
        trials.emplace_back(0, antisymmetric_trial(dims[0]));
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t state_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
        trials.emplace_back(state_seed, haar_random_pure(dims, state_seed));
    }

    RoofConfig refine_cfg = cfg;
    refine_cfg.restarts = cfg.restarts * 4;

    for (const auto& [state_seed, psi] : trials) {
        ++result.samples_run;
        for (int focus = 0; focus < 3; ++focus) {
            MonogamyReport screen = qudit_ckw_report(psi, focus, cfg, 1);
            if (screen.residual >= -threshold) continue;
            ++result.screened;
            MonogamyReport refined = qudit_ckw_report(psi, focus, refine_cfg, 2);
            if (refined.residual < -threshold) {
                result.candidates.push_back(
                    ViolationCandidate{std::move(refined), state_seed, true});
            } else {
                ++result.discarded;
            }
        }
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     int rhs_count) {
    out << "state_seed,focus,lhs";
    for (int i = 1; i <= rhs_count; ++i) out << ",rhs_" << i;
    out << ",residual,satisfied,tau1,tau2,method_tags\n";
    out.precision(15);
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << row.state_seed << ',' << r.focus << ',' << r.lhs;
        for (int i = 0; i < rhs_count; ++i) {
            out << ',';
            if (i < static_cast<int>(r.rhs_terms.size())) out << r.rhs_terms[i];
            else out << "nan";
        }
        out << ',' << r.residual << ',' << (r.satisfied ? 1 : 0) << ','
            << row.tau1_value << ',' << row.tau2_value << ','
            << "lhs=" << r.lhs_method;
        for (const auto& m : r.rhs_methods) out << ";rhs=" << m;
        out << '\n';
    }
}

}  // namespace entkit
