#include "entkit/squashed.hpp"

#include "entkit/entropy.hpp"
#include "entkit/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace entkit {

namespace {

std::vector<int> sorted_union(std::initializer_list<const std::vector<int>*> sets) {
    std::vector<int> all;
    for (const auto* s : sets) all.insert(all.end(), s->begin(), s->end());
    std::sort(all.begin(), all.end());
    return all;
}

void require_partition(const DensityOperator& rho,
                       std::initializer_list<const std::vector<int>*> sets) {
    std::vector<bool> seen(rho.dims.size(), false);
    for (const auto* s : sets) {
        for (int i : *s) {
            if (i < 0 || i >= static_cast<int>(rho.dims.size()))
                throw std::invalid_argument("partition index out of range");
            if (seen[i]) throw std::invalid_argument("partition sets overlap");
            seen[i] = true;
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("partition does not cover all subsystems");
}

double subset_entropy(const DensityOperator& rho, const std::vector<int>& keep) {
    if (keep.empty()) return 0.0;
    return von_neumann(partial_trace(rho, keep));
}

// CMI over subsets that need not cover rho; reduces first.
double cmi_of_subsets(const DensityOperator& rho, const std::vector<int>& a,
                      const std::vector<int>& b, const std::vector<int>& e) {
    const auto keep = sorted_union({&a, &b, &e});
    std::vector<bool> all(rho.dims.size(), false);
    for (int i : keep) all[i] = true;
    if (std::all_of(all.begin(), all.end(), [](bool x) { return x; }))
        return cmi(rho, a, b, e);
    // Remap subset indices to positions within the kept marginal.
    DensityOperator marginal = partial_trace(rho, keep);
    auto remap = [&keep](const std::vector<int>& set) {
        std::vector<int> out;
        for (int i : set)
            out.push_back(static_cast<int>(
                std::lower_bound(keep.begin(), keep.end(), i) - keep.begin()));
        return out;
    };
    return cmi(marginal, remap(a), remap(b), remap(e));
}

// ---------------------------------------------------------------------------
// Extension search machinery.
//
// A rank-r state rho with purification Psi (d x r, column j = component on
// purifier level j) is extended by an isometry V : C^r -> C^{e * g} applied
// to the purifier, then tracing the garbage register of dimension g. The
// extended pure state, reshaped d x (e*g), is Psi * V^T.
// ---------------------------------------------------------------------------

struct ExtensionProblem {
    std::vector<int> dims;  // base dims
    Matrix psi;             // d x r purification amplitudes
    long rank = 0;
    long garbage_dim = 1;
    std::vector<int> side_a;
    std::vector<int> side_b;
};

// Entropy of the reduction of a pure state given a (kept x traced) reshape.
double pure_subset_entropy(const Matrix& reshaped) {
    const Matrix gram = (reshaped.rows() <= reshaped.cols())
                            ? Matrix(reshaped * reshaped.adjoint())
                            : Matrix(reshaped.adjoint() * reshaped);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (long i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > kSpectrumCutoff) s -= lambda * std::log2(lambda);
    }
    return s;
}

// Row-major flatten of a (d x D) amplitude matrix into a state vector.
Vector flatten_rows(const Matrix& m) {
    Vector out(m.rows() * m.cols());
    for (long i = 0; i < m.rows(); ++i)
        out.segment(i * m.cols(), m.cols()) = m.row(i).transpose();
    return out;
}

// Extended pure state on dims ++ [e, g] for the isometry V.
PureState extended_pure(const ExtensionProblem& prob, const Matrix& v, long e) {
    std::vector<int> full_dims = prob.dims;
    full_dims.push_back(static_cast<int>(e));
    full_dims.push_back(static_cast<int>(prob.garbage_dim));
    return PureState{std::move(full_dims), flatten_rows(prob.psi * v.transpose())};
}

// I(A;B|E) of the extension defined by V at environment dimension e.
double extension_cmi(const ExtensionProblem& prob, const Matrix& v, long e) {
    const PureState psi_ext = extended_pure(prob, v, e);
    const int n_base = static_cast<int>(prob.dims.size());

    auto entropy_keep = [&](const std::vector<int>& keep) {
        const auto split = make_index_split(psi_ext.dims, keep);
        Matrix m(split.kept_dim, split.traced_dim);
        for (long k = 0; k < split.kept_dim; ++k)
            for (long t = 0; t < split.traced_dim; ++t)
                m(k, t) =
                    psi_ext.amplitudes(split.kept_offsets[k] + split.traced_offsets[t]);
        return pure_subset_entropy(m);
    };

    std::vector<int> ae = prob.side_a;
    ae.push_back(n_base);
    std::vector<int> be = prob.side_b;
    be.push_back(n_base);
    std::vector<int> abe;
    for (int i = 0; i <= n_base; ++i) abe.push_back(i);

    return entropy_keep(ae) + entropy_keep(be) - entropy_keep(abe) -
           entropy_keep({n_base});
}

// Extension density operator on dims ++ [e] for the best isometry found.
DensityOperator extension_state(const ExtensionProblem& prob, const Matrix& v,
                                long e) {
    const PureState psi_ext = extended_pure(prob, v, e);
    std::vector<int> keep;
    for (int i = 0; i <= static_cast<int>(prob.dims.size()); ++i) keep.push_back(i);
    return reduced_state(psi_ext, keep);
}

Matrix embed_environment(const Matrix& v, long old_e, long new_e, long g) {
    // Rows are indexed (env, garbage) with env most significant.
    Matrix out = Matrix::Zero(new_e * g, v.cols());
    out.topRows(old_e * g) = v;
    return out;
}

Matrix trivial_isometry(long r, long e, long g) {
    // Purifier goes entirely to the garbage register; E stays in |0>.
    Matrix v = Matrix::Zero(e * g, r);
    for (long j = 0; j < r; ++j) v(j, j) = 1.0;  // env digit 0, garbage digit j
    return v;
}

Matrix eigen_flag_isometry(long r, long e, long g) {
    // Purifier level j is labeled |j mod e> on E and parked at garbage |j>.
    Matrix v = Matrix::Zero(e * g, r);
    for (long j = 0; j < r; ++j) v((j % e) * g + j, j) = 1.0;
    return v;
}

// Flag extension over an arbitrary ensemble realizing rho: member i is
// labeled |i mod e> on E and parked at garbage |i>. The isometry column j
// carries mix(i, j) = <v_j | psi_i> sqrt(p_i) / sqrt(lambda_j).
Matrix ensemble_flag_isometry(const Ensemble& ensemble, const Matrix& psi_pur,
                              long e, long g) {
    const long r = psi_pur.cols();
    const long m = static_cast<long>(ensemble.members.size());
    if (m > g) throw std::invalid_argument("garbage register too small for flag seed");
    Matrix v = Matrix::Zero(e * g, r);
    // Column norms of the purification matrix are sqrt(lambda_j).
    for (long j = 0; j < r; ++j) {
        const double lambda_sqrt = psi_pur.col(j).norm();
        const Vector basis_vec = psi_pur.col(j) / lambda_sqrt;
        for (long i = 0; i < m; ++i) {
            const auto& member = ensemble.members[i];
            const Complex mix_ij = basis_vec.dot(member.state.amplitudes) *
                                   std::sqrt(member.probability) / lambda_sqrt;
            v((i % e) * g + i, j) = mix_ij;
        }
    }
    const Matrix gram = v.adjoint() * v;
    if ((gram - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-6)
        throw std::invalid_argument("flag-seed ensemble does not realize the state");
    return v;
}

Matrix random_extension_isometry(long rows, long cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix gmat(rows, cols);
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i)
            gmat(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(gmat);
    return qr.householderQ() * Matrix::Identity(rows, cols);
}

// Givens hill climb on the isometry rows, minimizing the extension CMI.
double climb(const ExtensionProblem& prob, Matrix& v, long e, double start_value,
             int max_iterations, std::mt19937_64& rng) {
    const long rows = v.rows();
    if (rows < 2) return start_value;
    std::uniform_int_distribution<long> pick(0, rows - 1);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    double value = start_value;
    double step = 0.6;
    constexpr double kDecay = 0.5;
    constexpr double kFloor = 2e-4;
    constexpr int kStall = 30;
    int stall = 0;
    Matrix candidate = v;
    for (int iter = 0; iter < max_iterations; ++iter) {
        long a = pick(rng);
        long b = pick(rng);
        if (a == b) continue;
        const double theta = step * normal(rng);
        const double phi = 2.0 * std::numbers::pi * uniform(rng);
        const Complex s = std::sin(theta) * Complex(std::cos(phi), std::sin(phi));
        const double co = std::cos(theta);
        candidate = v;
        candidate.row(a) = co * v.row(a) + std::conj(s) * v.row(b);
        candidate.row(b) = -s * v.row(a) + co * v.row(b);
        const double trial = extension_cmi(prob, candidate, e);
        if (trial < value - 1e-15) {
            v = candidate;
            value = trial;
            stall = 0;
        } else if (++stall >= kStall) {
            stall = 0;
            step *= kDecay;
            if (step < kFloor) break;
        }
    }
    return value;
}

}  // namespace

double cmi(const DensityOperator& rho, const std::vector<int>& part_a,
           const std::vector<int>& part_b, const std::vector<int>& part_e) {
    validate(rho);
    if (part_a.empty() || part_b.empty())
        throw std::invalid_argument("A and B parts must be nonempty");
    require_partition(rho, {&part_a, &part_b, &part_e});

    const auto ae = sorted_union({&part_a, &part_e});
    const auto be = sorted_union({&part_b, &part_e});
    const double value = subset_entropy(rho, ae) + subset_entropy(rho, be) -
                         von_neumann(rho) - subset_entropy(rho, part_e);
    if (value < 0.0) {
        if (value < -1e-9)
            throw std::runtime_error("conditional mutual information below -1e-9");
        return 0.0;
    }
    return value;
}

ChainRuleResult chain_rule_check(const DensityOperator& rho,
                                 const std::vector<int>& part_a,
                                 const std::vector<int>& part_b,
                                 const std::vector<int>& part_c,
                                 const std::vector<int>& part_e) {
    validate(rho);
    require_partition(rho, {&part_a, &part_b, &part_c, &part_e});
    const auto bc = sorted_union({&part_b, &part_c});
    const auto be = sorted_union({&part_b, &part_e});
    ChainRuleResult result;
    result.lhs = cmi(rho, part_a, bc, part_e);
    result.rhs = cmi_of_subsets(rho, part_a, part_b, part_e) +
                 cmi(rho, part_a, part_c, be);
    result.residue = std::abs(result.lhs - result.rhs);
    return result;
}

void validate_extension(const ExtensionCandidate& candidate,
                        const DensityOperator& base) {
    validate(candidate.state);
    const int n = candidate.state.subsystem_count();
    if (n != base.subsystem_count() + 1)
        throw std::invalid_argument("extension must append exactly one subsystem");
    std::vector<int> keep;
    for (int i = 0; i + 1 < n; ++i) keep.push_back(i);
    const DensityOperator marginal = partial_trace(candidate.state, keep);
    if (marginal.dims != base.dims ||
        (marginal.matrix - base.matrix).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("extension does not reproduce the base state");
}

SquashedBound squashed_upper_bound(const DensityOperator& rho,
                                   const Bipartition& cut, int d_E,
                                   const RoofConfig& cfg,
                                   const std::vector<Ensemble>& flag_seeds) {
    validate(rho);
    validate(cut, rho.subsystem_count());
    if (d_E < 1) throw std::invalid_argument("extension dimension must be >= 1");

    const PureState purification = purify(rho);
    const long r = purification.dims.back();
    const long d = rho.dimension();

    ExtensionProblem prob;
    prob.dims = rho.dims;
    prob.rank = r;
    prob.side_a = cut.side_a;
    prob.side_b = cut.side_b;
    prob.psi.resize(d, r);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < r; ++j) prob.psi(i, j) = purification.amplitudes(i * r + j);

    // Pure states admit only product extensions; every isometry gives the
    // same value I(A;B)/2 = S(rho_A).
    if (r == 1) {
        const double value = subset_entropy(rho, cut.side_a);
        prob.garbage_dim = 1;
        const Matrix v = trivial_isometry(1, d_E, 1);
        SquashedBound bound;
        bound.value = value;
        bound.extension_dim = d_E;
        bound.converged = true;
        bound.exact = true;
        bound.best_extension = ExtensionCandidate{extension_state(prob, v, d_E)};
        return bound;
    }

    // Roof-minimized entanglement-entropy ensemble; its flag extension pins
    // the bound at the numeric entanglement of formation before climbing.
    // Cardinality is held to d_E where the rank allows so that every member
    // receives a distinct environment label at the top level.
    RoofConfig roof_cfg = cfg;
    roof_cfg.cardinality = static_cast<int>(
        std::max(r, std::min<long>(d_E, default_cardinality(r))));
    roof_cfg.seed = mix_seed(cfg.seed, 0x5eedULL);
    const Ensemble roof_ensemble =
        roof_minimize(rho, entanglement_entropy_measure(), cut, roof_cfg).witness;

    long g = std::max(r, static_cast<long>(roof_ensemble.members.size()));
    for (const auto& seed : flag_seeds)
        g = std::max(g, static_cast<long>(seed.members.size()));
    prob.garbage_dim = g;

    Matrix best_v;
    double best_value = 0.0;
    long best_level = 1;
    bool have_best = false;
    int final_level_agreement = 0;

    for (long e = 1; e <= d_E; ++e) {
        std::vector<Matrix> starts;
        if (have_best) starts.push_back(embed_environment(best_v, best_level, e, g));
        starts.push_back(trivial_isometry(r, e, g));
        starts.push_back(eigen_flag_isometry(r, e, g));
        starts.push_back(ensemble_flag_isometry(roof_ensemble, prob.psi, e, g));
        for (const auto& seed : flag_seeds)
            starts.push_back(ensemble_flag_isometry(seed, prob.psi, e, g));
        const int random_starts =
            std::max(2, cfg.restarts - static_cast<int>(starts.size()));
        for (int k = 0; k < random_starts; ++k) {
            auto rng = std::mt19937_64(
                mix_seed(cfg.seed, 0x1000 * static_cast<std::uint64_t>(e) + k));
            starts.push_back(random_extension_isometry(e * g, r, rng));
        }

        std::vector<double> finals;
        for (size_t k = 0; k < starts.size(); ++k) {
            auto rng = std::mt19937_64(mix_seed(
                cfg.seed, 0x2000 * static_cast<std::uint64_t>(e) + 7919 * k));
            Matrix v = starts[k];
            double value = extension_cmi(prob, v, e);
            value = climb(prob, v, e, value, cfg.max_iterations, rng);
            finals.push_back(value);
            if (!have_best || value < best_value) {
                best_value = value;
                best_v = v;
                best_level = e;
                have_best = true;
            }
        }
        if (e == d_E) {
            for (double f : finals)
                if (std::abs(f - best_value) <= std::max(cfg.tolerance, 1e-9))
                    ++final_level_agreement;
        }
    }

    SquashedBound bound;
    bound.value = std::max(0.0, best_value) / 2.0;
    bound.extension_dim = d_E;
    bound.converged = final_level_agreement >= 2;
    const Matrix v_final = embed_environment(best_v, best_level, d_E, g);
    bound.best_extension = ExtensionCandidate{extension_state(prob, v_final, d_E)};
    return bound;
}

SquashedBound squashed_upper_bound(const DensityOperator& rho, int d_E,
                                   const RoofConfig& cfg,
                                   const std::vector<Ensemble>& flag_seeds) {
    if (rho.subsystem_count() != 2)
        throw std::invalid_argument("two-subsystem overload requires two subsystems");
    return squashed_upper_bound(rho, Bipartition{{0}, {1}}, d_E, cfg, flag_seeds);
}

SquashedMonogamyReport squashed_monogamy_diag(const DensityOperator& rho, int d_E,
                                              const RoofConfig& cfg) {
    validate(rho);
    if (rho.subsystem_count() != 3)
        throw std::invalid_argument("squashed_monogamy_diag requires three subsystems");

    RoofConfig cfg_ab = cfg;
    cfg_ab.seed = mix_seed(cfg.seed, 0xAB);
    RoofConfig cfg_ac = cfg;
    cfg_ac.seed = mix_seed(cfg.seed, 0xAC);

    SquashedMonogamyReport report;
    const SquashedBound lhs =
        squashed_upper_bound(rho, Bipartition{{0}, {1, 2}}, d_E, cfg);
    const SquashedBound ab =
        squashed_upper_bound(partial_trace(rho, {0, 1}), d_E, cfg_ab);
    const SquashedBound ac =
        squashed_upper_bound(partial_trace(rho, {0, 2}), d_E, cfg_ac);
    auto direction = [](const SquashedBound& b) {
        return std::string(b.exact ? "exact" : "upper");
    };
    report.lhs = BoundTerm{"E_sq(A|BC)", lhs.value, direction(lhs)};
    report.rhs_ab = BoundTerm{"E_sq(A|B)", ab.value, direction(ab)};
    report.rhs_ac = BoundTerm{"E_sq(A|C)", ac.value, direction(ac)};
    report.gap = lhs.value - ab.value - ac.value;
    report.consistent_at_bounds = report.gap >= -1e-3;
    // Exact chain-rule split at the best A|BC extension found.
    report.chain = chain_rule_check(lhs.best_extension.state, {0}, {1}, {2}, {3});
    return report;
}

SuperadditivityReport superadditivity_diag(const DensityOperator& rho, int d_E,
                                           const RoofConfig& cfg) {
    validate(rho);
    if (rho.subsystem_count() != 4)
        throw std::invalid_argument("superadditivity_diag requires four subsystems");

    SuperadditivityReport report;
    const SquashedBound joint =
        squashed_upper_bound(rho, Bipartition{{0, 1}, {2, 3}}, d_E, cfg);
    RoofConfig cfg_1 = cfg;
    cfg_1.seed = mix_seed(cfg.seed, 0xB1);
    RoofConfig cfg_2 = cfg;
    cfg_2.seed = mix_seed(cfg.seed, 0xB2);
    const DensityOperator pair_1 = partial_trace(rho, {0, 2});
    const DensityOperator pair_2 = partial_trace(rho, {1, 3});
    const SquashedBound b1 = squashed_upper_bound(pair_1, d_E, cfg_1);
    const SquashedBound b2 = squashed_upper_bound(pair_2, d_E, cfg_2);
    auto direction = [](const SquashedBound& b) {
        return std::string(b.exact ? "exact" : "upper");
    };
    report.joint = BoundTerm{"E_sq(A1A2|B1B2)", joint.value, direction(joint)};
    report.pair_1 = BoundTerm{"E_sq(A1|B1)", b1.value, direction(b1)};
    report.pair_2 = BoundTerm{"E_sq(A2|B2)", b2.value, direction(b2)};
    report.superadditive_at_bounds =
        joint.value >= b1.value + b2.value - 1e-3;

    // Tensor-product subadditivity of the bound itself. The explicit product
    // of the two best extensions is evaluated as a candidate, so the check
    // cannot fail by search misses.
    const DensityOperator product = tensor_product(pair_1, pair_2);
    // product dims order: [A1, B1, A2, B2]
    RoofConfig cfg_p = cfg;
    cfg_p.seed = mix_seed(cfg.seed, 0xB3);
    const SquashedBound searched = squashed_upper_bound(
        product, Bipartition{{0, 2}, {1, 3}}, d_E, cfg_p);

    DensityOperator prod_ext =
        tensor_product(b1.best_extension.state, b2.best_extension.state);
    // [A1, B1, E1, A2, B2, E2] -> [A1, B1, A2, B2, E1, E2]
    prod_ext = permute_subsystems(prod_ext, {0, 1, 3, 4, 2, 5});
    // Fuse the two trailing environments into one register.
    const int e1 = prod_ext.dims[4];
    const int e2 = prod_ext.dims[5];
    prod_ext.dims = {prod_ext.dims[0], prod_ext.dims[1], prod_ext.dims[2],
                     prod_ext.dims[3], e1 * e2};
    report.product_extension_value =
        cmi(prod_ext, {0, 2}, {1, 3}, {4}) / 2.0;
    report.product_bound = std::min(searched.value, report.product_extension_value);
    report.subadditive =
        report.product_bound <= b1.value + b2.value + 1e-6;
    return report;
}

namespace {

void append_term(std::ostringstream& out, const BoundTerm& term, bool trailing_comma) {
    out << "{\"label\":\"" << term.label << "\",\"value\":" << term.value
        << ",\"direction\":\"" << term.direction << "\"}";
    if (trailing_comma) out << ',';
}

}  // namespace

std::string to_json(const SquashedMonogamyReport& report) {
    std::ostringstream out;
    out.precision(15);
    out << "{\"terms\":[";
    append_term(out, report.lhs, true);
    append_term(out, report.rhs_ab, true);
    append_term(out, report.rhs_ac, false);
    out << "],\"gap\":" << report.gap << ",\"consistent_at_bounds\":"
        << (report.consistent_at_bounds ? "true" : "false")
        << ",\"chain\":{\"lhs\":" << report.chain.lhs << ",\"rhs\":"
        << report.chain.rhs << ",\"residue\":" << report.chain.residue << "}}";
    return out.str();
}

std::string to_json(const SuperadditivityReport& report) {
    std::ostringstream out;
    out.precision(15);
    out << "{\"terms\":[";
    append_term(out, report.joint, true);
    append_term(out, report.pair_1, true);
    append_term(out, report.pair_2, false);
    out << "],\"superadditive_at_bounds\":"
        << (report.superadditive_at_bounds ? "true" : "false")
        << ",\"product_bound\":" << report.product_bound
        << ",\"product_extension_value\":" << report.product_extension_value
        << ",\"subadditive\":" << (report.subadditive ? "true" : "false") << "}";
    return out.str();
}

}  // namespace entkit
