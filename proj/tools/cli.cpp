#include "cli.hpp"

#include "entkit/entropy.hpp"
#include "entkit/monogamy.hpp"
#include "entkit/qcore.hpp"
#include "entkit/roof.hpp"
#include "entkit/squashed.hpp"
#include "entkit/state_io.hpp"
#include "entkit/states.hpp"
#include "entkit/tangle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace entkit::cli {

namespace {

// Domain failures surface with exit code 1; CLI11 handles usage (exit 2).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed twelve decimals where that still carries >= 12 significant digits,
// scientific otherwise.
std::string format_number(double x) {
    char buf[64];
    const double ax = std::abs(x);
    if (x == 0.0 || (ax >= 0.1 && ax < 1e7))
        std::snprintf(buf, sizeof buf, "%.12f", x);
    else
        std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            size_t pos = 0;
            values.push_back(std::stoi(token, &pos));
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw DomainError(std::string("bad ") + what + " entry '" + token + "'");
        }
    }
    if (values.empty()) throw DomainError(std::string("empty ") + what + " list");
    return values;
}

// Cut sides without the cover requirement; cover is checked by callers that
// need it.
std::pair<std::vector<int>, std::vector<int>> parse_cut_sides(
    const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos)
        throw DomainError("cut must contain '|' separating the two sides");
    return {parse_int_list(text.substr(0, bar), "cut"),
            parse_int_list(text.substr(bar + 1), "cut")};
}

struct RoofFlags {
    int cardinality = 0;
    int restarts = 16;
    int iterations = 2000;
    double tolerance = 1e-6;
    std::uint64_t seed = 0;

    RoofConfig config() const {
        return RoofConfig{cardinality, restarts, iterations, tolerance, seed};
    }
};

void add_roof_options(CLI::App* cmd, RoofFlags& flags, bool seed_required) {
    cmd->add_option("--cardinality", flags.cardinality,
                    "Ensemble cardinality (0 = automatic)");
    cmd->add_option("--restarts", flags.restarts, "Optimizer restarts");
    cmd->add_option("--iterations", flags.iterations, "Iterations per restart");
    cmd->add_option("--tol", flags.tolerance, "Optimizer tolerance");
    auto* seed = cmd->add_option("--seed", flags.seed, "Random seed");
    if (seed_required) seed->required();
}

const DensityOperator& as_density(const StateFile& state, DensityOperator& storage) {
    if (std::holds_alternative<DensityOperator>(state))
        return std::get<DensityOperator>(state);
    storage = projector(std::get<PureState>(state));
    return storage;
}

StateFile load_or_fail(const std::string& path) {
    try {
        return load_state(path);
    } catch (const std::exception& e) {
        throw DomainError(std::string("invalid state file: ") + e.what());
    }
}

void print_report(std::ostream& out, const MonogamyReport& r) {
    out << "focus " << r.focus << '\n';
    out << "lhs " << format_number(r.lhs) << " [" << r.lhs_method << "]\n";
    for (size_t i = 0; i < r.rhs_terms.size(); ++i)
        out << "rhs[" << (i + 1) << "] " << format_number(r.rhs_terms[i]) << " ["
            << r.rhs_methods[i] << "]\n";
    out << "residual " << format_number(r.residual) << '\n';
    out << "satisfied " << (r.satisfied ? "yes" : "no") << '\n';
    if (r.orientation == ReportOrientation::Polygamy)
        out << "verdict-sound " << (r.verdict_sound ? "yes" : "no") << '\n';
}

// --- state make -----------------------------------------------------------

struct StateMakeArgs {
    std::string spec;
    std::string out_path;
    int n = 3;
    std::string dims_text;
    std::string digits_text;
    int rank = 0;
    bool normalize = false;
    std::optional<std::uint64_t> seed;
};

std::vector<int> digits_from_text(const std::string& text) {
    std::vector<int> digits;
    for (char c : text) {
        if (c == ',') continue;
        if (c < '0' || c > '9') throw DomainError("bad basis digit string");
        digits.push_back(c - '0');
    }
    if (digits.empty()) throw DomainError("empty basis digit string");
    return digits;
}

StateFile build_state(const StateMakeArgs& a) {
    const auto colon = a.spec.find(':');
    const std::string head = a.spec.substr(0, colon);
    const std::string tail =
        colon == std::string::npos ? "" : a.spec.substr(colon + 1);

    if (head == "ghz") return ghz(a.n);
    if (head == "w") return w_state(a.n);
    if (head == "bell") {
        try {
            return bell(parse_bell_label(tail));
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    }
    if (head == "wclass") {
        std::vector<double> amps;
        std::stringstream ss(tail);
        std::string token;
        while (std::getline(ss, token, ','))
            try {
                amps.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw DomainError("bad wclass amplitude '" + token + "'");
            }
        if (amps.size() != 3) throw DomainError("wclass needs three amplitudes a,b,c");
        try {
            return w_class(amps[0], amps[1], amps[2], a.normalize);
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    }
    if (head == "basis") {
        const auto digits = digits_from_text(tail);
        std::vector<int> dims = a.dims_text.empty()
                                    ? std::vector<int>(digits.size(), 2)
                                    : parse_int_list(a.dims_text, "dims");
        try {
            return basis_state(dims, digits);
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    }
    if (head == "haar" || head == "ginibre") {
        if (a.dims_text.empty()) throw DomainError("random states need --dims");
        if (!a.seed) throw DomainError("random states need an explicit --seed");
        const auto dims = parse_int_list(a.dims_text, "dims");
        if (head == "haar") return haar_random_pure(dims, *a.seed);
        const int rank =
            a.rank > 0 ? a.rank : static_cast<int>(total_dimension(dims));
        try {
            return ginibre_random_density(dims, rank, *a.seed);
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    }
    throw DomainError("unknown state spec '" + a.spec + "'");
}

// --- measure ---------------------------------------------------------------

struct MeasureArgs {
    std::string name;
    std::string state_path;
    std::string cut_text;
    std::string entropy_text = "vn";
    std::string keep_text;
    bool reduce = false;
};

// Two-qubit state across the requested (possibly partial) cut; reductions
// demand an explicit --reduce.
DensityOperator pair_for_analytic(const StateFile& state, const MeasureArgs& args) {
    const auto& dims = state_dims(state);
    DensityOperator storage;
    const DensityOperator& rho = as_density(state, storage);

    std::vector<int> keep;
    if (!args.cut_text.empty()) {
        auto [side_a, side_b] = parse_cut_sides(args.cut_text);
        keep = side_a;
        keep.insert(keep.end(), side_b.begin(), side_b.end());
        std::sort(keep.begin(), keep.end());
    } else {
        for (size_t i = 0; i < dims.size(); ++i) keep.push_back(static_cast<int>(i));
    }
    if (keep.size() != dims.size()) {
        if (!args.reduce)
            throw DomainError(
                "cut keeps only part of the state; pass --reduce to trace out "
                "the rest");
        DensityOperator reduced = partial_trace(rho, keep);
        if (reduced.dims != std::vector<int>{2, 2})
            throw DomainError(
                "analytic measures need a two-qubit state after reduction; use "
                "'roof min' for qudit mixed states");
        return reduced;
    }
    if (rho.dims != std::vector<int>{2, 2})
        throw DomainError(
            "analytic measures need a two-qubit state; use 'roof min' for "
            "qudit mixed states");
    return rho;
}

double run_measure(const StateFile& state, const MeasureArgs& args) {
    const auto& dims = state_dims(state);
    const int n = static_cast<int>(dims.size());

    if (args.name == "tangle") {
        if (args.cut_text.empty()) throw DomainError("tangle needs --cut");
        if (std::holds_alternative<PureState>(state)) {
            auto [side_a, side_b] = parse_cut_sides(args.cut_text);
            if (side_a.size() + side_b.size() == dims.size()) {
                try {
                    const Bipartition cut = make_bipartition(side_a, side_b, n);
                    return pure_tangle(std::get<PureState>(state), cut).value;
                } catch (const std::invalid_argument& e) {
                    throw DomainError(e.what());
                }
            }
        }
        return two_qubit_tangle(pair_for_analytic(state, args)).value;
    }
    if (args.name == "concurrence")
        return concurrence(pair_for_analytic(state, args));
    if (args.name == "eof") return eof_two_qubit(pair_for_analytic(state, args));

    if (args.name == "purity" || args.name == "entropy") {
        DensityOperator storage;
        DensityOperator rho = as_density(state, storage);
        if (!args.keep_text.empty())
            rho = partial_trace(rho, parse_int_list(args.keep_text, "keep"));
        if (args.name == "purity") return purity(rho);
        try {
            return evaluate_entropy(rho, parse_entropy_kind(args.entropy_text));
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    }

    if (args.name == "tau1" || args.name == "tau2") {
        if (!std::holds_alternative<PureState>(state))
            throw DomainError(args.name + " is defined for pure three-qubit states");
        try {
            return args.name == "tau1" ? tau1(std::get<PureState>(state))
                                       : tau2(std::get<PureState>(state));
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    }
    throw DomainError("unknown measure '" + args.name + "'");
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::string kind;
    std::string dims_text;
    int samples = 1;
    int rank = 0;
    std::string out_path;
    std::string focus_text = "0";
    RoofFlags roof;
};

void run_sweep(const SweepArgs& args, std::ostream& out) {
    const auto dims = parse_int_list(args.dims_text, "dims");
    if (args.samples < 1) throw DomainError("samples must be >= 1");
    for (int d : dims)
        if (d != 2)
            throw DomainError(
                "sweep checks qubit monogamy; use 'monogamy search' for qudits");
    if (dims.size() < 3) throw DomainError("sweep needs at least three qubits");
    const int n = static_cast<int>(dims.size());

    std::vector<int> foci;
    if (args.focus_text == "all") {
        for (int f = 0; f < n; ++f) foci.push_back(f);
    } else {
        try {
            foci.push_back(std::stoi(args.focus_text));
        } catch (const std::exception&) {
            throw DomainError("bad --focus value '" + args.focus_text + "'");
        }
        if (foci[0] < 0 || foci[0] >= n) throw DomainError("focus out of range");
    }

    const bool three_qubits = n == 3;
    std::vector<SweepRow> rows;
    for (int i = 0; i < args.samples; ++i) {
        const std::uint64_t state_seed =
            mix_seed(args.roof.seed, static_cast<std::uint64_t>(i));
        RoofConfig cfg = args.roof.config();
        cfg.seed = mix_seed(state_seed, 0xC0FFEE);
        if (args.kind == "haar") {
            const PureState psi = haar_random_pure(dims, state_seed);
            for (int focus : foci) {
                SweepRow row;
                row.state_seed = state_seed;
                row.report = n_qubit_monogamy(psi, focus, cfg);
                if (three_qubits) {
                    row.tau1_value = tau1(psi);
                    row.tau2_value = tau2(psi);
                }
                rows.push_back(std::move(row));
            }
        } else if (args.kind == "ginibre") {
            const int rank = args.rank > 0
                                 ? args.rank
                                 : static_cast<int>(total_dimension(dims));
            DensityOperator rho;
            try {
                rho = ginibre_random_density(dims, rank, state_seed);
            } catch (const std::invalid_argument& e) {
                throw DomainError(e.what());
            }
            for (int focus : foci) {
                SweepRow row;
                row.state_seed = state_seed;
                row.report = n_qubit_monogamy(rho, focus, cfg);
                rows.push_back(std::move(row));
            }
        } else {
            throw DomainError("sweep kind must be haar or ginibre");
        }
    }

    if (args.out_path.empty()) {
        write_sweep_csv(out, rows, n - 1);
        return;
    }
    std::ofstream file(args.out_path);
    if (!file) throw DomainError("cannot open '" + args.out_path + "' for writing");
    write_sweep_csv(file, rows, n - 1);
    if (!file.good()) throw DomainError("failed writing '" + args.out_path + "'");
}

// --- app wiring -------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"entanglement measures, monogamy checks and roof optimization"};
    app.require_subcommand(1);

    // state
    auto* state_cmd = app.add_subcommand("state", "Construct and inspect states");
    state_cmd->require_subcommand(1);
    auto make_args = std::make_shared<StateMakeArgs>();
    auto* make_cmd = state_cmd->add_subcommand("make", "Construct a state file");
    make_cmd->add_option("spec", make_args->spec,
                         "ghz | w | bell:psi- | wclass:a,b,c | basis:digits | "
                         "haar | ginibre")
        ->required();
    make_cmd->add_option("--out", make_args->out_path, "Output JSON path")->required();
    make_cmd->add_option("--n", make_args->n, "Party count for ghz/w");
    make_cmd->add_option("--dims", make_args->dims_text, "Subsystem dims, e.g. 2,2,2");
    make_cmd->add_option("--rank", make_args->rank, "Rank for ginibre");
    make_cmd->add_flag("--normalize", make_args->normalize,
                       "Normalize wclass amplitudes");
    std::uint64_t make_seed = 0;
    auto* make_seed_opt = make_cmd->add_option("--seed", make_seed, "Random seed");
    make_cmd->callback([make_args, make_seed_opt, &make_seed] {
        if (make_seed_opt->count()) make_args->seed = make_seed;
        save_state(make_args->out_path, build_state(*make_args));
    });

    auto* info_cmd = state_cmd->add_subcommand("info", "Print state summary");
    auto info_path = std::make_shared<std::string>();
    info_cmd->add_option("--state", *info_path, "State file")->required();
    info_cmd->callback([info_path, &out] {
        const StateFile state = load_or_fail(*info_path);
        const auto& dims = state_dims(state);
        out << "dims";
        for (int d : dims) out << ' ' << d;
        out << '\n';
        out << "kind "
            << (std::holds_alternative<PureState>(state) ? "pure" : "mixed") << '\n';
        DensityOperator storage;
        out << "purity " << format_number(purity(as_density(state, storage))) << '\n';
    });

    // measure
    auto measure_args = std::make_shared<MeasureArgs>();
    auto* measure_cmd = app.add_subcommand("measure", "Evaluate a measure");
    measure_cmd->add_option("name", measure_args->name,
                            "tangle | concurrence | eof | purity | entropy | "
                            "tau1 | tau2")
        ->required();
    measure_cmd->add_option("--state", measure_args->state_path, "State file")
        ->required();
    measure_cmd->add_option("--cut", measure_args->cut_text, "Cut, e.g. 0|1,2");
    measure_cmd->add_option("--entropy", measure_args->entropy_text,
                            "linear | vn | renyi:a | tsallis:q");
    measure_cmd->add_option("--keep", measure_args->keep_text,
                            "Subsystems to keep before entropy/purity");
    measure_cmd->add_flag("--reduce", measure_args->reduce,
                          "Allow tracing out subsystems missing from --cut");
    measure_cmd->callback([measure_args, &out] {
        const StateFile state = load_or_fail(measure_args->state_path);
        out << format_number(run_measure(state, *measure_args)) << '\n';
    });

    // monogamy
    auto* monogamy_cmd = app.add_subcommand("monogamy", "Monogamy inequalities");
    monogamy_cmd->require_subcommand(1);
    auto* ckw_cmd = monogamy_cmd->add_subcommand("ckw", "CKW inequality report");
    auto ckw_path = std::make_shared<std::string>();
    auto ckw_focus = std::make_shared<int>(0);
    auto ckw_flags = std::make_shared<RoofFlags>();
    ckw_cmd->add_option("--state", *ckw_path, "State file")->required();
    ckw_cmd->add_option("--focus", *ckw_focus, "Focus subsystem")->required();
    add_roof_options(ckw_cmd, *ckw_flags, /*seed_required=*/false);
    auto* ckw_seed_opt = ckw_cmd->get_option("--seed");
    ckw_cmd->callback([ckw_path, ckw_focus, ckw_flags, ckw_seed_opt, &out] {
        const StateFile state = load_or_fail(*ckw_path);
        MonogamyReport report;
        try {
            if (std::holds_alternative<PureState>(state)) {
                report = n_qubit_monogamy(std::get<PureState>(state), *ckw_focus,
                                          ckw_flags->config());
            } else {
                if (!ckw_seed_opt->count())
                    throw CLI::RequiredError(
                        "--seed (mixed-state monogamy runs the roof optimizer)");
                report = n_qubit_monogamy(std::get<DensityOperator>(state),
                                          *ckw_focus, ckw_flags->config());
            }
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
        print_report(out, report);
    });

    auto* search_cmd =
        monogamy_cmd->add_subcommand("search", "Randomized violation search");
    auto search_dims = std::make_shared<std::string>();
    auto search_samples = std::make_shared<int>(0);
    auto search_threshold = std::make_shared<double>(1e-3);
    auto search_out = std::make_shared<std::string>();
    auto search_flags = std::make_shared<RoofFlags>();
    search_cmd->add_option("--dims", *search_dims, "Tripartite dims")->required();
    search_cmd->add_option("--samples", *search_samples, "Haar samples")->required();
    search_cmd->add_option("--threshold", *search_threshold, "Residual threshold");
    search_cmd->add_option("--out", *search_out, "Candidate CSV path");
    add_roof_options(search_cmd, *search_flags, /*seed_required=*/true);
    search_cmd->callback([search_dims, search_samples, search_threshold, search_out,
                          search_flags, &out] {
        ViolationSearchResult result;
        try {
            result = violation_search(parse_int_list(*search_dims, "dims"),
                                      *search_samples, search_flags->config(),
                                      search_flags->seed, *search_threshold);
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
        out << "samples " << result.samples_run << '\n';
        out << "screened " << result.screened << '\n';
        out << "discarded " << result.discarded << '\n';
        out << "candidates " << result.candidates.size() << '\n';
        for (const auto& c : result.candidates)
            out << "candidate seed=" << c.state_seed << " focus=" << c.report.focus
                << " residual=" << format_number(c.report.residual)
                << " refined=" << (c.refined ? "yes" : "no") << '\n';
        if (!search_out->empty()) {
            std::vector<SweepRow> rows;
            for (const auto& c : result.candidates)
                rows.push_back(SweepRow{c.state_seed, c.report,
                                        std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN()});
            std::ofstream file(*search_out);
            if (!file)
                throw DomainError("cannot open '" + *search_out + "' for writing");
            write_sweep_csv(file, rows, 2);
        }
    });

    // polygamy
    auto* polygamy_cmd = app.add_subcommand("polygamy", "Polygamy inequalities");
    polygamy_cmd->require_subcommand(1);
    for (const std::string kind : {"tangle", "vn"}) {
        auto* cmd = polygamy_cmd->add_subcommand(
            kind, kind == "tangle" ? "Assisted-tangle dual bound"
                                   : "Assisted-entropy dual bound");
        auto path = std::make_shared<std::string>();
        auto focus = std::make_shared<int>(0);
        auto flags = std::make_shared<RoofFlags>();
        cmd->add_option("--state", *path, "State file (pure)")->required();
        cmd->add_option("--focus", *focus, "Focus subsystem");
        add_roof_options(cmd, *flags, /*seed_required=*/true);
        cmd->callback([kind, path, focus, flags, &out] {
            const StateFile state = load_or_fail(*path);
            if (!std::holds_alternative<PureState>(state))
                throw DomainError("polygamy reports require a pure state");
            const auto& psi = std::get<PureState>(state);
            try {
                print_report(out, kind == "tangle"
                                      ? polygamy_tangle(psi, *focus, flags->config())
                                      : polygamy_vn(psi, flags->config(), *focus));
            } catch (const std::invalid_argument& e) {
                throw DomainError(e.what());
            }
        });
    }

    // squashed
    auto* squashed_cmd = app.add_subcommand("squashed", "Squashed-entanglement bounds");
    squashed_cmd->require_subcommand(1);

    auto* bound_cmd = squashed_cmd->add_subcommand("bound", "Variational upper bound");
    auto bound_path = std::make_shared<std::string>();
    auto bound_cut = std::make_shared<std::string>();
    auto bound_de = std::make_shared<int>(4);
    auto bound_flags = std::make_shared<RoofFlags>();
    bound_cmd->add_option("--state", *bound_path, "State file")->required();
    bound_cmd->add_option("--cut", *bound_cut, "Cut (default 0|1)");
    bound_cmd->add_option("--dE", *bound_de, "Environment dimension");
    add_roof_options(bound_cmd, *bound_flags, /*seed_required=*/true);
    bound_cmd->callback([bound_path, bound_cut, bound_de, bound_flags, &out] {
        const StateFile state = load_or_fail(*bound_path);
        DensityOperator storage;
        const DensityOperator& rho = as_density(state, storage);
        const std::string cut_text = bound_cut->empty() ? "0|1" : *bound_cut;
        SquashedBound bound;
        try {
            const Bipartition cut =
                parse_bipartition(cut_text, rho.subsystem_count());
            bound = squashed_upper_bound(rho, cut, *bound_de, bound_flags->config());
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
        out << "value " << format_number(bound.value) << " ["
            << (bound.exact ? "exact" : "upper") << "]\n";
        out << "extension-dim " << bound.extension_dim << '\n';
        out << "converged " << (bound.converged ? "yes" : "no") << '\n';
    });

    auto* sq_mono_cmd =
        squashed_cmd->add_subcommand("monogamy", "Tripartite monogamy diagnostic");
    auto sqm_path = std::make_shared<std::string>();
    auto sqm_de = std::make_shared<int>(4);
    auto sqm_flags = std::make_shared<RoofFlags>();
    sq_mono_cmd->add_option("--state", *sqm_path, "State file")->required();
    sq_mono_cmd->add_option("--dE", *sqm_de, "Environment dimension");
    add_roof_options(sq_mono_cmd, *sqm_flags, /*seed_required=*/true);
    sq_mono_cmd->callback([sqm_path, sqm_de, sqm_flags, &out] {
        const StateFile state = load_or_fail(*sqm_path);
        DensityOperator storage;
        const DensityOperator& rho = as_density(state, storage);
        try {
            out << to_json(squashed_monogamy_diag(rho, *sqm_de, sqm_flags->config()))
                << '\n';
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    });

    auto* sq_super_cmd = squashed_cmd->add_subcommand(
        "superadditivity", "Four-party strong-superadditivity diagnostic");
    auto sqs_path = std::make_shared<std::string>();
    auto sqs_de = std::make_shared<int>(2);
    auto sqs_flags = std::make_shared<RoofFlags>();
    sq_super_cmd->add_option("--state", *sqs_path, "State file (A1,A2,B1,B2)")
        ->required();
    sq_super_cmd->add_option("--dE", *sqs_de, "Environment dimension");
    add_roof_options(sq_super_cmd, *sqs_flags, /*seed_required=*/true);
    sq_super_cmd->callback([sqs_path, sqs_de, sqs_flags, &out] {
        const StateFile state = load_or_fail(*sqs_path);
        DensityOperator storage;
        const DensityOperator& rho = as_density(state, storage);
        try {
            out << to_json(superadditivity_diag(rho, *sqs_de, sqs_flags->config()))
                << '\n';
        } catch (const std::invalid_argument& e) {
            throw DomainError(e.what());
        }
    });

    // sweep
    auto sweep_args = std::make_shared<SweepArgs>();
    auto* sweep_cmd = app.add_subcommand("sweep", "Random-state monogamy sweep");
    sweep_cmd->add_option("kind", sweep_args->kind, "haar | ginibre")->required();
    sweep_cmd->add_option("--dims", sweep_args->dims_text, "Qubit dims")->required();
    sweep_cmd->add_option("--samples", sweep_args->samples, "Sample count")
        ->required();
    sweep_cmd->add_option("--rank", sweep_args->rank, "Ginibre rank");
    sweep_cmd->add_option("--out", sweep_args->out_path, "CSV path");
    sweep_cmd->add_option("--focus", sweep_args->focus_text,
                          "Focus index or 'all' (rows become samples x n)");
    add_roof_options(sweep_cmd, sweep_args->roof, /*seed_required=*/true);
    sweep_cmd->callback([sweep_args, &out] { run_sweep(*sweep_args, out); });

    // roof
    auto* roof_cmd = app.add_subcommand("roof", "Roof optimization");
    roof_cmd->require_subcommand(1);
    for (const std::string direction : {"min", "max"}) {
        auto* cmd = roof_cmd->add_subcommand(
            direction, direction == "min" ? "Convex-roof minimization"
                                          : "Roof maximization (assistance)");
        auto path = std::make_shared<std::string>();
        auto cut_text = std::make_shared<std::string>();
        auto measure_name = std::make_shared<std::string>("tangle");
        auto ensemble_path = std::make_shared<std::string>();
        auto flags = std::make_shared<RoofFlags>();
        cmd->add_option("--state", *path, "State file")->required();
        cmd->add_option("--cut", *cut_text, "Cut, e.g. 0|1")->required();
        cmd->add_option("--measure", *measure_name, "tangle | vn");
        cmd->add_option("--ensemble", *ensemble_path, "Witness ensemble JSON path");
        add_roof_options(cmd, *flags, /*seed_required=*/true);
        cmd->callback([direction, path, cut_text, measure_name, ensemble_path,
                       flags, &out] {
            const StateFile state = load_or_fail(*path);
            DensityOperator storage;
            const DensityOperator& rho = as_density(state, storage);
            PureMeasure mu;
            if (*measure_name == "tangle") mu = tangle_measure();
            else if (*measure_name == "vn") mu = entanglement_entropy_measure();
            else throw DomainError("unknown measure '" + *measure_name + "'");
            RoofResult result;
            try {
                const Bipartition cut =
                    parse_bipartition(*cut_text, rho.subsystem_count());
                result = direction == "min"
                             ? roof_minimize(rho, mu, cut, flags->config())
                             : roof_maximize(rho, mu, cut, flags->config());
            } catch (const std::invalid_argument& e) {
                throw DomainError(e.what());
            }
            out << "value " << format_number(result.value) << " ["
                << (direction == "min" ? "upper" : "lower") << "]\n";
            out << "converged " << (result.converged ? "yes" : "no") << '\n';
            if (!ensemble_path->empty()) save_ensemble(*ensemble_path, result.witness);
        });
    }

    // CLI11 wants argv-style tokens.
    std::vector<const char*> argv;
    argv.push_back("entkit");
    for (const auto& token : args) argv.push_back(token.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace entkit::cli
