// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerances and a wall-clock budget.

#include "entkit/entropy.hpp"
#include "entkit/monogamy.hpp"
#include "entkit/qcore.hpp"
#include "entkit/roof.hpp"
#include "entkit/squashed.hpp"
#include "entkit/states.hpp"
#include "entkit/tangle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace entkit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<void(Outcome&)> body;
};

RoofConfig seeded(std::uint64_t seed) {
    RoofConfig cfg;
    cfg.seed = seed;
    return cfg;
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

PureState random_w_class(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    return w_class(Complex(normal(rng), normal(rng)),
                   Complex(normal(rng), normal(rng)),
                   Complex(normal(rng), normal(rng)), /*auto_normalize=*/true);
}

void criterion_ghz_extremality(Outcome& o) {
    const PureState g = ghz(3);
    o.require(std::abs(tau1(g) - 1.0) <= 1e-9, "tau1(ghz3) != 1: " + fmt(tau1(g)));
    o.require(std::abs(tau2(g)) <= 1e-9, "tau2(ghz3) != 0: " + fmt(tau2(g)));
}

void criterion_w_extremality(Outcome& o) {
    const PureState w = w_state(3);
    const DensityOperator rho = projector(w);
    const std::vector<std::vector<int>> pairs{{0, 1}, {1, 2}, {0, 2}};
    for (const auto& pair : pairs) {
        const double t = two_qubit_tangle(partial_trace(rho, pair)).value;
        o.require(std::abs(t - 4.0 / 9.0) <= 1e-9,
                  "pairwise tangle != 4/9: " + fmt(t));
    }
    o.require(std::abs(tau2(w) - 4.0 / 9.0) <= 1e-9, "tau2(w3) != 4/9");
    o.require(std::abs(tau1(w) - 8.0 / 9.0) <= 1e-9, "tau1(w3) != 8/9");
}

void criterion_w_class_saturation(Outcome& o) {
    for (int i = 0; i < 200; ++i) {
        const PureState psi = random_w_class(10000 + i);
        for (int focus = 0; focus < 3; ++focus) {
            const auto report = ckw_check_pure(psi, focus);
            o.require(std::abs(report.residual) <= 1e-7,
                      "w-class residual at sample " + std::to_string(i) +
                          " focus " + std::to_string(focus) + ": " +
                          fmt(report.residual));
        }
    }
}

void criterion_ckw_sweep(Outcome& o) {
    for (int i = 0; i < 1000; ++i) {
        const PureState psi = haar_random_pure({2, 2, 2}, 20000 + i);
        for (int focus = 0; focus < 3; ++focus) {
            const double residual = ckw_check_pure(psi, focus).residual;
            o.require(residual >= -1e-8, "residual below -1e-8 at sample " +
                                             std::to_string(i) + ": " +
                                             fmt(residual));
        }
        const double t1 = tau1(psi);
        const double t2 = tau2(psi);
        o.require(t1 >= 2.0 * t2 - 1e-8,
                  "tau1 < 2 tau2 at sample " + std::to_string(i));
    }
}

void criterion_roof_vs_oracle(Outcome& o) {
    for (int i = 0; i < 200; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 30000 + i);
        const double analytic = two_qubit_tangle(rho).value;
        const double roof =
            roof_minimize(rho, tangle_measure(), {{0}, {1}}, seeded(31000 + i))
                .value;
        o.require(std::abs(roof - analytic) <= 1e-3,
                  "roof-oracle gap at sample " + std::to_string(i) + ": " +
                      fmt(roof - analytic));
        o.require(roof >= analytic - 1e-6,
                  "roof undershoots the oracle at sample " + std::to_string(i));
    }
}

void criterion_assistance_extremes(Outcome& o) {
    const DensityOperator max_mixed{{2, 2}, Matrix::Identity(4, 4) / 4.0};
    const double up_mixed =
        roof_maximize(max_mixed, tangle_measure(), {{0}, {1}}, seeded(41)).value;
    o.require(up_mixed >= 1.0 - 1e-3, "assisted tangle of I/4: " + fmt(up_mixed));

    Matrix cross = Matrix::Zero(4, 4);
    cross(1, 1) = 0.5;
    cross(2, 2) = 0.5;
    const DensityOperator rho_cross{{2, 2}, cross};
    const double up_cross =
        roof_maximize(rho_cross, tangle_measure(), {{0}, {1}}, seeded(42)).value;
    o.require(up_cross >= 1.0 - 1e-3,
              "assisted tangle of the 01/10 mixture: " + fmt(up_cross));
    const double down_cross =
        roof_minimize(rho_cross, tangle_measure(), {{0}, {1}}, seeded(43)).value;
    o.require(down_cross <= 1e-6, "tangle of the separable mixture: " +
                                      fmt(down_cross));
}

void criterion_w4_saturation(Outcome& o) {
    const auto report = n_qubit_monogamy(w_state(4), 0, seeded(44));
    o.require(std::abs(report.lhs - 0.75) <= 1e-9, "w4 lhs != 3/4");
    o.require(std::abs(sum_rhs(report) - 0.75) <= 1e-9, "w4 rhs sum != 3/4");
    o.require(std::abs(report.residual) <= 1e-8,
              "w4 residual: " + fmt(report.residual));
}

void criterion_polygamy(Outcome& o) {
    const auto tangle_ghz = polygamy_tangle(ghz(3), 0, seeded(45));
    o.require(tangle_ghz.satisfied, "polygamy_tangle(ghz) not satisfied");
    o.require(std::abs(tangle_ghz.lhs - 1.0) <= 1e-9, "ghz lhs != 1");
    for (double term : tangle_ghz.rhs_terms)
        o.require(term >= 1.0 - 1e-3, "ghz assisted term short of 1: " + fmt(term));

    const auto tangle_w = polygamy_tangle(w_state(3), 0, seeded(46));
    o.require(tangle_w.satisfied, "polygamy_tangle(w) not satisfied");
    o.require(std::abs(tangle_w.lhs - 8.0 / 9.0) <= 1e-9, "w lhs != 8/9");

    const auto vn_ghz = polygamy_vn(ghz(3), seeded(47));
    o.require(vn_ghz.satisfied, "polygamy_vn(ghz) not satisfied");
    o.require(std::abs(vn_ghz.lhs - 1.0) <= 1e-9, "vn ghz lhs != 1");
    for (double term : vn_ghz.rhs_terms)
        o.require(term >= 1.0 - 1e-3, "vn ghz term short of 1");

    const auto vn_w = polygamy_vn(w_state(3), seeded(48));
    o.require(vn_w.satisfied, "polygamy_vn(w) not satisfied");
    o.require(std::abs(vn_w.lhs - 0.9183) <= 1e-4,
              "vn w lhs != h(1/3): " + fmt(vn_w.lhs));
}

void criterion_squashed(Outcome& o) {
    const auto bell_bound =
        squashed_upper_bound(projector(bell(BellKind::PsiPlus)), 4, seeded(49));
    o.require(std::abs(bell_bound.value - 1.0) <= 1e-6,
              "bell squashed bound: " + fmt(bell_bound.value));

    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = 0.5;
    diag(3, 3) = 0.5;
    const auto flag_bound =
        squashed_upper_bound(DensityOperator{{2, 2}, diag}, 2, seeded(50));
    o.require(flag_bound.value <= 1e-3,
              "separable flag bound: " + fmt(flag_bound.value));

    Matrix cross = Matrix::Zero(4, 4);
    cross(1, 1) = 0.5;
    cross(2, 2) = 0.5;
    const auto cross_bound =
        squashed_upper_bound(DensityOperator{{2, 2}, cross}, 2, seeded(51));
    o.require(cross_bound.value <= 1e-3,
              "separable cross bound: " + fmt(cross_bound.value));

    for (int i = 0; i < 50; ++i) {
        const auto rho = ginibre_random_density({2, 2, 2, 2}, 4 + i % 5, 52000 + i);
        const double residue = chain_rule_check(rho, {0}, {1}, {2}, {3}).residue;
        o.require(residue <= 1e-9,
                  "chain residue at sample " + std::to_string(i) + ": " +
                      fmt(residue));
    }
    for (int i = 0; i < 200; ++i) {
        const auto rho = ginibre_random_density({2, 2, 2}, 1 + i % 8, 53000 + i);
        const double value = cmi(rho, {0}, {1}, {2});
        o.require(value >= 0.0, "cmi negative at sample " + std::to_string(i));
    }
}

void criterion_violation_search(Outcome& o) {
    const auto qubits = violation_search({2, 2, 2}, 500, seeded(54), 54);
    o.require(qubits.candidates.empty(),
              "qubit search produced " + std::to_string(qubits.candidates.size()) +
                  " candidates");
    o.require(qubits.samples_run == 500, "qubit search sample count mismatch");

    // Report mechanics on qutrits: the injected antisymmetric trial must be
    // screened, refined and either kept or discarded by the refinement pass.
    const auto qutrits = violation_search({3, 3, 3}, 2, seeded(55), 55);
    o.require(qutrits.screened >= 1, "no qutrit report crossed the threshold");
    o.require(qutrits.screened ==
                  qutrits.discarded + static_cast<int>(qutrits.candidates.size()),
              "screened != discarded + survivors");
    for (const auto& candidate : qutrits.candidates)
        o.require(candidate.refined, "candidate kept without the refinement flag");
    bool antisymmetric_found = false;
    for (const auto& candidate : qutrits.candidates)
        if (candidate.state_seed == 0 &&
            std::abs(candidate.report.residual + 2.0 / 3.0) <= 1e-3)
            antisymmetric_found = true;
    o.require(antisymmetric_found,
              "antisymmetric trial did not survive with residual -2/3");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "ghz-extremality", 1.0, criterion_ghz_extremality},
        {2, "w-extremality", 1.0, criterion_w_extremality},
        {3, "w-class-saturation", 10.0, criterion_w_class_saturation},
        {4, "ckw-property-sweep", 60.0, criterion_ckw_sweep},
        {5, "roof-vs-oracle", 300.0, criterion_roof_vs_oracle},
        {6, "assistance-extremes", 30.0, criterion_assistance_extremes},
        {7, "four-qubit-w-saturation", 1.0, criterion_w4_saturation},
        {8, "polygamy-ghz-w", 60.0, criterion_polygamy},
        {9, "squashed-desk-scale", 300.0, criterion_squashed},
        {10, "violation-search", 600.0, criterion_violation_search},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        criterion.body(outcome);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        outcome.require(elapsed < criterion.budget_seconds,
                        "runtime " + std::to_string(elapsed) + " s over budget");
        std::printf("%s  %2d  %-24s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), elapsed);
        if (!outcome.pass) {
            std::printf("      -> %s\n", outcome.detail.c_str());
            ++failures;
        }
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
