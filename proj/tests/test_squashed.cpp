#include "entkit/squashed.hpp"

#include "entkit/entropy.hpp"
#include "entkit/qcore.hpp"
#include "entkit/roof.hpp"
#include "entkit/states.hpp"
#include "entkit/tangle.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace entkit;
using entkit::test::max_abs_diff;

namespace {

RoofConfig seeded(std::uint64_t seed) {
    RoofConfig cfg;
    cfg.seed = seed;
    return cfg;
}

// sum_l p_l sigmaA_l (x) sigmaB_l (x) |l><l|
DensityOperator classical_flag_state() {
    const auto a0 = ginibre_random_density({2}, 1, 1);
    const auto b0 = ginibre_random_density({2}, 2, 2);
    const auto a1 = ginibre_random_density({2}, 2, 3);
    const auto b1 = ginibre_random_density({2}, 1, 4);
    const auto f0 = projector(basis_state({2}, {0}));
    const auto f1 = projector(basis_state({2}, {1}));
    const auto term0 = tensor_product(tensor_product(a0, b0), f0);
    const auto term1 = tensor_product(tensor_product(a1, b1), f1);
    return DensityOperator{{2, 2, 2},
                           Matrix(0.3 * term0.matrix + 0.7 * term1.matrix)};
}

DensityOperator diagonal_pair() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return DensityOperator{{2, 2}, m};
}

}  // namespace

TEST_CASE("cmi of a pure pair decoupled from the environment") {
    const auto rho_e = ginibre_random_density({2}, 2, 11);
    const auto state = tensor_product(projector(bell(BellKind::PhiPlus)), rho_e);
    CHECK(cmi(state, {0}, {1}, {2}) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("cmi vanishes on classical flags and on products") {
    CHECK(cmi(classical_flag_state(), {0}, {1}, {2}) ==
          doctest::Approx(0.0).epsilon(1e-9));

    const auto a = ginibre_random_density({2}, 2, 21);
    const auto b = ginibre_random_density({2}, 2, 22);
    const auto e = ginibre_random_density({2}, 2, 23);
    const auto product = tensor_product(tensor_product(a, b), e);
    CHECK(cmi(product, {0}, {1}, {2}) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("cmi accepts an empty conditioner and rejects bad partitions") {
    const auto product = tensor_product(ginibre_random_density({2}, 2, 25),
                                        ginibre_random_density({2}, 2, 26));
    CHECK(cmi(product, {0}, {1}, {}) == doctest::Approx(0.0).epsilon(1e-9));

    const auto tri = ginibre_random_density({2, 2, 2}, 4, 27);
    CHECK_THROWS_AS(cmi(tri, {0}, {0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(cmi(tri, {0}, {1}, {}), std::invalid_argument);  // 2 unused
    CHECK_THROWS_AS(cmi(tri, {}, {1}, {0, 2}), std::invalid_argument);
}

TEST_CASE("strong subadditivity holds numerically on random tripartite states") {
    for (int i = 0; i < 50; ++i) {
        const auto rho = ginibre_random_density({2, 2, 2}, 1 + i % 8, 3000 + i);
        CHECK(cmi(rho, {0}, {1}, {2}) >= 0.0);  // clipped at -1e-9
    }
}

TEST_CASE("chain rule is an exact identity") {
    for (int i = 0; i < 20; ++i) {
        const auto rho = ginibre_random_density({2, 2, 2, 2}, 5, 4000 + i);
        const auto result = chain_rule_check(rho, {0}, {1}, {2}, {3});
        CHECK(result.residue <= 1e-9);
    }
    CHECK(chain_rule_check(projector(ghz(4)), {0}, {1}, {2}, {3}).residue <= 1e-9);

    const auto product = tensor_product(
        tensor_product(ginibre_random_density({2}, 2, 1),
                       ginibre_random_density({2}, 2, 2)),
        tensor_product(ginibre_random_density({2}, 2, 3),
                       ginibre_random_density({2}, 2, 4)));
    const auto result = chain_rule_check(product, {0}, {1}, {2}, {3});
    CHECK(result.lhs == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(result.rhs == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("extension candidates are validated against their base") {
    const auto base = diagonal_pair();
    const auto flag = classical_flag_state();  // wrong base
    CHECK_THROWS_AS(validate_extension(ExtensionCandidate{flag}, base),
                    std::invalid_argument);

    const auto bound = squashed_upper_bound(base, 2, seeded(31));
    validate_extension(bound.best_extension, base);  // must not throw
}

TEST_CASE("squashed bound on a Bell pair is exactly one") {
    const auto bound =
        squashed_upper_bound(projector(bell(BellKind::PsiPlus)), 4, seeded(41));
    CHECK(bound.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(bound.converged);
    CHECK(bound.exact);  // pure input: every extension is a product
    CHECK(bound.extension_dim == 4);
}

TEST_CASE("separable diagonal pair squashes to zero at dE = 2") {
    const auto bound = squashed_upper_bound(diagonal_pair(), 2, seeded(42));
    CHECK(bound.value <= 1e-3);
}

TEST_CASE("an explicit flag-seed ensemble pins the separable case at zero") {
    Ensemble seed;
    seed.members.push_back({0.5, basis_state({2, 2}, {0, 0})});
    seed.members.push_back({0.5, basis_state({2, 2}, {1, 1})});
    const auto bound = squashed_upper_bound(diagonal_pair(), 2, seeded(43), {seed});
    CHECK(bound.value <= 1e-9);
}

TEST_CASE("product states squash to zero with a trivial environment") {
    const auto product = tensor_product(ginibre_random_density({2}, 2, 51),
                                        ginibre_random_density({2}, 2, 52));
    const auto bound = squashed_upper_bound(product, 1, seeded(53));
    CHECK(bound.value <= 1e-6);
}

TEST_CASE("pure inputs reproduce the reduced entropy exactly") {
    for (int i = 0; i < 5; ++i) {
        const PureState psi = haar_random_pure({2, 2}, 6000 + i);
        const auto bound = squashed_upper_bound(projector(psi), 3, seeded(60 + i));
        const double expected = von_neumann(reduced_state(psi, {0}));
        CHECK(std::abs(bound.value - expected) <= 1e-6);
    }
}

TEST_CASE("enlarging the environment never worsens the bound") {
    const auto rho = ginibre_random_density({2, 2}, 3, 7001);
    double previous = 1e9;
    for (int e = 1; e <= 4; ++e) {
        const auto bound = squashed_upper_bound(rho, e, seeded(70));
        CHECK(bound.value <= previous + 1e-9);
        previous = bound.value;
    }
}

TEST_CASE("squashed bound stays below the entanglement of formation") {
    for (int i = 0; i < 50; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 8000 + i);
        const auto bound = squashed_upper_bound(rho, 4, seeded(8100 + i));
        CHECK(bound.value <= eof_two_qubit(rho) + 1e-3);
    }
}

TEST_CASE("squashed monogamy diagnostic on GHZ") {
    const auto report = squashed_monogamy_diag(projector(ghz(3)), 2, seeded(91));
    CHECK(report.lhs.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.rhs_ab.value <= 1e-3);
    CHECK(report.rhs_ac.value <= 1e-3);
    CHECK(report.consistent_at_bounds);
    CHECK(report.chain.residue <= 1e-9);
    CHECK(report.lhs.direction == "exact");  // A|BC cut of a pure state
    CHECK(report.rhs_ab.direction == "upper");
}

TEST_CASE("squashed monogamy diagnostic on the singlet with a spectator") {
    const auto state = tensor_product(bell(BellKind::PsiMinus),
                                      basis_state({2}, {0}));
    const auto report = squashed_monogamy_diag(projector(state), 2, seeded(92));
    CHECK(report.lhs.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.rhs_ac.value <= 1e-6);
    CHECK(report.consistent_at_bounds);
}

TEST_CASE("squashed monogamy diagnostic on a fully product state") {
    const auto product = tensor_product(
        tensor_product(projector(basis_state({2}, {0})),
                       projector(basis_state({2}, {1}))),
        projector(basis_state({2}, {0})));
    const auto report = squashed_monogamy_diag(product, 2, seeded(93));
    CHECK(report.lhs.value <= 1e-6);
    CHECK(report.rhs_ab.value <= 1e-6);
    CHECK(report.rhs_ac.value <= 1e-6);
    CHECK_THROWS_AS(squashed_monogamy_diag(diagonal_pair(), 2, seeded(1)),
                    std::invalid_argument);
}

TEST_CASE("superadditivity diagnostic on two Bell pairs") {
    const auto two_pairs =
        tensor_product(bell(BellKind::PhiPlus), bell(BellKind::PhiPlus));
    // Reorder [A1 B1 A2 B2] -> [A1 A2 B1 B2].
    const auto state = permute_subsystems(projector(two_pairs), {0, 2, 1, 3});
    const auto report = superadditivity_diag(state, 2, seeded(95));
    CHECK(report.joint.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(report.pair_1.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.pair_2.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.superadditive_at_bounds);
    CHECK(report.subadditive);
    CHECK(report.product_bound == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("superadditivity diagnostic on separable pairs") {
    const auto pair = diagonal_pair();  // separable two-qubit state
    const auto state = permute_subsystems(tensor_product(pair, pair), {0, 2, 1, 3});
    const auto report = superadditivity_diag(state, 2, seeded(96));
    CHECK(report.pair_1.value <= 1e-3);
    CHECK(report.pair_2.value <= 1e-3);
    CHECK(report.product_bound <= report.pair_1.value + report.pair_2.value + 1e-6);
    CHECK(report.subadditive);
}

TEST_CASE("superadditivity diagnostic on a fully product pure state") {
    const auto state = projector(basis_state({2, 2, 2, 2}, {0, 1, 0, 1}));
    const auto report = superadditivity_diag(state, 2, seeded(97));
    CHECK(report.joint.value <= 1e-6);
    CHECK(report.pair_1.value <= 1e-6);
    CHECK(report.pair_2.value <= 1e-6);
    CHECK_THROWS_AS(superadditivity_diag(projector(ghz(3)), 2, seeded(1)),
                    std::invalid_argument);
}

TEST_CASE("diagnostic reports serialize with bound directions") {
    const auto report = squashed_monogamy_diag(projector(ghz(3)), 1, seeded(98));
    const std::string json = to_json(report);
    CHECK(json.find("\"direction\":\"upper\"") != std::string::npos);
    CHECK(json.find("\"chain\"") != std::string::npos);

    const auto state = projector(basis_state({2, 2, 2, 2}, {0, 0, 0, 0}));
    const std::string super_json = to_json(superadditivity_diag(state, 1, seeded(99)));
    CHECK(super_json.find("\"subadditive\":true") != std::string::npos);
}
