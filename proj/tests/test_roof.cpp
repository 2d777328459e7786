#include "entkit/roof.hpp"

#include "entkit/entropy.hpp"
#include "entkit/qcore.hpp"
#include "entkit/states.hpp"
#include "entkit/tangle.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace entkit;
using entkit::test::max_abs_diff;

namespace {

const Bipartition kPairCut{{0}, {1}};

DensityOperator max_mixed_two_qubits() {
    return DensityOperator{{2, 2}, Matrix::Identity(4, 4) / 4.0};
}

// Diagonal mixture of |01> and |10|: separable, yet assisted parties can
// steer it into Bell pairs.
DensityOperator separable_cross() {
    Matrix m = Matrix::Zero(4, 4);
    m(1, 1) = 0.5;
    m(2, 2) = 0.5;
    return DensityOperator{{2, 2}, m};
}

Matrix bell_mix() {
    // Rows hold Bell coefficients over the computational eigenbasis of I/4.
    const double s = 1.0 / std::sqrt(2.0);
    Matrix mix = Matrix::Zero(4, 4);
    mix(0, 0) = s;
    mix(0, 3) = s;  // phi+
    mix(1, 0) = s;
    mix(1, 3) = -s;  // phi-
    mix(2, 1) = s;
    mix(2, 2) = s;  // psi+
    mix(3, 1) = s;
    mix(3, 2) = -s;  // psi-
    return mix;
}

RoofConfig seeded(std::uint64_t seed) {
    RoofConfig cfg;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("identity isometry reproduces the eigendecomposition ensemble") {
    const auto rho = ginibre_random_density({2, 2}, 3, 21);
    const Matrix mix = Matrix::Identity(3, 3);
    const Ensemble e = ensemble_from_isometry(rho, mix);
    REQUIRE(e.members.size() == 3);
    double p_sum = 0.0;
    double previous = 2.0;
    for (const auto& member : e.members) {
        p_sum += member.probability;
        CHECK(member.probability <= previous + 1e-12);  // eigenvalues descending
        previous = member.probability;
    }
    CHECK(p_sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_abs_diff(ensemble_average(e).matrix, rho.matrix) < 1e-8);
}

TEST_CASE("bell isometry turns I/4 into the Bell ensemble") {
    const Ensemble e = ensemble_from_isometry(max_mixed_two_qubits(), bell_mix());
    REQUIRE(e.members.size() == 4);
    for (const auto& member : e.members) {
        CHECK(member.probability == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(pure_tangle(member.state, kPairCut).value ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(average_measure(e, tangle_measure(), kPairCut) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("random isometries rebuild the source state") {
    for (int i = 0; i < 20; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 900 + i);
        const PureState pur = purify(rho);
        const long rank = pur.dims.back();
        const long m = rank + 2;
        const Matrix mix = entkit::test::random_unitary(m, 50 + i).leftCols(rank);
        const Ensemble e = ensemble_from_isometry(rho, mix);
        CHECK(max_abs_diff(ensemble_average(e).matrix, rho.matrix) < 1e-8);
    }
}

TEST_CASE("ensemble_from_isometry rejects bad mixing matrices") {
    const auto rho = ginibre_random_density({2, 2}, 2, 33);
    CHECK_THROWS_AS(ensemble_from_isometry(rho, Matrix::Identity(3, 3)),
                    std::invalid_argument);
    Matrix not_isometric = Matrix::Identity(3, 2);
    not_isometric(0, 1) = 0.5;
    CHECK_THROWS_AS(ensemble_from_isometry(rho, not_isometric),
                    std::invalid_argument);
    CHECK_THROWS_AS(ensemble_from_isometry(rho, Matrix::Identity(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("average measure on computational vs Bell ensembles of I/4") {
    const Ensemble computational =
        ensemble_from_isometry(max_mixed_two_qubits(), Matrix::Identity(4, 4));
    CHECK(average_measure(computational, tangle_measure(), kPairCut) ==
          doctest::Approx(0.0).epsilon(1e-10));

    const Ensemble bells = ensemble_from_isometry(max_mixed_two_qubits(), bell_mix());
    CHECK(average_measure(bells, tangle_measure(), kPairCut) ==
          doctest::Approx(1.0).epsilon(1e-9));

    Ensemble single;
    const PureState psi = haar_random_pure({2, 2}, 77);
    single.members.push_back({1.0, psi});
    CHECK(average_measure(single, tangle_measure(), kPairCut) ==
          doctest::Approx(pure_tangle(psi, kPairCut).value));
}

TEST_CASE("roof of a pure state is the measure itself") {
    const PureState psi = haar_random_pure({2, 2}, 88);
    const auto rho = projector(psi);
    const double expected = pure_tangle(psi, kPairCut).value;
    const auto down = roof_minimize(rho, tangle_measure(), kPairCut, seeded(1));
    const auto up = roof_maximize(rho, tangle_measure(), kPairCut, seeded(2));
    CHECK(down.value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(up.value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(down.converged);
    CHECK(down.witness.members.size() == 1);
}

TEST_CASE("roof minimization matches the analytic two-qubit tangle") {
    for (int i = 0; i < 25; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 1000 + i);
        const double analytic = two_qubit_tangle(rho).value;
        const auto roof = roof_minimize(rho, tangle_measure(), kPairCut,
                                        seeded(2000 + i));
        CHECK(roof.value - analytic <= 1e-3);
        CHECK(roof.value >= analytic - 1e-6);
    }
}

TEST_CASE("roof minimization with pinned cardinality four") {
    RoofConfig cfg;
    cfg.cardinality = 4;
    cfg.restarts = 16;
    for (int i = 0; i < 200; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 3000 + i);
        cfg.seed = 4000 + i;
        const double analytic = two_qubit_tangle(rho).value;
        const auto roof = roof_minimize(rho, tangle_measure(), kPairCut, cfg);
        CHECK(std::abs(roof.value - analytic) <= 1e-3);
    }
}

TEST_CASE("separable cross state minimizes to zero") {
    const auto roof =
        roof_minimize(separable_cross(), tangle_measure(), kPairCut, seeded(5));
    CHECK(roof.value <= 1e-6);
}

TEST_CASE("roof maximization reaches the Bell ensembles") {
    const auto on_mixed =
        roof_maximize(max_mixed_two_qubits(), tangle_measure(), kPairCut, seeded(6));
    CHECK(on_mixed.value >= 1.0 - 1e-3);

    const auto on_cross =
        roof_maximize(separable_cross(), tangle_measure(), kPairCut, seeded(7));
    CHECK(on_cross.value >= 1.0 - 1e-3);

    // The assisted-singlet construction: tr_C of (psi+ |0> + psi- |1>)/sqrt2
    // is separable, yet a helper measuring C steers AB into Bell pairs.
    Vector third = Vector::Zero(2);
    third(0) = 1.0;
    PureState plus_branch = tensor_product(bell(BellKind::PsiPlus),
                                           PureState{{2}, third});
    third(0) = 0.0;
    third(1) = 1.0;
    PureState minus_branch = tensor_product(bell(BellKind::PsiMinus),
                                            PureState{{2}, third});
    const PureState steering{{2, 2, 2},
                             Vector((plus_branch.amplitudes +
                                     minus_branch.amplitudes) /
                                    std::sqrt(2.0))};
    const DensityOperator pair = reduced_state(steering, {0, 1});
    CHECK(max_abs_diff(pair.matrix, separable_cross().matrix) < 1e-12);
    const auto assisted =
        roof_maximize(pair, tangle_measure(), kPairCut, seeded(8));
    CHECK(assisted.value >= 1.0 - 1e-3);
}

TEST_CASE("closed-form eof matches the numeric convex roof of entropy") {
    for (int i = 0; i < 10; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 9100 + i);
        const double closed_form = eof_two_qubit(rho);
        RoofConfig cfg = seeded(9200 + i);
        cfg.cardinality = 4;
        const double numeric =
            roof_minimize(rho, entanglement_entropy_measure(), kPairCut, cfg).value;
        CHECK(std::abs(closed_form - numeric) <= 1e-3);
        CHECK(numeric >= closed_form - 1e-6);  // roof can only overshoot
    }
}

TEST_CASE("witness ensembles reproduce the state and the reported value") {
    for (int i = 0; i < 10; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 5000 + i);
        const auto roof = roof_minimize(rho, tangle_measure(), kPairCut,
                                        seeded(6000 + i));
        CHECK(max_abs_diff(ensemble_average(roof.witness).matrix, rho.matrix) <
              1e-8);
        CHECK(std::abs(average_measure(roof.witness, tangle_measure(), kPairCut) -
                       roof.value) < 1e-12);
    }
}

TEST_CASE("roof sandwich: minimum never exceeds maximum") {
    for (int i = 0; i < 10; ++i) {
        const auto rho = ginibre_random_density({2, 2}, 1 + i % 4, 7000 + i);
        const double lo =
            roof_minimize(rho, tangle_measure(), kPairCut, seeded(100 + i)).value;
        const double hi =
            roof_maximize(rho, tangle_measure(), kPairCut, seeded(100 + i)).value;
        CHECK(lo <= hi + 1e-9);
    }
}

TEST_CASE("roof runs are seed-deterministic") {
    const auto rho = ginibre_random_density({2, 2}, 3, 8080);
    const auto first = roof_minimize(rho, tangle_measure(), kPairCut, seeded(12));
    const auto second = roof_minimize(rho, tangle_measure(), kPairCut, seeded(12));
    CHECK(first.value == second.value);
    const auto third = roof_minimize(rho, tangle_measure(), kPairCut, seeded(13));
    CHECK(first.value == doctest::Approx(third.value).epsilon(1e-3));
}

TEST_CASE("roof rejects a cardinality below the rank") {
    RoofConfig cfg;
    cfg.cardinality = 2;
    cfg.seed = 1;
    const auto rho = ginibre_random_density({2, 2}, 4, 11);
    CHECK_THROWS_AS(roof_minimize(rho, tangle_measure(), kPairCut, cfg),
                    std::invalid_argument);
}

TEST_CASE("assisted entanglement extremes") {
    const auto ghz_pair = reduced_state(ghz(3), {0, 1});
    CHECK(assisted_entanglement(ghz_pair, kPairCut, seeded(17)) ==
          doctest::Approx(1.0).epsilon(1e-3));

    const auto bell_pure = projector(bell(BellKind::PhiPlus));
    CHECK(assisted_entanglement(bell_pure, kPairCut, seeded(18)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    const auto product = projector(basis_state({2, 2}, {1, 0}));
    CHECK(assisted_entanglement(product, kPairCut, seeded(19)) ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("automatic cardinality is rank squared capped at eight") {
    CHECK(default_cardinality(1) == 1);
    CHECK(default_cardinality(2) == 4);
    CHECK(default_cardinality(3) == 8);
    CHECK(default_cardinality(4) == 8);
    CHECK(default_cardinality(16) == 16);  // cap yields to the rank
}
