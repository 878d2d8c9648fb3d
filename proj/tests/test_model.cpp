#include "qregress/errors.hpp"
#include "qregress/model.hpp"
#include "qregress/random.hpp"

#include "test_support.hpp"

using namespace qregress;

TEST_CASE("validate_model") {
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
    lower(0, 1) = 1.0;
    CHECK_NOTHROW(validate_model(zero, lower));

    CHECK_THROWS_AS(validate_model(lower, lower), ValidationError);
    CHECK_THROWS_AS(validate_model(zero, ComplexMatrix::Zero(3, 3)), DimensionError);
    CHECK_THROWS_AS(validate_model(ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1)), DimensionError);
    CHECK_THROWS_AS(validate_model(ComplexMatrix::Zero(2, 3), lower), DimensionError);

    // Relative Hermiticity tolerance: a 1e-12 defect on a large H is accepted,
    // 1e-8 is not.
    ComplexMatrix h = ComplexMatrix::Identity(2, 2) * 100.0;
    h(0, 1) = 1e-12;
    CHECK_NOTHROW(validate_model(h, lower));
    h(0, 1) = 1e-6;
    CHECK_THROWS_AS(validate_model(h, lower), ValidationError);
}

TEST_CASE("DensityOperator invariants") {
    CHECK_NOTHROW(DensityOperator(0.5 * ComplexMatrix::Identity(2, 2)));
    CHECK_THROWS_AS(DensityOperator(ComplexMatrix::Identity(2, 2)), ValidationError);
    ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator{negative}, ValidationError);
    ComplexMatrix skew = 0.5 * ComplexMatrix::Identity(2, 2);
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityOperator{skew}, ValidationError);

    Eigen::VectorXcd psi(2);
    psi << 3.0, Complex(0.0, 4.0);
    const DensityOperator pure = DensityOperator::pure(psi);
    CHECK(std::abs(pure.matrix().trace() - 1.0) <= 1e-15);
    CHECK(std::abs(pure.matrix()(1, 1) - 0.64) <= 1e-15);
}

TEST_CASE("lindblad_heisenberg on the decaying atom") {
    const double gamma = 1.0;
    const SystemModel atom_model = atom::decay_model(gamma);
    CHECK_MATRIX_NEAR(lindblad_heisenberg(atom_model, atom::identity()), ComplexMatrix::Zero(2, 2), 0.0);
    CHECK_MATRIX_NEAR(lindblad_heisenberg(atom_model, atom::number()), -gamma * atom::number(), 1e-15);
    CHECK_MATRIX_NEAR(lindblad_heisenberg(atom_model, atom::sigma_plus()), -0.5 * gamma * atom::sigma_plus(), 1e-15);

    // γ = 2.5 scales linearly.
    const SystemModel fast = atom::decay_model(2.5);
    CHECK_MATRIX_NEAR(lindblad_heisenberg(fast, atom::number()), -2.5 * atom::number(), 1e-14);
    CHECK_THROWS_AS(lindblad_heisenberg(atom_model, ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("lindblad_schrodinger on the decaying atom") {
    const SystemModel atom_model = atom::decay_model(1.0);
    const ComplexMatrix ground = matrix_unit(2, 0, 0);
    const ComplexMatrix excited = matrix_unit(2, 1, 1);
    CHECK_MATRIX_NEAR(lindblad_schrodinger(atom_model, ground), ComplexMatrix::Zero(2, 2), 0.0);
    CHECK_MATRIX_NEAR(lindblad_schrodinger(atom_model, excited), ground - excited, 1e-15);

    const SystemModel closed(ComplexMatrix::Zero(3, 3), ComplexMatrix::Zero(3, 3));
    RandomSource rng(4);
    CHECK_MATRIX_NEAR(lindblad_schrodinger(closed, rng.matrix(3, 3)), ComplexMatrix::Zero(3, 3), 0.0);
    CHECK_THROWS_AS(lindblad_schrodinger(atom_model, ComplexMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("generator properties on random models") {
    RandomSource rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        const SystemModel model = rng.model(d);
        const ComplexMatrix x = rng.matrix(d, d);
        const ComplexMatrix y = rng.matrix(d, d);
        CHECK(std::abs((y * lindblad_heisenberg(model, x)).trace() -
                       (lindblad_schrodinger(model, y) * x).trace()) <= 1e-11);
        CHECK(std::abs(lindblad_schrodinger(model, x).trace()) <= 1e-11);

        const ComplexMatrix h = rng.hermitian(d);
        CHECK(hermiticity_defect(lindblad_heisenberg(model, h)) <= 1e-11);
        CHECK(hermiticity_defect(lindblad_schrodinger(model, h)) <= 1e-11);

        const auto n = static_cast<Eigen::Index>(d);
        CHECK(lindblad_heisenberg(model, ComplexMatrix::Identity(n, n)).norm() <= 1e-12);
    }
}
