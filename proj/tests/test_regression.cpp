#include "qregress/errors.hpp"
#include "qregress/random.hpp"
#include "qregress/regression.hpp"

#include "test_support.hpp"

#include <cmath>

using namespace qregress;

namespace {

// Test-only oracle: the Schrödinger recursion with Z* integrated by classic
// RK4 on the generator formula, never touching mat_exp or the superoperator
// matrices.
ComplexMatrix rk4_propagate(const SystemModel& model, ComplexMatrix sigma, double duration) {
    if (duration == 0.0) return sigma;
    const int steps = std::max(1, static_cast<int>(std::ceil(duration / 1e-3)));
    const double h = duration / steps;
    for (int k = 0; k < steps; ++k) {
        const ComplexMatrix k1 = lindblad_schrodinger(model, sigma);
        const ComplexMatrix k2 = lindblad_schrodinger(model, sigma + 0.5 * h * k1);
        const ComplexMatrix k3 = lindblad_schrodinger(model, sigma + 0.5 * h * k2);
        const ComplexMatrix k4 = lindblad_schrodinger(model, sigma + h * k3);
        sigma += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return sigma;
}

Complex rk4_kernel(const SystemModel& model, const DensityOperator& rho, const CorrelationQuery& q) {
    const auto& t = q.times();
    ComplexMatrix sigma = rk4_propagate(model, rho.matrix(), t[0]);
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        sigma = rk4_propagate(model, q.b_ops()[k] * sigma * q.a_ops()[k].adjoint(), t[k + 1] - t[k]);
    }
    return (q.b_ops().back() * sigma * q.a_ops().back().adjoint()).trace();
}

const double kDipole = std::exp(-0.75);  // e^{-γ t1} e^{-γ (t2 - t1)/2}, γ = 1, t = (0.5, 1)

}  // namespace

TEST_CASE("CorrelationQuery validation") {
    const ComplexMatrix i2 = atom::identity();
    CHECK_THROWS_AS(CorrelationQuery({}, {}, {}), ValidationError);
    CHECK_THROWS_AS(CorrelationQuery({0.1, 0.2}, {i2}, {i2, i2}), DimensionError);
    CHECK_THROWS_AS(CorrelationQuery({-0.1}, {i2}, {i2}), ValidationError);
    CHECK_THROWS_AS(CorrelationQuery({0.1, 0.2}, {i2, ComplexMatrix::Identity(3, 3)}, {i2, i2}), DimensionError);

    const CorrelationQuery unordered({0.5, 0.2}, {i2, i2}, {i2, i2});
    CHECK_FALSE(unordered.is_time_ordered());
    CHECK_THROWS_AS(unordered.require_time_ordered(), TimeOrderError);
    const CorrelationQuery tied({0.5, 0.5}, {i2, i2}, {i2, i2});
    CHECK(tied.is_time_ordered());
}

TEST_CASE("kernel values on the decaying atom") {
    const SystemModel model = atom::decay_model(1.0);
    const DensityOperator excited = DensityOperator::basis_state(2, 1);
    const ComplexMatrix i2 = atom::identity();

    RandomSource rng(5);
    const DensityOperator mixed = rng.density(2);
    for (double t : {0.0, 0.3, 2.0}) {
        const CorrelationQuery norm({t}, {i2}, {i2});
        CHECK(std::abs(kernel_schrodinger(model, mixed, norm) - 1.0) <= 1e-12);
        CHECK(std::abs(kernel_heisenberg(model, mixed, norm) - 1.0) <= 1e-12);
    }

    const CorrelationQuery population({1.0}, {i2}, {atom::number()});
    CHECK(std::abs(kernel_schrodinger(model, excited, population) - 0.36787944117144233) <= 1e-10);
    CHECK(std::abs(kernel_heisenberg(model, excited, population) - 0.36787944117144233) <= 1e-10);

    const CorrelationQuery dipole({0.5, 1.0}, {atom::sigma_minus(), i2}, {i2, atom::sigma_minus()});
    CHECK(std::abs(kernel_schrodinger(model, excited, dipole) - kDipole) <= 1e-10);
    CHECK(std::abs(kernel_heisenberg(model, excited, dipole) - kDipole) <= 1e-10);
    CHECK(std::abs(kDipole - 0.4723665527) <= 1e-10);

    const CorrelationQuery two_norm({0.4, 0.9}, {i2, i2}, {i2, i2});
    CHECK(std::abs(kernel_heisenberg(model, excited, two_norm) - 1.0) <= 1e-12);
}

TEST_CASE("kernels reject unordered times and mismatched dimensions") {
    const SystemModel model = atom::decay_model(1.0);
    const DensityOperator excited = DensityOperator::basis_state(2, 1);
    const ComplexMatrix i2 = atom::identity();
    const CorrelationQuery unordered({1.0, 0.5}, {i2, i2}, {i2, i2});
    CHECK_THROWS_AS(kernel_schrodinger(model, excited, unordered), TimeOrderError);
    CHECK_THROWS_AS(kernel_heisenberg(model, excited, unordered), TimeOrderError);

    const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
    const CorrelationQuery wrong_dim({0.5}, {i3}, {i3});
    CHECK_THROWS_AS(kernel_schrodinger(model, excited, wrong_dim), DimensionError);
}

TEST_CASE("two_time") {
    const SystemModel model = atom::decay_model(1.0);
    const DensityOperator excited = DensityOperator::basis_state(2, 1);
    const ComplexMatrix i2 = atom::identity();
    CHECK(std::abs(two_time(model, excited, i2, i2, 0.2, 0.7) - 1.0) <= 1e-12);
    CHECK(std::abs(two_time(model, excited, atom::sigma_plus(), atom::sigma_minus(), 0.5, 1.0) - kDipole) <= 1e-10);
    CHECK(std::abs(two_time(model, excited, atom::number(), i2, 1.0, 1.0) - std::exp(-1.0)) <= 1e-10);
    CHECK_THROWS_AS(two_time(model, excited, i2, i2, 1.0, 0.5), TimeOrderError);
}

TEST_CASE("Heisenberg and Schrödinger forms agree with each other and with an RK4 oracle") {
    RandomSource rng(100);
    {
        const SystemModel model = rng.model(3);
        const DensityOperator rho = rng.density(3);
        const CorrelationQuery q({0.2, 0.7, 1.1}, {rng.hermitian(3), rng.hermitian(3), rng.hermitian(3)},
                                 {rng.hermitian(3), rng.hermitian(3), rng.hermitian(3)});
        const Complex ws = kernel_schrodinger(model, rho, q);
        CHECK(std::abs(ws - kernel_heisenberg(model, rho, q)) <= 1e-10);
        CHECK(std::abs(ws - rk4_kernel(model, rho, q)) <= 1e-9);
    }
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = rng.index(2, 4);
        const std::size_t n = rng.index(1, 4);
        const SystemModel model = rng.model(d);
        const DensityOperator rho = rng.density(d);
        const CorrelationQuery q = rng.query(d, n, 2.0);
        const Complex ws = kernel_schrodinger(model, rho, q);
        CHECK(std::abs(ws - kernel_heisenberg(model, rho, q)) <= 1e-10);
        if (trial % 8 == 0) CHECK(std::abs(ws - rk4_kernel(model, rho, q)) <= 1e-9);
    }
}

TEST_CASE("Hermitian symmetry and Gram positivity") {
    RandomSource rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = rng.index(2, 4);
        const SystemModel model = rng.model(d);
        const DensityOperator rho = rng.density(d);
        const CorrelationQuery q = rng.query(d, rng.index(1, 4), 1.5);
        CHECK(std::abs(kernel_schrodinger(model, rho, q.swapped()) -
                       std::conj(kernel_schrodinger(model, rho, q))) <= 1e-10);

        const std::vector<double> times = {0.25, 0.6, 1.4};
        std::vector<std::vector<SystemOperator>> family;
        for (int i = 0; i < 5; ++i) family.push_back({rng.matrix(d, d), rng.matrix(d, d), rng.matrix(d, d)});
        ComplexMatrix gram(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                gram(i, j) = kernel_schrodinger(model, rho, CorrelationQuery(times, family[i], family[j]));
        CHECK(hermiticity_defect(gram) <= 1e-10);
        CHECK(min_hermitian_eigenvalue(gram) >= -1e-9);
    }
}

TEST_CASE("coincident times collapse to a merged kernel") {
    RandomSource rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = rng.index(2, 4);
        const SystemModel model = rng.model(d);
        const DensityOperator rho = rng.density(d);
        const CorrelationQuery q = rng.query(d, 4, 2.0);
        const auto& t = q.times();
        const auto& a = q.a_ops();
        const auto& b = q.b_ops();
        // Tie t_2 = t_3 (k = 1, 0-based).
        const CorrelationQuery tied({t[0], t[1], t[1], t[3]}, a, b);
        const CorrelationQuery merged({t[0], t[1], t[3]}, {a[0], a[2] * a[1], a[3]}, {b[0], b[2] * b[1], b[3]});
        CHECK(std::abs(kernel_schrodinger(model, rho, tied) - kernel_schrodinger(model, rho, merged)) <= 1e-10);
        CHECK(std::abs(kernel_heisenberg(model, rho, tied) - kernel_schrodinger(model, rho, merged)) <= 1e-10);
    }
}

TEST_CASE("operator order changes the kernel value") {
    const SystemModel model = atom::decay_model(1.0);
    const DensityOperator excited = DensityOperator::basis_state(2, 1);
    const ComplexMatrix i2 = atom::identity();
    const CorrelationQuery first({0.5, 1.0}, {i2, i2}, {atom::sigma_minus(), atom::sigma_plus()});
    const CorrelationQuery second({0.5, 1.0}, {i2, i2}, {atom::sigma_plus(), atom::sigma_minus()});
    const Complex w1 = kernel_schrodinger(model, excited, first);
    const Complex w2 = kernel_schrodinger(model, excited, second);
    // By hand on the 2×2 model: p_e(0.5) e^{-1/4} and p_g(0.5) e^{-1/4}.
    CHECK(std::abs(w1 - std::exp(-0.75)) <= 1e-10);
    CHECK(std::abs(w2 - (1.0 - std::exp(-0.5)) * std::exp(-0.25)) <= 1e-10);
    CHECK(std::abs(w1 - w2) > 0.1);
}
