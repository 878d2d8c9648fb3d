#include "qregress/semigroup.hpp"

#include "qregress/errors.hpp"

#include <cmath>
#include <string>

namespace qregress {

namespace {

// Chunks are sized so ‖G·chunk‖₁ stays well inside the mat_exp budget.
constexpr double kChunkNorm = 0.5 * kMatExpNormLimit;

void require_ordered(double s, double t) {
    if (!(t >= s)) {
        throw TimeOrderError("time order violated: t = " + std::to_string(t) +
                             " precedes s = " + std::to_string(s));
    }
}

}  // namespace

SystemOperator SuperOperator::apply(const SystemOperator& x) const {
    const auto n = static_cast<Eigen::Index>(dim);
    if (x.rows() != n || x.cols() != n) {
        throw DimensionError("superoperator: operand is " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()) + ", expected " + std::to_string(dim));
    }
    return unvec(mat * vec(x), dim);
}

SuperOperator SuperOperator::compose(const SuperOperator& other) const {
    if (other.dim != dim) throw DimensionError("superoperator: compose dimension mismatch");
    return {dim, mat * other.mat, picture};
}

SuperOperator SuperOperator::identity(std::size_t d, Picture picture) {
    const auto n = static_cast<Eigen::Index>(d * d);
    return {d, ComplexMatrix::Identity(n, n), picture};
}

SuperOperator generator_matrix(const SystemModel& model, Picture picture) {
    const auto d = static_cast<Eigen::Index>(model.dim());
    const ComplexMatrix ident = ComplexMatrix::Identity(d, d);
    const auto& h = model.hamiltonian();
    const auto& l = model.coupling();
    const ComplexMatrix ldl = l.adjoint() * l;
    const Complex i(0.0, 1.0);

    // X ↦ A X B  ⇔  Bᵀ ⊗ A.
    ComplexMatrix mat = -0.5 * kron(ident, ldl) - 0.5 * kron(ldl.transpose(), ident);
    if (picture == Picture::schrodinger) {
        // Lρ L† − ½{L†L,ρ} − iHρ + iρH
        mat += kron(l.conjugate(), l) - i * kron(ident, h) + i * kron(h.transpose(), ident);
    } else {
        // L† X L − ½{L†L,X} + iHX − iXH
        mat += kron(l.transpose(), l.adjoint()) + i * kron(ident, h) - i * kron(h.transpose(), ident);
    }
    return {model.dim(), std::move(mat), picture};
}

SuperOperator propagator(const SuperOperator& generator, double duration) {
    if (!(duration >= 0.0)) {
        throw TimeOrderError("propagator: negative duration " + std::to_string(duration));
    }
    const double norm = one_norm(generator.mat) * duration;
    const int chunks = norm > kChunkNorm ? static_cast<int>(std::ceil(norm / kChunkNorm)) : 1;
    const ComplexMatrix step = mat_exp(generator.mat * (duration / chunks));
    ComplexMatrix total = step;
    for (int k = 1; k < chunks; ++k) total = total * step;
    return {generator.dim, std::move(total), generator.picture};
}

SuperOperator propagator(const SystemModel& model, double duration, Picture picture) {
    return propagator(generator_matrix(model, picture), duration);
}

SystemOperator propagate(const SystemModel& model, const SystemOperator& sigma, double s,
                         double t) {
    require_ordered(s, t);
    return propagator(model, t - s, Picture::schrodinger).apply(sigma);
}

SystemOperator heisenberg_evolve(const SystemModel& model, const SystemOperator& x, double s,
                                 double t) {
    require_ordered(s, t);
    return propagator(model, t - s, Picture::heisenberg).apply(x);
}

}  // namespace qregress
