#pragma once

#include "qregress/linalg.hpp"
#include "qregress/model.hpp"

#include <cstddef>

namespace qregress {

enum class Picture { heisenberg, schrodinger };

/// Linear map on d×d operators stored as a d²×d² matrix acting on
/// column-stacked operators.
struct SuperOperator {
    std::size_t dim = 0;
    ComplexMatrix mat;
    Picture picture = Picture::schrodinger;

    SystemOperator apply(const SystemOperator& x) const;
    /// this ∘ other (apply `other` first).
    SuperOperator compose(const SuperOperator& other) const;

    static SuperOperator identity(std::size_t d, Picture picture);
};

/// Matrix of ℒ (Heisenberg) or ℒ* (Schrödinger) for the model.
SuperOperator generator_matrix(const SystemModel& model, Picture picture);

/// e^{G·duration} for the generator in the given picture. Long durations are
/// split into equal chunks so every exponentiated matrix stays within the
/// mat_exp norm budget. Throws TimeOrderError if duration < 0.
SuperOperator propagator(const SystemModel& model, double duration, Picture picture);
SuperOperator propagator(const SuperOperator& generator, double duration);

/// Z*_{s,t}(σ) = e^{ℒ*(t−s)}(σ). Throws TimeOrderError if t < s.
SystemOperator propagate(const SystemModel& model, const SystemOperator& sigma, double s,
                         double t);

/// Z_{s,t}(X) = e^{ℒ(t−s)}(X). Throws TimeOrderError if t < s.
SystemOperator heisenberg_evolve(const SystemModel& model, const SystemOperator& x, double s,
                                 double t);

}  // namespace qregress
