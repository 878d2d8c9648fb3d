#pragma once

#include "qregress/model.hpp"
#include "qregress/regression.hpp"

#include <cstdint>
#include <random>

namespace qregress {

/// Seeded generators for randomized property suites. All draws go through a
/// single std::mt19937_64, so a seed fixes every value.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    double normal();
    std::size_t index(std::size_t lo, std::size_t hi);  // inclusive range

    /// Entries with i.i.d. standard normal real and imaginary parts, times scale.
    ComplexMatrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0);
    ComplexMatrix hermitian(std::size_t d, double scale = 1.0);
    ComplexVector unit_vector(std::size_t d);
    DensityOperator density(std::size_t d);
    /// Diagonal density operator with random weights.
    DensityOperator diagonal_density(std::size_t d);
    /// H, L scaled so ‖ℒ*‖ stays moderate: every generator used here can be
    /// exponentiated for t ≤ 5 without chunking.
    SystemModel model(std::size_t d);
    /// Nondecreasing times in [0, t_max] with random a_k, b_k.
    CorrelationQuery query(std::size_t d, std::size_t n, double t_max);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qregress
