#include "qregress/random.hpp"

#include <algorithm>
#include <cmath>

namespace qregress {

double RandomSource::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomSource::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

std::size_t RandomSource::index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
}

ComplexMatrix RandomSource::matrix(std::size_t rows, std::size_t cols, double scale) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double re = normal();
            const double im = normal();
            m(i, j) = scale * Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix RandomSource::hermitian(std::size_t d, double scale) {
    const ComplexMatrix g = matrix(d, d, scale);
    return 0.5 * (g + g.adjoint());
}

ComplexVector RandomSource::unit_vector(std::size_t d) {
    const ComplexMatrix g = matrix(d, 1);
    return g.col(0) / g.norm();
}

DensityOperator RandomSource::density(std::size_t d) {
    const ComplexMatrix g = matrix(d, d);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Exact Hermiticity after the rounding in the product.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(rho);
}

DensityOperator RandomSource::diagonal_density(std::size_t d) {
    Eigen::VectorXd w(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = uniform(0.05, 1.0);
    w /= w.sum();
    return DensityOperator(ComplexMatrix(w.cast<Complex>().asDiagonal()));
}

SystemModel RandomSource::model(std::size_t d) {
    const double scale = 0.5 / std::sqrt(static_cast<double>(d));
    return SystemModel(hermitian(d, scale), matrix(d, d, scale));
}

CorrelationQuery RandomSource::query(std::size_t d, std::size_t n, double t_max) {
    std::vector<double> times(n);
    for (auto& t : times) t = uniform(0.0, t_max);
    std::sort(times.begin(), times.end());
    std::vector<SystemOperator> a_ops;
    std::vector<SystemOperator> b_ops;
    for (std::size_t k = 0; k < n; ++k) {
        a_ops.push_back(matrix(d, d, 0.7));
        b_ops.push_back(matrix(d, d, 0.7));
    }
    return CorrelationQuery(std::move(times), std::move(a_ops), std::move(b_ops));
}

}  // namespace qregress
