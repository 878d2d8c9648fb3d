#include "qregress/classical.hpp"

#include "qregress/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qregress {

namespace {

constexpr double kChainTol = 1e-12;
constexpr double kDiagonalTol = 1e-12;

bool is_diagonal(const ComplexMatrix& m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && std::abs(m(i, j)) > tol) return false;
        }
    }
    return true;
}

}  // namespace

ClassicalChain::ClassicalChain(Eigen::MatrixXd rates, Eigen::VectorXd p0)
    : q_(std::move(rates)), p0_(std::move(p0)) {
    if (q_.rows() != q_.cols() || q_.rows() != p0_.size() || q_.rows() == 0) {
        throw DimensionError("chain: generator and initial distribution sizes differ");
    }
    if (!q_.allFinite() || !p0_.allFinite()) throw ValidationError("chain: non-finite entries");
    for (Eigen::Index i = 0; i < q_.rows(); ++i) {
        for (Eigen::Index j = 0; j < q_.cols(); ++j) {
            if (i != j && q_(i, j) < 0.0) {
                throw ValidationError("chain: negative off-diagonal rate at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
        if (std::abs(q_.row(i).sum()) > kChainTol) {
            throw ValidationError("chain: row " + std::to_string(i) + " does not sum to zero");
        }
        if (p0_(i) < 0.0) throw ValidationError("chain: negative initial probability");
    }
    if (std::abs(p0_.sum() - 1.0) > kChainTol) {
        throw ValidationError("chain: initial distribution does not sum to one");
    }
}

ClassicalChain ClassicalChain::from_column_generator(const Eigen::MatrixXd& generator,
                                                     Eigen::VectorXd p0) {
    return ClassicalChain(generator.transpose(), std::move(p0));
}

Eigen::MatrixXd ClassicalChain::transition(double t) const {
    if (!(t >= 0.0)) throw TimeOrderError("chain: negative duration");
    return mat_exp(ComplexMatrix(q_.cast<Complex>() * t)).real();
}

double classical_correlation(const ClassicalChain& chain, const std::vector<double>& times,
                             const std::vector<Eigen::VectorXd>& f_list) {
    if (times.empty() || times.size() != f_list.size()) {
        throw DimensionError("classical_correlation: times and functions must pair up");
    }
    const auto r = static_cast<Eigen::Index>(chain.states());
    for (const auto& f : f_list) {
        if (f.size() != r) throw DimensionError("classical_correlation: function size mismatch");
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (times[k] < times[k - 1]) throw TimeOrderError("classical_correlation: unordered times");
    }
    if (times.front() < 0.0) throw TimeOrderError("classical_correlation: negative time");

    // Row vector of path weights ending in each state, multiplied through the
    // chain rule one observation at a time.
    Eigen::RowVectorXd weight = chain.initial().transpose() * chain.transition(times[0]);
    weight = weight.cwiseProduct(f_list[0].transpose());
    for (std::size_t k = 1; k < times.size(); ++k) {
        weight = weight * chain.transition(times[k] - times[k - 1]);
        weight = weight.cwiseProduct(f_list[k].transpose());
    }
    return weight.sum();
}

DiagonalInvariance diagonal_invariance_check(const SystemModel& model) {
    const std::size_t d = model.dim();
    const auto n = static_cast<Eigen::Index>(d);
    DiagonalInvariance out;
    Eigen::MatrixXd gen(n, n);
    bool real_diag = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const ComplexMatrix image = lindblad_schrodinger(model, matrix_unit(d, ii, ii));
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k < n; ++k) {
                if (j != k) out.max_offdiagonal = std::max(out.max_offdiagonal, std::abs(image(j, k)));
            }
            gen(j, i) = image(j, j).real();
            if (std::abs(image(j, j).imag()) > kDiagonalTol) real_diag = false;
        }
    }
    out.invariant = real_diag && out.max_offdiagonal <= kDiagonalTol;
    if (out.invariant) out.generator = gen;
    return out;
}

QuantumClassicalComparison compare_quantum_classical(const SystemModel& model,
                                                     const DensityOperator& rho,
                                                     const CorrelationQuery& q) {
    const DiagonalInvariance inv = diagonal_invariance_check(model);
    if (!inv.invariant) {
        throw ValidationError("classical comparison: model does not leave diagonal matrices "
                              "invariant (max off-diagonal " +
                              std::to_string(inv.max_offdiagonal) + ")");
    }
    if (!is_diagonal(rho.matrix(), kDiagonalTol)) {
        throw ValidationError("classical comparison: rho is not diagonal");
    }
    const auto d = static_cast<Eigen::Index>(model.dim());
    const ComplexMatrix ident = ComplexMatrix::Identity(d, d);
    std::vector<Eigen::VectorXd> f_list;
    for (std::size_t k = 0; k < q.size(); ++k) {
        const auto& b = q.b_ops()[k];
        if (frobenius_distance(q.a_ops()[k], ident) > kDiagonalTol) {
            throw ValidationError("classical comparison: a_" + std::to_string(k + 1) +
                                  " must be the identity");
        }
        if (!is_diagonal(b, kDiagonalTol) || hermiticity_defect(b) > kDiagonalTol) {
            throw ValidationError("classical comparison: b_" + std::to_string(k + 1) +
                                  " must be diagonal and Hermitian");
        }
        f_list.emplace_back(b.diagonal().real());
    }

    // Diagonal of ρ can carry −1e-17 style noise; clamp before the chain check.
    Eigen::VectorXd p0 = rho.matrix().diagonal().real().cwiseMax(0.0);
    p0 /= p0.sum();
    const ClassicalChain chain = ClassicalChain::from_column_generator(*inv.generator, p0);

    QuantumClassicalComparison out;
    out.quantum = kernel_schrodinger(model, rho, q);
    out.classical = classical_correlation(chain, q.times(), f_list);
    out.diff = std::abs(out.quantum - out.classical);
    return out;
}

}  // namespace qregress
