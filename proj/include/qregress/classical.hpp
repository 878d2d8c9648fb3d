#pragma once

#include "qregress/model.hpp"
#include "qregress/regression.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace qregress {

/// Continuous-time Markov chain. `rates(i, j)` is the jump rate i → j for
/// i ≠ j, and each row sums to zero, so P(t) = e^{Qt} is row-stochastic.
class ClassicalChain {
public:
    ClassicalChain(Eigen::MatrixXd rates, Eigen::VectorXd p0);

    /// Build from a column generator (dp/dt = G p, columns summing to zero).
    static ClassicalChain from_column_generator(const Eigen::MatrixXd& generator,
                                                Eigen::VectorXd p0);

    std::size_t states() const { return static_cast<std::size_t>(q_.rows()); }
    const Eigen::MatrixXd& rates() const { return q_; }
    const Eigen::VectorXd& initial() const { return p0_; }

    /// P(t) = e^{Qt}; TimeOrderError for t < 0.
    Eigen::MatrixXd transition(double t) const;

private:
    Eigen::MatrixXd q_;
    Eigen::VectorXd p0_;
};

/// E[f_n(X_{t_n}) ··· f_1(X_{t_1})] for nondecreasing times.
double classical_correlation(const ClassicalChain& chain, const std::vector<double>& times,
                             const std::vector<Eigen::VectorXd>& f_list);

struct DiagonalInvariance {
    bool invariant = false;
    /// generator(j, i) = ℒ*(E_ii)[j, j]: the column generator of the induced
    /// chain. Present only when `invariant`.
    std::optional<Eigen::MatrixXd> generator;
    /// Largest off-diagonal magnitude found in any ℒ*(E_ii).
    double max_offdiagonal = 0.0;
};

DiagonalInvariance diagonal_invariance_check(const SystemModel& model);

struct QuantumClassicalComparison {
    Complex quantum;
    double classical = 0.0;
    double diff = 0.0;
};

/// Quantum kernel for diagonal ρ and diagonal Hermitian b_k (a_k = I) next to
/// the classical correlation of the induced chain. ValidationError on any
/// violated precondition.
QuantumClassicalComparison compare_quantum_classical(const SystemModel& model,
                                                     const DensityOperator& rho,
                                                     const CorrelationQuery& q);

}  // namespace qregress
