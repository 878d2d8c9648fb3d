#pragma once

#include "qregress/model.hpp"

#include <cstddef>
#include <vector>

namespace qregress {

/// Times t_1..t_n with operator tuples a_n, b_n for the kernel
/// w(a, b) = μ(j_t(a)† j_t(b)), where j_t(x) = j_{t_n}(x_n)···j_{t_1}(x_1).
///
/// Construction checks counts, dimensions and t_k ≥ 0. Time order is not
/// enforced here: the regression forms reject unordered times, the joint
/// collision oracle accepts them.
class CorrelationQuery {
public:
    CorrelationQuery(std::vector<double> times, std::vector<SystemOperator> a_ops,
                     std::vector<SystemOperator> b_ops);

    /// a_k = I for every k.
    static CorrelationQuery with_identity_a(std::vector<double> times,
                                            std::vector<SystemOperator> b_ops);

    std::size_t size() const { return times_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<SystemOperator>& a_ops() const { return a_; }
    const std::vector<SystemOperator>& b_ops() const { return b_; }

    bool is_time_ordered() const;
    /// Throws TimeOrderError unless t_1 ≤ … ≤ t_n.
    void require_time_ordered() const;

    /// Same times with a and b exchanged; w(b, a) = conj(w(a, b)).
    CorrelationQuery swapped() const;

private:
    std::vector<double> times_;
    std::vector<SystemOperator> a_;
    std::vector<SystemOperator> b_;
    std::size_t dim_ = 0;
};

/// Schrödinger nested form: σ ← Z*_{0,t_1}(ρ); σ ← Z*_{t_k,t_{k+1}}(b_k σ a_k†);
/// w = Tr(b_n σ a_n†).
Complex kernel_schrodinger(const SystemModel& model, const DensityOperator& rho,
                           const CorrelationQuery& q);

/// Heisenberg nested form: G ← a_n† b_n; G ← a_k† Z_{t_k,t_{k+1}}(G) b_k;
/// w = Tr(Z*_{0,t_1}(ρ) G).
Complex kernel_heisenberg(const SystemModel& model, const DensityOperator& rho,
                          const CorrelationQuery& q);

/// μ(j_{t1}(A) j_{t2}(B)) for t1 ≤ t2.
Complex two_time(const SystemModel& model, const DensityOperator& rho, const SystemOperator& a,
                 const SystemOperator& b, double t1, double t2);

}  // namespace qregress
