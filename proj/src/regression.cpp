#include "qregress/regression.hpp"

#include "qregress/errors.hpp"
#include "qregress/semigroup.hpp"

#include <cmath>
#include <string>

namespace qregress {

namespace {

void require_model_dim(const SystemModel& model, const DensityOperator& rho,
                       const CorrelationQuery& q) {
    if (rho.dim() != model.dim() || q.dim() != model.dim()) {
        throw DimensionError("kernel: model, state and query dimensions differ (" +
                             std::to_string(model.dim()) + ", " + std::to_string(rho.dim()) +
                             ", " + std::to_string(q.dim()) + ")");
    }
}

}  // namespace

CorrelationQuery::CorrelationQuery(std::vector<double> times, std::vector<SystemOperator> a_ops,
                                   std::vector<SystemOperator> b_ops)
    : times_(std::move(times)), a_(std::move(a_ops)), b_(std::move(b_ops)) {
    if (times_.empty()) throw ValidationError("query: at least one time is required");
    if (a_.size() != times_.size() || b_.size() != times_.size()) {
        throw DimensionError("query: " + std::to_string(times_.size()) + " times but " +
                             std::to_string(a_.size()) + " a_ops and " +
                             std::to_string(b_.size()) + " b_ops");
    }
    for (double t : times_) {
        if (!std::isfinite(t) || t < 0.0) {
            throw ValidationError("query: times must be finite and non-negative");
        }
    }
    dim_ = static_cast<std::size_t>(b_.front().rows());
    const auto n = static_cast<Eigen::Index>(dim_);
    for (std::size_t k = 0; k < times_.size(); ++k) {
        for (const auto* op : {&a_[k], &b_[k]}) {
            if (op->rows() != n || op->cols() != n) {
                throw DimensionError("query: operator " + std::to_string(k + 1) +
                                     " has inconsistent dimension");
            }
            if (!all_finite(*op)) throw ValidationError("query: non-finite operator entries");
        }
    }
}

CorrelationQuery CorrelationQuery::with_identity_a(std::vector<double> times,
                                                   std::vector<SystemOperator> b_ops) {
    if (b_ops.empty()) throw ValidationError("query: at least one operator is required");
    const auto d = b_ops.front().rows();
    std::vector<SystemOperator> a_ops(b_ops.size(), ComplexMatrix::Identity(d, d));
    return CorrelationQuery(std::move(times), std::move(a_ops), std::move(b_ops));
}

bool CorrelationQuery::is_time_ordered() const {
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (times_[k] < times_[k - 1]) return false;
    }
    return true;
}

void CorrelationQuery::require_time_ordered() const {
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (times_[k] < times_[k - 1]) {
            throw TimeOrderError("query: times not nondecreasing at index " + std::to_string(k) +
                                 " (" + std::to_string(times_[k - 1]) + " > " +
                                 std::to_string(times_[k]) + ")");
        }
    }
}

CorrelationQuery CorrelationQuery::swapped() const { return CorrelationQuery(times_, b_, a_); }

Complex kernel_schrodinger(const SystemModel& model, const DensityOperator& rho,
                           const CorrelationQuery& q) {
    require_model_dim(model, rho, q);
    q.require_time_ordered();
    const SuperOperator gen = generator_matrix(model, Picture::schrodinger);
    const auto& t = q.times();
    const auto& a = q.a_ops();
    const auto& b = q.b_ops();

    SystemOperator sigma = propagator(gen, t[0]).apply(rho.matrix());
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        sigma = propagator(gen, t[k + 1] - t[k]).apply(b[k] * sigma * a[k].adjoint());
    }
    return (b.back() * sigma * a.back().adjoint()).trace();
}

Complex kernel_heisenberg(const SystemModel& model, const DensityOperator& rho,
                          const CorrelationQuery& q) {
    require_model_dim(model, rho, q);
    q.require_time_ordered();
    const SuperOperator gen = generator_matrix(model, Picture::heisenberg);
    const auto& t = q.times();
    const auto& a = q.a_ops();
    const auto& b = q.b_ops();
    const std::size_t n = q.size();

    SystemOperator g = a[n - 1].adjoint() * b[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        g = a[k].adjoint() * propagator(gen, t[k + 1] - t[k]).apply(g) * b[k];
    }
    const SystemOperator rho_t1 = propagate(model, rho.matrix(), 0.0, t[0]);
    return (rho_t1 * g).trace();
}

Complex two_time(const SystemModel& model, const DensityOperator& rho, const SystemOperator& a,
                 const SystemOperator& b, double t1, double t2) {
    if (t1 > t2) {
        throw TimeOrderError("two_time: t1 = " + std::to_string(t1) + " exceeds t2 = " +
                             std::to_string(t2));
    }
    const auto d = static_cast<Eigen::Index>(model.dim());
    const ComplexMatrix ident = ComplexMatrix::Identity(d, d);
    const CorrelationQuery q({t1, t2}, {a.adjoint(), ident}, {ident, b});
    return kernel_schrodinger(model, rho, q);
}

}  // namespace qregress
