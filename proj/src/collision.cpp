#include "qregress/collision.hpp"

#include "qregress/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qregress {

namespace {

constexpr double kGridTol = 1e-12;

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

bool is_zero(const ComplexVector& v) {
    return (v.array() == Complex(0.0, 0.0)).all();
}

bool is_zero(const ComplexMatrix& m) {
    return (m.array() == Complex(0.0, 0.0)).all();
}

void require_budget(const JointPureState& s, std::size_t budget) {
    if (s.stored_amplitudes() > budget) {
        throw BudgetError("joint oracle: " + std::to_string(s.stored_amplitudes()) +
                          " stored amplitudes exceed budget " + std::to_string(budget));
    }
}

}  // namespace

void CollisionConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("collision: dt must be positive");
    if (trunc < 2) throw ValidationError("collision: truncation must be at least 2");
    if (trunc > 255) throw ValidationError("collision: truncation above 255 is not supported");
    if (budget == 0) throw ValidationError("collision: budget must be positive");
}

std::size_t CollisionConfig::slot_index(double t) const {
    const double k = std::round(t / dt);
    if (k < 0.0 || std::abs(t - k * dt) > kGridTol) {
        throw GridAlignmentError("collision: time " + std::to_string(t) +
                                 " is not a multiple of dt = " + std::to_string(dt));
    }
    return static_cast<std::size_t>(k);
}

ComplexMatrix slot_annihilator(std::size_t m) {
    if (m < 2) throw ValidationError("slot_annihilator: truncation must be at least 2");
    const auto n = static_cast<Eigen::Index>(m);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

ComplexMatrix step_unitary(const SystemModel& model, const CollisionConfig& cfg) {
    cfg.validate();
    const auto m = static_cast<Eigen::Index>(cfg.trunc);
    const ComplexMatrix a = slot_annihilator(cfg.trunc);
    const ComplexMatrix ident_slot = ComplexMatrix::Identity(m, m);
    const auto& l = model.coupling();
    const Complex i(0.0, 1.0);
    const ComplexMatrix gen = -i * cfg.dt * kron(model.hamiltonian(), ident_slot) +
                              std::sqrt(cfg.dt) * (kron(l, a.adjoint()) - kron(l.adjoint(), a));
    return mat_exp(gen);
}

SuperOperator collision_channel(const SystemModel& model, const CollisionConfig& cfg) {
    const ComplexMatrix u = step_unitary(model, cfg);
    const std::size_t d = model.dim();
    const auto m = static_cast<Eigen::Index>(cfg.trunc);
    ComplexMatrix vacuum = ComplexMatrix::Zero(m, m);
    vacuum(0, 0) = 1.0;

    const auto n = static_cast<Eigen::Index>(d * d);
    ComplexMatrix mat(n, n);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            const ComplexMatrix joint = u * kron(matrix_unit(d, i, j), vacuum) * u.adjoint();
            mat.col(static_cast<Eigen::Index>(i + j * d)) =
                vec(partial_trace(joint, d, cfg.trunc, Factor::second));
        }
    }
    return {d, std::move(mat), Picture::schrodinger};
}

Complex oracle_kernel_sequential(const SystemModel& model, const DensityOperator& rho,
                                 const CorrelationQuery& q, const CollisionConfig& cfg) {
    cfg.validate();
    q.require_time_ordered();
    if (rho.dim() != model.dim() || q.dim() != model.dim()) {
        throw DimensionError("oracle: model, state and query dimensions differ");
    }
    std::vector<std::size_t> idx;
    for (double t : q.times()) idx.push_back(cfg.slot_index(t));

    const ComplexMatrix channel = collision_channel(model, cfg).mat;
    const auto& a = q.a_ops();
    const auto& b = q.b_ops();
    const std::size_t d = model.dim();

    ComplexVector sigma = vec(rho.matrix());
    std::size_t current = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        for (; current < idx[k]; ++current) sigma = channel * sigma;
        const ComplexMatrix s = unvec(sigma, d);
        if (k + 1 == q.size()) return (b[k] * s * a[k].adjoint()).trace();
        sigma = vec(b[k] * s * a[k].adjoint());
    }
    return 0.0;  // unreachable: queries are non-empty
}

JointPureState::JointPureState(const ComplexVector& system, std::size_t n_slots,
                               std::size_t trunc)
    : dim_(static_cast<std::size_t>(system.size())), n_slots_(n_slots), trunc_(trunc) {
    if (trunc < 2 || trunc > 255) throw ValidationError("joint state: unsupported truncation");
    if (!is_zero(system)) branches_.emplace(Occupation(n_slots, 0), system);
}

void JointPureState::apply_slot_unitary(const ComplexMatrix& u, std::size_t slot) {
    const auto d = static_cast<Eigen::Index>(dim_);
    const auto m = static_cast<Eigen::Index>(trunc_);
    if (u.rows() != d * m || u.cols() != d * m) {
        throw DimensionError("joint state: slot unitary has wrong dimension");
    }
    if (slot >= n_slots_) throw DimensionError("joint state: slot index out of range");

    // blocks[out][in] = ⟨out|U|in⟩ on the slot, a d×d system operator.
    std::vector<std::vector<ComplexMatrix>> blocks(static_cast<std::size_t>(m));
    for (Eigen::Index out = 0; out < m; ++out) {
        for (Eigen::Index in = 0; in < m; ++in) {
            ComplexMatrix blk(d, d);
            for (Eigen::Index r = 0; r < d; ++r) {
                for (Eigen::Index c = 0; c < d; ++c) blk(r, c) = u(r * m + out, c * m + in);
            }
            blocks[static_cast<std::size_t>(out)].push_back(std::move(blk));
        }
    }

    std::map<Occupation, ComplexVector> next;
    for (const auto& [occ, psi] : branches_) {
        const std::size_t in = occ[slot];
        for (std::size_t out = 0; out < trunc_; ++out) {
            const ComplexMatrix& blk = blocks[out][in];
            if (is_zero(blk)) continue;
            ComplexVector phi = blk * psi;
            if (is_zero(phi)) continue;
            Occupation key = occ;
            key[slot] = static_cast<std::uint8_t>(out);
            auto [it, inserted] = next.try_emplace(std::move(key), phi);
            if (!inserted) it->second += phi;
        }
    }
    std::erase_if(next, [](const auto& kv) { return is_zero(kv.second); });
    branches_ = std::move(next);
}

void JointPureState::apply_system(const SystemOperator& x) {
    const auto d = static_cast<Eigen::Index>(dim_);
    if (x.rows() != d || x.cols() != d) {
        throw DimensionError("joint state: system operator has wrong dimension");
    }
    for (auto& [occ, psi] : branches_) psi = x * psi;
    std::erase_if(branches_, [](const auto& kv) { return is_zero(kv.second); });
}

double JointPureState::norm() const {
    double sum = 0.0;
    for (const auto& [occ, psi] : branches_) sum += psi.squaredNorm();
    return std::sqrt(sum);
}

Complex JointPureState::inner(const JointPureState& other) const {
    if (other.dim_ != dim_ || other.n_slots_ != n_slots_ || other.trunc_ != trunc_) {
        throw DimensionError("joint state: inner product of incompatible states");
    }
    Complex sum = 0.0;
    for (const auto& [occ, psi] : branches_) {
        const auto it = other.branches_.find(occ);
        if (it != other.branches_.end()) sum += psi.dot(it->second);
    }
    return sum;
}

ComplexVector JointPureState::dense() const {
    const std::size_t field = ipow(trunc_, n_slots_);
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(dim_ * field));
    for (const auto& [occ, psi] : branches_) {
        std::size_t f = 0;
        for (std::uint8_t level : occ) f = f * trunc_ + level;
        for (std::size_t s = 0; s < dim_; ++s) {
            out(static_cast<Eigen::Index>(s * field + f)) = psi(static_cast<Eigen::Index>(s));
        }
    }
    return out;
}

Complex oracle_kernel_joint(const SystemModel& model, const ComplexVector& psi0,
                            const CorrelationQuery& q, const CollisionConfig& cfg) {
    cfg.validate();
    if (static_cast<std::size_t>(psi0.size()) != model.dim() || q.dim() != model.dim()) {
        throw DimensionError("joint oracle: model, state and query dimensions differ");
    }
    std::vector<std::size_t> idx;
    for (double t : q.times()) idx.push_back(cfg.slot_index(t));
    const std::size_t needed = *std::max_element(idx.begin(), idx.end());
    const std::size_t n_slots = cfg.n_slots == 0 ? needed : cfg.n_slots;
    if (needed > n_slots) {
        throw ValidationError("joint oracle: query reaches slot " + std::to_string(needed) +
                              " beyond n_slots = " + std::to_string(n_slots));
    }

    const ComplexMatrix u = step_unitary(model, cfg);
    const ComplexMatrix u_inv = u.adjoint();
    const ComplexVector unit = psi0 / psi0.norm();

    JointPureState phi_a(unit, n_slots, cfg.trunc);
    JointPureState phi_b(unit, n_slots, cfg.trunc);
    std::size_t current = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        for (; current < idx[k]; ++current) {
            phi_a.apply_slot_unitary(u, current);
            phi_b.apply_slot_unitary(u, current);
            require_budget(phi_a, cfg.budget);
            require_budget(phi_b, cfg.budget);
        }
        for (; current > idx[k]; --current) {
            phi_a.apply_slot_unitary(u_inv, current - 1);
            phi_b.apply_slot_unitary(u_inv, current - 1);
            require_budget(phi_a, cfg.budget);
            require_budget(phi_b, cfg.budget);
        }
        phi_a.apply_system(q.a_ops()[k]);
        phi_b.apply_system(q.b_ops()[k]);
    }
    return phi_a.inner(phi_b);
}

Complex oracle_kernel_joint(const SystemModel& model, const DensityOperator& rho,
                            const CorrelationQuery& q, const CollisionConfig& cfg) {
    if (rho.dim() != model.dim()) throw DimensionError("joint oracle: state dimension mismatch");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.matrix());
    Complex total = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double p = eig.eigenvalues()(i);
        if (p <= 0.0) continue;
        total += p * oracle_kernel_joint(model, ComplexVector(eig.eigenvectors().col(i)), q, cfg);
    }
    return total;
}

ComplexMatrix vacuum_conditional_expectation(const ComplexMatrix& x, std::size_t system_dim,
                                             std::size_t trunc, std::size_t n_slots,
                                             std::size_t cut) {
    if (cut > n_slots) throw DimensionError("conditional expectation: cut beyond last slot");
    const std::size_t side = system_dim * ipow(trunc, n_slots);
    if (x.rows() != x.cols() || static_cast<std::size_t>(x.rows()) != side) {
        throw DimensionError("conditional expectation: operator side " +
                             std::to_string(x.rows()) + " does not match d*m^N = " +
                             std::to_string(side));
    }
    // Vacuum on the trailing slots is field index 0 there, so the kept
    // indices are multiples of m^(N−cut).
    const auto stride = static_cast<Eigen::Index>(ipow(trunc, n_slots - cut));
    const auto n = static_cast<Eigen::Index>(system_dim * ipow(trunc, cut));
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = x(i * stride, j * stride);
    }
    return out;
}

ComplexMatrix ampliate(const ComplexMatrix& y, std::size_t trunc, std::size_t extra_slots) {
    const auto f = static_cast<Eigen::Index>(ipow(trunc, extra_slots));
    return kron(y, ComplexMatrix::Identity(f, f));
}

ItoReport ito_table_check(const CollisionConfig& cfg) {
    cfg.validate();
    const ComplexMatrix b = std::sqrt(cfg.dt) * slot_annihilator(cfg.trunc);
    const ComplexMatrix bd = b.adjoint();
    const auto vacuum_moment = [](const ComplexMatrix& op) { return op(0, 0); };

    ItoReport r;
    r.dt = cfg.dt;
    r.trunc = cfg.trunc;
    r.db_dbdag = vacuum_moment(b * bd);
    r.dbdag_db = vacuum_moment(bd * b);
    r.db_db = vacuum_moment(b * b);
    r.dbdag_dbdag = vacuum_moment(bd * bd);
    r.max_deviation = std::max({std::abs(r.db_dbdag - cfg.dt), std::abs(r.dbdag_db),
                                std::abs(r.db_db), std::abs(r.dbdag_dbdag)});
    return r;
}

CommutatorReport field_commutator_check(double dt, std::size_t trunc,
                                        const std::vector<Complex>& f,
                                        const std::vector<Complex>& g) {
    if (f.size() != g.size() || f.empty()) {
        throw DimensionError("commutator check: f and g must cover the same non-empty slots");
    }
    const std::size_t n_slots = f.size();
    const ComplexMatrix a = slot_annihilator(trunc);
    const auto dim = static_cast<Eigen::Index>(ipow(trunc, n_slots));
    const double root = std::sqrt(dt);

    ComplexMatrix bf = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix bdg = ComplexMatrix::Zero(dim, dim);
    CommutatorReport r;
    for (std::size_t k = 0; k < n_slots; ++k) {
        const auto before = static_cast<Eigen::Index>(ipow(trunc, k));
        const auto after = static_cast<Eigen::Index>(ipow(trunc, n_slots - k - 1));
        const ComplexMatrix ak = kron(kron(ComplexMatrix::Identity(before, before), a),
                                      ComplexMatrix::Identity(after, after));
        bf += std::conj(f[k]) * root * ak;
        bdg += g[k] * root * ak.adjoint();
        r.expected += std::conj(f[k]) * g[k] * dt;
    }
    const ComplexMatrix comm = bf * bdg - bdg * bf;
    r.vacuum_expectation = comm(0, 0);

    const auto below_top = [&](Eigen::Index index) {
        auto x = static_cast<std::size_t>(index);
        for (std::size_t k = 0; k < n_slots; ++k, x /= trunc) {
            if (x % trunc == trunc - 1) return false;
        }
        return true;
    };
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (!below_top(i)) continue;
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (!below_top(j)) continue;
            const Complex target = i == j ? r.expected : Complex(0.0);
            r.max_deviation = std::max(r.max_deviation, std::abs(comm(i, j) - target));
        }
    }
    return r;
}

}  // namespace qregress
