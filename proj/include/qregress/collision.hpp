#pragma once

#include "qregress/linalg.hpp"
#include "qregress/model.hpp"
#include "qregress/regression.hpp"
#include "qregress/semigroup.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace qregress {

inline constexpr std::size_t kDefaultJointBudget = 200000;

/// Discretized vacuum field: slots of duration dt, each a truncated
/// oscillator with levels 0..trunc−1.
struct CollisionConfig {
    double dt = 0.01;
    std::size_t trunc = 2;
    /// Slots covering [0, n_slots·dt]. Zero means "derive from the query".
    std::size_t n_slots = 0;
    /// Joint mode limit on stored complex amplitudes.
    std::size_t budget = kDefaultJointBudget;

    void validate() const;
    /// Index k with t = k·dt within 1e-12; GridAlignmentError otherwise.
    std::size_t slot_index(double t) const;
};

/// Truncated annihilator on m levels: a[k−1, k] = √k.
ComplexMatrix slot_annihilator(std::size_t m);

/// U_Δ = exp(−i H⊗I Δt + √Δt (L⊗a† − L†⊗a)) on system ⊗ slot.
ComplexMatrix step_unitary(const SystemModel& model, const CollisionConfig& cfg);

/// σ ↦ Tr_slot(U_Δ (σ ⊗ |0⟩⟨0|) U_Δ†) as a Schrödinger-picture superoperator.
SuperOperator collision_channel(const SystemModel& model, const CollisionConfig& cfg);

/// Regression recursion with every Z* replaced by powers of the collision
/// channel. Times must be ordered and on the dt grid.
Complex oracle_kernel_sequential(const SystemModel& model, const DensityOperator& rho,
                                 const CorrelationQuery& q, const CollisionConfig& cfg);

/// System ⊗ field state vector. Each branch is keyed by the occupation of
/// every slot and holds the system amplitudes for that field configuration.
/// Only branches with a nonzero system vector are stored, so the state is
/// exact but its storage follows the populated field configurations rather
/// than d·m^N.
class JointPureState {
public:
    using Occupation = std::vector<std::uint8_t>;

    JointPureState(const ComplexVector& system, std::size_t n_slots, std::size_t trunc);

    std::size_t system_dim() const { return dim_; }
    std::size_t n_slots() const { return n_slots_; }
    std::size_t trunc() const { return trunc_; }
    std::size_t branch_count() const { return branches_.size(); }
    std::size_t stored_amplitudes() const { return branches_.size() * dim_; }

    /// Apply a (d·m)×(d·m) unitary (system ⊗ slot ordering) to one slot.
    void apply_slot_unitary(const ComplexMatrix& u, std::size_t slot);
    void apply_system(const SystemOperator& x);

    double norm() const;
    Complex inner(const JointPureState& other) const;  // ⟨this|other⟩

    /// Dense vector on system ⊗ slot_1 ⊗ … ⊗ slot_N (slot_1 earliest).
    ComplexVector dense() const;

private:
    std::size_t dim_;
    std::size_t n_slots_;
    std::size_t trunc_;
    std::map<Occupation, ComplexVector> branches_;
};

/// Kernel evaluated directly from its definition on the joint space,
/// w = ⟨φ_a|φ_b⟩ with φ_x = x_n W_n ··· x_1 W_1 |ψ₀⟩|vac⟩, where W_k moves the
/// joint unitary from t_{k−1} to t_k (forward steps, or inverse steps when
/// times decrease). Uses only the step unitary. Throws BudgetError when the
/// stored amplitudes exceed cfg.budget.
Complex oracle_kernel_joint(const SystemModel& model, const ComplexVector& psi0,
                            const CorrelationQuery& q, const CollisionConfig& cfg);

/// Mixed-state wrapper: spectral decomposition of ρ into an eigenvector
/// ensemble, kernel = Σ p_i w(ψ_i).
Complex oracle_kernel_joint(const SystemModel& model, const DensityOperator& rho,
                            const CorrelationQuery& q, const CollisionConfig& cfg);

/// Contract slots cut+1..n_slots of an operator on d·m^n_slots against the
/// vacuum, leaving an operator on d·m^cut.
ComplexMatrix vacuum_conditional_expectation(const ComplexMatrix& x, std::size_t system_dim,
                                             std::size_t trunc, std::size_t n_slots,
                                             std::size_t cut);

/// Y ⊗ I on `extra_slots` further slots.
ComplexMatrix ampliate(const ComplexMatrix& y, std::size_t trunc, std::size_t extra_slots);

struct ItoReport {
    double dt = 0.0;
    std::size_t trunc = 0;
    Complex db_dbdag;      // ⟨0|B B†|0⟩
    Complex dbdag_db;      // ⟨0|B† B|0⟩
    Complex db_db;         // ⟨0|B B|0⟩
    Complex dbdag_dbdag;   // ⟨0|B† B†|0⟩
    /// max |moment − (Δt, 0, 0, 0)|
    double max_deviation = 0.0;
};

/// Vacuum moments of the single-slot increment B = √Δt·a.
ItoReport ito_table_check(const CollisionConfig& cfg);

struct CommutatorReport {
    Complex expected;  // Σ_k conj(f_k) g_k Δt
    Complex vacuum_expectation;
    /// max |⟨x|[B(f),B†(g)]|y⟩ − expected·δ_xy| over field basis states with
    /// no slot at the top level.
    double max_deviation = 0.0;
};

/// [B(f), B†(g)] for step functions f, g given per slot, on a dense
/// m^N-dimensional field space.
CommutatorReport field_commutator_check(double dt, std::size_t trunc,
                                        const std::vector<Complex>& f,
                                        const std::vector<Complex>& g);

}  // namespace qregress
