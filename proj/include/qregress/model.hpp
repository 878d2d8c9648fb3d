#pragma once

#include "qregress/linalg.hpp"

#include <cstddef>

namespace qregress {

/// Element of the system algebra: any bounded d×d operator.
using SystemOperator = ComplexMatrix;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;

/// A finite-dimensional system with Hamiltonian H (ħ = 1) coupled to a
/// vacuum field through a single operator L. Construction validates.
class SystemModel {
public:
    /// Throws DimensionError on shape mismatch or d < 2, ValidationError if H
    /// is not Hermitian within kHermitianTol·max(1, ‖H‖_F).
    SystemModel(ComplexMatrix hamiltonian, ComplexMatrix coupling);

    std::size_t dim() const { return dim_; }
    const ComplexMatrix& hamiltonian() const { return h_; }
    const ComplexMatrix& coupling() const { return l_; }

private:
    std::size_t dim_;
    ComplexMatrix h_;
    ComplexMatrix l_;
};

/// Hermitian, positive semidefinite, unit-trace d×d matrix.
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix rho);

    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const ComplexMatrix& matrix() const { return rho_; }

    static DensityOperator pure(const ComplexVector& psi);
    static DensityOperator basis_state(std::size_t d, std::size_t index);

private:
    ComplexMatrix rho_;
};

SystemModel validate_model(const ComplexMatrix& hamiltonian, const ComplexMatrix& coupling);

/// Heisenberg-picture generator ℒ(X) = ½L†[X,L] + ½[L†,X]L − i[X,H].
SystemOperator lindblad_heisenberg(const SystemModel& model, const SystemOperator& x);

/// Schrödinger-picture generator ℒ*(ρ) = LρL† − ½{L†L, ρ} + i[ρ,H].
/// Linear; the argument need not be a density operator.
SystemOperator lindblad_schrodinger(const SystemModel& model, const SystemOperator& rho);

// Two-level atom helpers, basis index 0 = |g⟩, 1 = |e⟩.
namespace atom {
SystemOperator sigma_minus();  // |g⟩⟨e|
SystemOperator sigma_plus();   // |e⟩⟨g|
SystemOperator number();       // |e⟩⟨e|
SystemOperator identity();
/// Spontaneous decay: H = 0, L = √γ σ⁻.
SystemModel decay_model(double gamma);
}  // namespace atom

}  // namespace qregress
