#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace qregress {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest 1-norm accepted by mat_exp. Beyond this the scaling-and-squaring
/// error budget of 1e-12 relative is no longer guaranteed, so the input is
/// rejected with DomainError.
inline constexpr double kMatExpNormLimit = 50.0;

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant (degree 3, 5, 7, 9 or 13 chosen from the 1-norm).
/// Throws DimensionError for non-square input, DomainError for non-finite
/// input or ‖M‖₁ > kMatExpNormLimit.
ComplexMatrix mat_exp(const ComplexMatrix& m);

/// Kronecker product, (A⊗B)[i·rB+k, j·cB+l] = A[i,j]·B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Factor { first, second };

/// Trace out one factor of a square matrix on a dim_a·dim_b space.
/// `traced` names the factor that is removed.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Factor traced);

// Column-stacking vectorization: vec(X)[i + j·rows] = X(i, j), so the map
// X ↦ A·X·B has matrix Bᵀ ⊗ A.
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);
ComplexMatrix unvec(const ComplexVector& v, std::size_t dim);

/// Matrix unit E_ij on a d×d space.
ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);

/// Choi matrix Σ_ij E_ij ⊗ S(E_ij) of a d²×d² superoperator matrix acting on
/// column-stacked operators.
ComplexMatrix choi_matrix(const ComplexMatrix& super);

/// Smallest eigenvalue of the Hermitian part of a square matrix.
double min_hermitian_eigenvalue(const ComplexMatrix& m);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double one_norm(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// ‖M − M†‖_F.
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace qregress
