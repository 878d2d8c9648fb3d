#include "qregress/model.hpp"

#include "qregress/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qregress {

namespace {

void require_dim(const ComplexMatrix& m, std::size_t d, const char* what) {
    const auto n = static_cast<Eigen::Index>(d);
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(d) + "x" +
                             std::to_string(d) + ", got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    }
}

}  // namespace

SystemModel::SystemModel(ComplexMatrix hamiltonian, ComplexMatrix coupling)
    : dim_(static_cast<std::size_t>(hamiltonian.rows())),
      h_(std::move(hamiltonian)),
      l_(std::move(coupling)) {
    if (h_.rows() != h_.cols()) throw DimensionError("model: H is not square");
    if (dim_ < 2) throw DimensionError("model: dimension must be at least 2");
    require_dim(l_, dim_, "model: L");
    if (!all_finite(h_) || !all_finite(l_)) throw ValidationError("model: non-finite entries");
    const double scale = std::max(1.0, h_.norm());
    if (hermiticity_defect(h_) > kHermitianTol * scale) {
        throw ValidationError("model: H is not Hermitian (||H - H^dag||_F = " +
                              std::to_string(hermiticity_defect(h_)) + ")");
    }
}

DensityOperator::DensityOperator(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw DimensionError("density operator: not square");
    if (!all_finite(rho_)) throw ValidationError("density operator: non-finite entries");
    if (hermiticity_defect(rho_) > kDensityTol) {
        throw ValidationError("density operator: not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0)) > kDensityTol) {
        throw ValidationError("density operator: trace is not 1");
    }
    if (rho_.size() > 0 && min_hermitian_eigenvalue(rho_) < -kDensityTol) {
        throw ValidationError("density operator: negative eigenvalue");
    }
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("density operator: zero state vector");
    const ComplexVector unit = psi / n;
    return DensityOperator(unit * unit.adjoint());
}

DensityOperator DensityOperator::basis_state(std::size_t d, std::size_t index) {
    if (index >= d) throw DimensionError("density operator: basis index out of range");
    return DensityOperator(matrix_unit(d, index, index));
}

SystemModel validate_model(const ComplexMatrix& hamiltonian, const ComplexMatrix& coupling) {
    return SystemModel(hamiltonian, coupling);
}

SystemOperator lindblad_heisenberg(const SystemModel& model, const SystemOperator& x) {
    require_dim(x, model.dim(), "lindblad_heisenberg");
    const auto& h = model.hamiltonian();
    const auto& l = model.coupling();
    const ComplexMatrix ld = l.adjoint();
    const Complex i(0.0, 1.0);
    return 0.5 * ld * (x * l - l * x) + 0.5 * (ld * x - x * ld) * l - i * (x * h - h * x);
}

SystemOperator lindblad_schrodinger(const SystemModel& model, const SystemOperator& rho) {
    require_dim(rho, model.dim(), "lindblad_schrodinger");
    const auto& h = model.hamiltonian();
    const auto& l = model.coupling();
    const ComplexMatrix ld = l.adjoint();
    const ComplexMatrix ldl = ld * l;
    const Complex i(0.0, 1.0);
    return l * rho * ld - 0.5 * (ldl * rho + rho * ldl) + i * (rho * h - h * rho);
}

namespace atom {

SystemOperator sigma_minus() { return matrix_unit(2, 0, 1); }
SystemOperator sigma_plus() { return matrix_unit(2, 1, 0); }
SystemOperator number() { return matrix_unit(2, 1, 1); }
SystemOperator identity() { return ComplexMatrix::Identity(2, 2); }

SystemModel decay_model(double gamma) {
    return SystemModel(ComplexMatrix::Zero(2, 2), std::sqrt(gamma) * sigma_minus());
}

}  // namespace atom

}  // namespace qregress
