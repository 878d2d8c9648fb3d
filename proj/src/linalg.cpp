#include "qregress/linalg.hpp"

#include "qregress/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace qregress {

namespace {

// Diagonal Padé coefficients b_0..b_m of exp, and the 1-norm thresholds
// below which each degree meets double-precision backward error.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
    const auto n = a.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    ComplexMatrix odd = b[1] * ident;
    ComplexMatrix even = b[0] * ident;
    ComplexMatrix power = ident;
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    const ComplexMatrix u = a * odd;
    return (even - u).partialPivLu().solve(even + u);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
    const auto& b = kPade13;
    const auto n = a.rows();
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
    const ComplexMatrix u =
        a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    const ComplexMatrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
    const ComplexMatrix v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    return (v - u).partialPivLu().solve(v + u);
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + ": expected square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

ComplexMatrix mat_exp(const ComplexMatrix& m) {
    require_square(m, "mat_exp");
    if (!all_finite(m)) throw DomainError("mat_exp: non-finite entries");
    const double norm = one_norm(m);
    if (norm > kMatExpNormLimit) {
        throw DomainError("mat_exp: 1-norm " + std::to_string(norm) + " exceeds limit " +
                          std::to_string(kMatExpNormLimit));
    }
    if (m.size() == 0) return m;

    if (norm <= kTheta3) return pade_low(m, kPade3);
    if (norm <= kTheta5) return pade_low(m, kPade5);
    if (norm <= kTheta7) return pade_low(m, kPade7);
    if (norm <= kTheta9) return pade_low(m, kPade9);

    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    ComplexMatrix r = pade13(m / std::ldexp(1.0, squarings));
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto rb = b.rows();
    const auto cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Factor traced) {
    const auto da = static_cast<Eigen::Index>(dim_a);
    const auto db = static_cast<Eigen::Index>(dim_b);
    if (m.rows() != m.cols() || m.rows() != da * db) {
        throw DimensionError("partial_trace: matrix side " + std::to_string(m.rows()) +
                             " does not match " + std::to_string(dim_a) + "*" +
                             std::to_string(dim_b));
    }
    if (traced == Factor::second) {
        ComplexMatrix out(da, da);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < da; ++j) {
                out(i, j) = m.block(i * db, j * db, db, db).trace();
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
}

ComplexVector vec(const ComplexMatrix& x) {
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
    if (static_cast<std::size_t>(v.size()) != rows * cols) {
        throw DimensionError("unvec: vector length " + std::to_string(v.size()) +
                             " does not match " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), static_cast<Eigen::Index>(rows),
                                           static_cast<Eigen::Index>(cols));
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t dim) { return unvec(v, dim, dim); }

ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return e;
}

ComplexMatrix choi_matrix(const ComplexMatrix& super) {
    require_square(super, "choi_matrix");
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(double(super.rows()))));
    if (static_cast<Eigen::Index>(d * d) != super.rows()) {
        throw DimensionError("choi_matrix: side " + std::to_string(super.rows()) +
                             " is not a perfect square");
    }
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            // S(E_ij) is column (i + j·d) of the superoperator matrix.
            const ComplexMatrix image =
                unvec(super.col(static_cast<Eigen::Index>(i + j * d)), d);
            choi.block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n, n,
                       n) = image;
        }
    }
    return choi;
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
    require_square(m, "min_hermitian_eigenvalue");
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance: shape mismatch");
    }
    return (a - b).norm();
}

double one_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).norm();
}

}  // namespace qregress
