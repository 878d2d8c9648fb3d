#include "qregress/verify.hpp"

#include "qregress/classical.hpp"
#include "qregress/collision.hpp"
#include "qregress/errors.hpp"
#include "qregress/io.hpp"
#include "qregress/random.hpp"
#include "qregress/regression.hpp"
#include "qregress/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qregress {

namespace {

constexpr std::size_t kRandomModels = 6;

// Worst case over trials, reported against a single bound.
class Worst {
public:
    void max(double v) { value_ = std::max(value_, std::isnan(v) ? kInf : v); }
    void min(double v) { low_ = std::min(low_, std::isnan(v) ? -kInf : v); }
    double high() const { return value_; }
    double low() const { return low_; }

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    double value_ = 0.0;
    double low_ = kInf;
};

class Recorder {
public:
    explicit Recorder(VerificationReport& r) : report_(r) {}

    void at_most(std::string name, double measured, double bound) {
        report_.results.push_back(
            {std::move(name), measured, 0.0, bound, Bound::at_most, measured <= bound});
    }
    void at_least(std::string name, double measured, double bound) {
        report_.results.push_back(
            {std::move(name), measured, bound, 0.0, Bound::at_least, measured >= bound});
    }
    void within(std::string name, double measured, double lo, double hi) {
        report_.results.push_back(
            {std::move(name), measured, lo, hi, Bound::within, measured >= lo && measured <= hi});
    }

private:
    VerificationReport& report_;
};

ComplexMatrix unit_frobenius(ComplexMatrix m) { return m / m.norm(); }

void linalg_suite(RandomSource& rng, Recorder& rec) {
    Worst commuting, adjoint, ptrace;
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = rng.matrix(4, 4, 0.4);
        const ComplexMatrix n = 0.3 * m * m - 0.5 * m + 0.2 * ComplexMatrix::Identity(4, 4);
        commuting.max(frobenius_distance(mat_exp(m + n), mat_exp(m) * mat_exp(n)));
        const ComplexMatrix e = mat_exp(m);
        adjoint.max(frobenius_distance(e.adjoint(), mat_exp(m.adjoint())) / e.norm());
        const ComplexMatrix big = rng.matrix(6, 6);
        ptrace.max(std::abs(partial_trace(big, 2, 3, Factor::second).trace() - big.trace()));
        ptrace.max(std::abs(partial_trace(big, 2, 3, Factor::first).trace() - big.trace()));
    }
    rec.at_most("linalg.exp_commuting_sum", commuting.high(), 1e-10);
    rec.at_most("linalg.exp_adjoint", adjoint.high(), 1e-12);
    rec.at_most("linalg.partial_trace_preserves_trace", ptrace.high(), 1e-12);
}

void model_suite(const std::vector<SystemModel>& models, RandomSource& rng, Recorder& rec) {
    Worst duality, trace, herm, unital;
    for (const auto& model : models) {
        const std::size_t d = model.dim();
        const auto n = static_cast<Eigen::Index>(d);
        const ComplexMatrix x = unit_frobenius(rng.matrix(d, d));
        const ComplexMatrix y = unit_frobenius(rng.matrix(d, d));
        duality.max(std::abs((y * lindblad_heisenberg(model, x)).trace() -
                             (lindblad_schrodinger(model, y) * x).trace()));
        trace.max(std::abs(lindblad_schrodinger(model, x).trace()));
        const ComplexMatrix hx = unit_frobenius(rng.hermitian(d));
        herm.max(hermiticity_defect(lindblad_heisenberg(model, hx)));
        herm.max(hermiticity_defect(lindblad_schrodinger(model, hx)));
        unital.max(lindblad_heisenberg(model, ComplexMatrix::Identity(n, n)).norm());
    }
    rec.at_most("model.duality", duality.high(), 1e-11);
    rec.at_most("model.trace_annihilation", trace.high(), 1e-11);
    rec.at_most("model.hermiticity_preservation", herm.high(), 1e-11);
    rec.at_most("model.identity_annihilated", unital.high(), 1e-12);
}

void semigroup_suite(const std::vector<SystemModel>& models, RandomSource& rng, Recorder& rec) {
    Worst matrix_form, law, cp, tp, ident, duality, fd_low, fd_high;
    for (const auto& model : models) {
        const std::size_t d = model.dim();
        const auto n = static_cast<Eigen::Index>(d);
        const SuperOperator gs = generator_matrix(model, Picture::schrodinger);
        const SuperOperator gh = generator_matrix(model, Picture::heisenberg);
        const ComplexMatrix x = unit_frobenius(rng.matrix(d, d));
        matrix_form.max(frobenius_distance(gs.apply(x), lindblad_schrodinger(model, x)));
        matrix_form.max(frobenius_distance(gh.apply(x), lindblad_heisenberg(model, x)));

        const double a = rng.uniform(0.0, 2.0);
        const double b = rng.uniform(0.0, 2.0);
        law.max(frobenius_distance(propagator(gs, a + b).mat,
                                   propagator(gs, a).mat * propagator(gs, b).mat));

        for (double t : {0.1, 0.5, 1.0, 5.0}) {
            const SuperOperator zs = propagator(gs, t);
            cp.min(min_hermitian_eigenvalue(choi_matrix(zs.mat)));
            const ComplexMatrix sigma = rng.density(d).matrix();
            tp.max(std::abs(zs.apply(sigma).trace() - sigma.trace()));
            ident.max(frobenius_distance(propagator(gh, t).apply(ComplexMatrix::Identity(n, n)),
                                         ComplexMatrix::Identity(n, n)));
            const ComplexMatrix y = unit_frobenius(rng.matrix(d, d));
            const ComplexMatrix xx = unit_frobenius(rng.matrix(d, d));
            duality.max(std::abs((y * propagator(gh, t).apply(xx)).trace() -
                                 (zs.apply(y) * xx).trace()));
        }

        const ComplexMatrix sigma = rng.density(d).matrix();
        const ComplexMatrix exact = gs.apply(sigma);
        const auto fd_error = [&](double h) {
            return frobenius_distance((propagator(gs, h).apply(sigma) - sigma) / h, exact);
        };
        const double ratio = fd_error(1e-3) / fd_error(5e-4);
        fd_low.min(ratio);
        fd_high.max(ratio);
    }
    rec.at_most("semigroup.generator_matrix_matches_formula", matrix_form.high(), 1e-12);
    rec.at_most("semigroup.law", law.high(), 1e-9);
    rec.at_least("semigroup.choi_min_eigenvalue", cp.low(), -1e-9);
    rec.at_most("semigroup.trace_preservation", tp.high(), 1e-10);
    rec.at_most("semigroup.identity_preservation", ident.high(), 1e-10);
    rec.at_most("semigroup.duality", duality.high(), 1e-10);
    rec.within("semigroup.finite_difference_ratio_min", fd_low.low(), 1.7, 2.3);
    rec.within("semigroup.finite_difference_ratio_max", fd_high.high(), 1.7, 2.3);
}

void regression_suite(const std::vector<SystemModel>& models, RandomSource& rng, Recorder& rec) {
    Worst forms, symmetry, gram, collapse;
    for (const auto& model : models) {
        const std::size_t d = model.dim();
        const DensityOperator rho = rng.density(d);
        for (std::size_t n = 1; n <= 4; ++n) {
            const CorrelationQuery q = rng.query(d, n, 2.0);
            const Complex ws = kernel_schrodinger(model, rho, q);
            forms.max(std::abs(ws - kernel_heisenberg(model, rho, q)));
            symmetry.max(std::abs(kernel_schrodinger(model, rho, q.swapped()) - std::conj(ws)));
        }

        // Gram matrix of four random 2-point tuples at shared times.
        const std::vector<double> times = {0.3, 0.9};
        std::vector<std::vector<SystemOperator>> tuples;
        for (int i = 0; i < 4; ++i) tuples.push_back({rng.matrix(d, d, 0.7), rng.matrix(d, d, 0.7)});
        ComplexMatrix g(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) g(i, j) = kernel_schrodinger(model, rho, CorrelationQuery(times, tuples[i], tuples[j]));
        }
        gram.min(min_hermitian_eigenvalue(g));
        symmetry.max(hermiticity_defect(g));

        // t_2 = t_1 merges into a single time.
        const CorrelationQuery q = rng.query(d, 3, 2.0);
        const auto& t = q.times();
        const auto& a = q.a_ops();
        const auto& b = q.b_ops();
        const CorrelationQuery tied({t[0], t[0], t[2]}, a, b);
        const CorrelationQuery merged({t[0], t[2]}, {a[1] * a[0], a[2]}, {b[1] * b[0], b[2]});
        collapse.max(std::abs(kernel_schrodinger(model, rho, tied) -
                              kernel_schrodinger(model, rho, merged)));
    }
    rec.at_most("regression.form_equivalence", forms.high(), 1e-10);
    rec.at_most("regression.hermitian_symmetry", symmetry.high(), 1e-10);
    rec.at_least("regression.gram_min_eigenvalue", gram.low(), -1e-9);
    rec.at_most("regression.coincident_time_collapse", collapse.high(), 1e-10);
}

void collision_suite(const SystemModel& model, RandomSource& rng, Recorder& rec) {
    const std::size_t d = model.dim();
    Worst unitarity, channel_tp, channel_cp, ito, module_prop, tower, strategies, norm;

    for (double dt : {0.01, 1.0 / 16.0}) {
        CollisionConfig cfg;
        cfg.dt = dt;
        const ComplexMatrix u = step_unitary(model, cfg);
        unitarity.max(frobenius_distance(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols())));
        const SuperOperator channel = collision_channel(model, cfg);
        const ComplexMatrix sigma = rng.density(d).matrix();
        channel_tp.max(std::abs(channel.apply(sigma).trace() - 1.0));
        channel_cp.min(min_hermitian_eigenvalue(choi_matrix(channel.mat)));
    }
    for (double dt : {0.5, 0.01}) {
        for (std::size_t m : {2u, 3u}) {
            ito.max(ito_table_check({dt, m, 0, kDefaultJointBudget}).max_deviation);
        }
    }

    // Conditional expectation identities on a 2-slot-past / 1-slot-future split.
    const std::size_t m = 2;
    const std::size_t slots = 3;
    const std::size_t side = d * 8;
    for (std::size_t cut : {1u, 2u}) {
        const ComplexMatrix a = rng.matrix(side, side);
        const std::size_t past = d * (cut == 1 ? 2 : 4);
        const ComplexMatrix b_past = rng.matrix(past, past);
        const ComplexMatrix b = ampliate(b_past, m, slots - cut);
        module_prop.max(frobenius_distance(
            vacuum_conditional_expectation(a * b, d, m, slots, cut),
            vacuum_conditional_expectation(a, d, m, slots, cut) * b_past));
    }
    {
        const ComplexMatrix x = rng.matrix(side, side);
        const ComplexMatrix inner = vacuum_conditional_expectation(x, d, m, slots, 2);
        tower.max(frobenius_distance(vacuum_conditional_expectation(inner, d, m, 2, 1),
                                     vacuum_conditional_expectation(x, d, m, slots, 1)));
    }

    // Sequential channel recursion and joint state vector agree exactly per
    // discretization.
    CollisionConfig cfg;
    cfg.dt = 1.0 / 8.0;
    const DensityOperator rho = rng.density(d);
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<double> times;
        for (std::size_t k = 0; k < n; ++k) times.push_back(static_cast<double>(rng.index(0, 6)) * cfg.dt);
        std::sort(times.begin(), times.end());
        std::vector<SystemOperator> a_ops, b_ops;
        for (std::size_t k = 0; k < n; ++k) {
            a_ops.push_back(rng.matrix(d, d, 0.7));
            b_ops.push_back(rng.matrix(d, d, 0.7));
        }
        const CorrelationQuery q(times, a_ops, b_ops);
        strategies.max(std::abs(oracle_kernel_sequential(model, rho, q, cfg) -
                                oracle_kernel_joint(model, rho, q, cfg)));
    }
    {
        JointPureState state(rng.unit_vector(d), 4, 2);
        const ComplexMatrix u = step_unitary(model, cfg);
        for (std::size_t s = 0; s < 4; ++s) {
            state.apply_slot_unitary(u, s);
            norm.max(std::abs(state.norm() - 1.0));
        }
    }
    rec.at_most("collision.step_unitarity", unitarity.high(), 1e-10);
    rec.at_most("collision.channel_trace_preservation", channel_tp.high(), 1e-10);
    rec.at_least("collision.channel_choi_min_eigenvalue", channel_cp.low(), -1e-10);
    rec.at_most("collision.joint_norm_preservation", norm.high(), 1e-10);
    rec.at_most("collision.ito_table", ito.high(), 1e-15);
    rec.at_most("collision.conditional_expectation_module_property", module_prop.high(), 1e-12);
    rec.at_most("collision.conditional_expectation_tower", tower.high(), 1e-12);
    rec.at_most("collision.sequential_matches_joint", strategies.high(), 1e-10);
}

void classical_suite(const SystemModel& model, RandomSource& rng, Recorder& rec) {
    const DiagonalInvariance inv = diagonal_invariance_check(model);
    if (!inv.invariant) return;
    const std::size_t d = model.dim();
    const auto n = static_cast<Eigen::Index>(d);
    const DensityOperator rho = rng.diagonal_density(d);
    Eigen::VectorXd p0 = rho.matrix().diagonal().real();
    const ClassicalChain chain = ClassicalChain::from_column_generator(*inv.generator, p0);

    Worst ck, stochastic_neg, stochastic_rows, embed;
    const double s = rng.uniform(0.0, 2.0);
    const double t = rng.uniform(0.0, 2.0);
    ck.max((chain.transition(s + t) - chain.transition(s) * chain.transition(t)).norm());
    for (double tt : {0.1, 1.0, 5.0}) {
        const Eigen::MatrixXd p = chain.transition(tt);
        stochastic_neg.max(-std::min(0.0, p.minCoeff()));
        stochastic_rows.max((p.rowwise().sum() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff());
    }
    for (std::size_t len = 1; len <= 4; ++len) {
        std::vector<double> times;
        std::vector<SystemOperator> b_ops;
        for (std::size_t k = 0; k < len; ++k) {
            times.push_back(rng.uniform(0.0, 2.0));
            Eigen::VectorXd f(n);
            for (Eigen::Index i = 0; i < n; ++i) f(i) = rng.normal();
            b_ops.push_back(f.cast<Complex>().asDiagonal());
        }
        std::sort(times.begin(), times.end());
        embed.max(compare_quantum_classical(model, rho,
                                            CorrelationQuery::with_identity_a(times, b_ops))
                      .diff);
    }
    rec.at_most("classical.chapman_kolmogorov", ck.high(), 1e-10);
    rec.at_most("classical.transition_nonnegative", stochastic_neg.high(), 1e-12);
    rec.at_most("classical.transition_rows_sum_to_one", stochastic_rows.high(), 1e-10);
    rec.at_most("classical.quantum_matches_path_sum", embed.high(), 1e-10);
}

}  // namespace

std::string PropertyResult::bound_text() const {
    switch (kind) {
        case Bound::at_most: return "<= " + io::format_double(upper);
        case Bound::at_least: return ">= " + io::format_double(lower);
        case Bound::within:
            return "in [" + io::format_double(lower) + ", " + io::format_double(upper) + "]";
    }
    return {};
}

bool VerificationReport::all_passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; }));
}

VerificationReport run_verification(const SystemModel& model, std::uint64_t seed) {
    RandomSource rng(seed);
    std::vector<SystemModel> models{model};
    for (std::size_t k = 0; k < kRandomModels; ++k) models.push_back(rng.model(2 + k % 3));

    VerificationReport report;
    Recorder rec(report);
    linalg_suite(rng, rec);
    model_suite(models, rng, rec);
    semigroup_suite(models, rng, rec);
    regression_suite(models, rng, rec);
    collision_suite(model, rng, rec);
    classical_suite(model, rng, rec);
    return report;
}

}  // namespace qregress
