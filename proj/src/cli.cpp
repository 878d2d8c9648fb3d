#include "qregress/cli.hpp"

#include "qregress/classical.hpp"
#include "qregress/errors.hpp"
#include "qregress/semigroup.hpp"
#include "qregress/verify.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qregress::cli {

namespace {

using io::format_double;
using io::json;

constexpr double kEmbeddingTol = 1e-10;

struct Options {
    std::string model_path;
    std::string rho_path;
    std::string query_path;
    std::string out_path;
    std::string mode = "qrt-schrodinger";
    std::string oracle_mode = "oracle-seq";
    double dt = 1.0 / 64.0;
    std::size_t trunc = 2;
    std::optional<std::size_t> budget;
    double t_end = 1.0;
    long long steps = 100;
    std::uint64_t seed = 1;
    std::size_t levels = 3;
};

CollisionConfig collision_config(const Options& o) {
    CollisionConfig cfg;
    cfg.dt = o.dt;
    cfg.trunc = o.trunc;
    cfg.budget = o.budget.value_or(default_budget());
    cfg.validate();
    return cfg;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw IoError("cannot write " + o.out_path);
    file << text;
    if (!file) throw IoError("write failed for " + o.out_path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Oracle value at one resolution, or nullopt if the joint budget is exceeded.
std::optional<Complex> oracle_value(const SystemModel& model, const DensityOperator& rho,
                                    const CorrelationQuery& q, Mode mode,
                                    const CollisionConfig& cfg) {
    if (mode == Mode::oracle_sequential) return oracle_kernel_sequential(model, rho, q, cfg);
    try {
        return oracle_kernel_joint(model, rho, q, cfg);
    } catch (const BudgetError&) {
        return std::nullopt;
    }
}

Complex regression_value(const SystemModel& model, const DensityOperator& rho,
                         const CorrelationQuery& q) {
    if (q.is_time_ordered()) return kernel_schrodinger(model, rho, q);
    throw TimeOrderError("regression reference needs nondecreasing times");
}

}  // namespace

Mode parse_mode(const std::string& text) {
    if (text == "qrt-schrodinger") return Mode::qrt_schrodinger;
    if (text == "qrt-heisenberg") return Mode::qrt_heisenberg;
    if (text == "oracle-seq") return Mode::oracle_sequential;
    if (text == "oracle-joint") return Mode::oracle_joint;
    throw ValidationError("unknown mode '" + text +
                          "' (expected qrt-schrodinger, qrt-heisenberg, oracle-seq, oracle-joint)");
}

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::qrt_schrodinger: return "qrt-schrodinger";
        case Mode::qrt_heisenberg: return "qrt-heisenberg";
        case Mode::oracle_sequential: return "oracle-seq";
        case Mode::oracle_joint: return "oracle-joint";
    }
    return {};
}

std::size_t default_budget() {
    const char* env = std::getenv("QREGRESS_BUDGET");
    if (env == nullptr || *env == '\0') return kDefaultJointBudget;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        throw ValidationError(std::string("QREGRESS_BUDGET must be a positive integer, got '") +
                              env + "'");
    }
    return static_cast<std::size_t>(v);
}

std::string cmd_evolve(const SystemModel& model, const DensityOperator& rho, double t_end,
                       std::size_t steps) {
    if (steps == 0) throw ValidationError("evolve: --steps must be at least 1");
    if (!(t_end > 0.0)) throw ValidationError("evolve: --t-end must be positive");
    if (rho.dim() != model.dim()) throw DimensionError("evolve: model and rho dimensions differ");
    const std::size_t d = model.dim();
    const double h = t_end / static_cast<double>(steps);
    const SuperOperator step = propagator(model, h, Picture::schrodinger);

    std::ostringstream csv;
    csv << "t";
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            csv << ",rho_" << i << '_' << j << "_re,rho_" << i << '_' << j << "_im";
        }
    }
    csv << ",trace\n";

    ComplexMatrix state = rho.matrix();
    for (std::size_t k = 0; k <= steps; ++k) {
        if (k > 0) state = step.apply(state);
        csv << format_double(static_cast<double>(k) * h);
        for (Eigen::Index i = 0; i < state.rows(); ++i) {
            for (Eigen::Index j = 0; j < state.cols(); ++j) {
                csv << ',' << format_double(state(i, j).real()) << ','
                    << format_double(state(i, j).imag());
            }
        }
        csv << ',' << format_double(state.trace().real()) << '\n';
    }
    return csv.str();
}

json cmd_correlate(const SystemModel& model, const DensityOperator& rho,
                   const CorrelationQuery& q, Mode mode, const CollisionConfig& cfg) {
    json result = {{"mode", mode_name(mode)}, {"query", io::query_to_json(q)}};
    switch (mode) {
        case Mode::qrt_schrodinger:
            result["value"] = io::complex_to_json(kernel_schrodinger(model, rho, q));
            return result;
        case Mode::qrt_heisenberg:
            result["value"] = io::complex_to_json(kernel_heisenberg(model, rho, q));
            return result;
        case Mode::oracle_sequential:
        case Mode::oracle_joint: break;
    }

    const Complex value = mode == Mode::oracle_sequential
                              ? oracle_kernel_sequential(model, rho, q, cfg)
                              : oracle_kernel_joint(model, rho, q, cfg);
    result["value"] = io::complex_to_json(value);
    result["dt"] = cfg.dt;
    result["trunc"] = cfg.trunc;
    if (!q.is_time_ordered()) return result;

    const Complex reference = regression_value(model, rho, q);
    result["reference"] = io::complex_to_json(reference);
    json trend = json::array({{{"dt", cfg.dt}, {"error", std::abs(value - reference)}}});
    CollisionConfig half = cfg;
    half.dt = cfg.dt / 2.0;
    if (const auto refined = oracle_value(model, rho, q, mode, half)) {
        const double err_half = std::abs(*refined - reference);
        trend.push_back({{"dt", half.dt}, {"error", err_half}});
        if (err_half > 0.0) result["error_ratio"] = std::abs(value - reference) / err_half;
    }
    result["trend"] = std::move(trend);
    return result;
}

json cmd_oracle(const SystemModel& model, const DensityOperator& rho, const CorrelationQuery& q,
                Mode mode, const CollisionConfig& cfg, std::size_t levels) {
    if (mode != Mode::oracle_sequential && mode != Mode::oracle_joint) {
        throw ValidationError("oracle: --mode must be oracle-seq or oracle-joint");
    }
    if (levels == 0) throw ValidationError("oracle: --levels must be at least 1");
    const Complex reference = regression_value(model, rho, q);
    json runs = json::array();
    json ratios = json::array();
    double previous = -1.0;
    CollisionConfig current = cfg;
    for (std::size_t k = 0; k < levels; ++k, current.dt /= 2.0) {
        const Complex value = mode == Mode::oracle_sequential
                                  ? oracle_kernel_sequential(model, rho, q, current)
                                  : oracle_kernel_joint(model, rho, q, current);
        const double err = std::abs(value - reference);
        runs.push_back({{"dt", current.dt}, {"value", io::complex_to_json(value)}, {"error", err}});
        if (previous >= 0.0 && err > 0.0) ratios.push_back(previous / err);
        previous = err;
    }
    return {{"mode", mode_name(mode)},
            {"trunc", cfg.trunc},
            {"reference", io::complex_to_json(reference)},
            {"runs", std::move(runs)},
            {"error_ratios", std::move(ratios)}};
}

json cmd_ito(const CollisionConfig& cfg) {
    const ItoReport r = ito_table_check(cfg);
    const CommutatorReport c = field_commutator_check(cfg.dt, cfg.trunc, {1.0}, {1.0});
    return {{"dt", r.dt},
            {"trunc", r.trunc},
            {"dB_dBdag", io::complex_to_json(r.db_dbdag)},
            {"dBdag_dB", io::complex_to_json(r.dbdag_db)},
            {"dB_dB", io::complex_to_json(r.db_db)},
            {"dBdag_dBdag", io::complex_to_json(r.dbdag_dbdag)},
            {"max_deviation", r.max_deviation},
            {"commutator_expected", io::complex_to_json(c.expected)},
            {"commutator_vacuum", io::complex_to_json(c.vacuum_expectation)},
            {"commutator_max_deviation", c.max_deviation}};
}

json cmd_classical(const SystemModel& model, const DensityOperator& rho,
                   const CorrelationQuery& q) {
    const QuantumClassicalComparison cmp = compare_quantum_classical(model, rho, q);
    const DiagonalInvariance inv = diagonal_invariance_check(model);
    json gen = json::array();
    for (Eigen::Index i = 0; i < inv.generator->rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < inv.generator->cols(); ++j) row.push_back((*inv.generator)(i, j));
        gen.push_back(std::move(row));
    }
    return {{"quantum", io::complex_to_json(cmp.quantum)},
            {"classical", cmp.classical},
            {"diff", cmp.diff},
            {"bound", kEmbeddingTol},
            {"column_generator", std::move(gen)}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum regression kernels with a collision-model oracle", "qregress"};
    app.require_subcommand(1);
    Options o;

    const auto add_model = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--model", o.model_path, "Model JSON {dim, H, L}");
        if (required) opt->required();
    };
    const auto add_state = [&](CLI::App* c) {
        c->add_option("--rho", o.rho_path, "Initial state JSON {rho} or {psi}")->required();
    };
    const auto add_query = [&](CLI::App* c) {
        c->add_option("--query", o.query_path, "Query JSON {times, a_ops, b_ops}")->required();
    };
    const auto add_collision = [&](CLI::App* c) {
        c->add_option("--dt", o.dt, "Collision step");
        c->add_option("--trunc", o.trunc, "Ancilla truncation (levels)");
        c->add_option("--budget", o.budget, "Joint-mode amplitude budget");
    };
    const auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out_path, "Output file"); };

    auto* evolve = app.add_subcommand("evolve", "Time series of rho(t) as CSV");
    add_model(evolve, true);
    add_state(evolve);
    evolve->add_option("--t-end", o.t_end, "Final time");
    evolve->add_option("--steps", o.steps, "Number of grid intervals");
    add_out(evolve);

    auto* correlate = app.add_subcommand("correlate", "Evaluate one correlation kernel");
    add_model(correlate, true);
    add_state(correlate);
    add_query(correlate);
    correlate->add_option("--mode", o.mode, "qrt-schrodinger | qrt-heisenberg | oracle-seq | oracle-joint");
    add_collision(correlate);
    add_out(correlate);

    auto* oracle = app.add_subcommand("oracle", "Oracle convergence study over halved dt");
    add_model(oracle, true);
    add_state(oracle);
    add_query(oracle);
    oracle->add_option("--mode", o.oracle_mode, "oracle-seq | oracle-joint");
    oracle->add_option("--levels", o.levels, "Number of resolutions");
    add_collision(oracle);
    add_out(oracle);

    auto* ito = app.add_subcommand("ito", "Vacuum moments of the discretized increment");
    ito->add_option("--dt", o.dt, "Slot duration");
    ito->add_option("--trunc", o.trunc, "Ancilla truncation (levels)");
    add_out(ito);

    auto* verify = app.add_subcommand("verify", "Run every invariant suite");
    add_model(verify, false);
    verify->add_option("--seed", o.seed, "Seed for randomized suites");
    add_out(verify);

    auto* classical = app.add_subcommand("classical", "Compare with the induced classical chain");
    add_model(classical, true);
    add_state(classical);
    add_query(classical);
    add_out(classical);

    std::vector<std::string> argv_store = {"qregress"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kValidation;
    }

    try {
        if (evolve->parsed()) {
            if (o.steps < 1) throw ValidationError("evolve: --steps must be at least 1");
            const SystemModel model = io::load_model(o.model_path);
            const DensityOperator rho = io::load_density(o.rho_path);
            emit(cmd_evolve(model, rho, o.t_end, static_cast<std::size_t>(o.steps)), o, out);
            return kOk;
        }
        if (correlate->parsed() || oracle->parsed()) {
            const Mode mode = parse_mode(oracle->parsed() ? o.oracle_mode : o.mode);
            const SystemModel model = io::load_model(o.model_path);
            const DensityOperator rho = io::load_density(o.rho_path);
            const CorrelationQuery q = io::load_query(o.query_path, model.dim());
            const CollisionConfig cfg = collision_config(o);
            const json result = correlate->parsed() ? cmd_correlate(model, rho, q, mode, cfg)
                                                    : cmd_oracle(model, rho, q, mode, cfg, o.levels);
            if (result.contains("trend")) {
                for (const auto& row : result["trend"]) {
                    err << "oracle dt=" << format_double(row["dt"].get<double>())
                        << " error=" << format_double(row["error"].get<double>()) << '\n';
                }
            }
            emit(dump(result), o, out);
            return kOk;
        }
        if (ito->parsed()) {
            CollisionConfig cfg;
            cfg.dt = o.dt;
            cfg.trunc = o.trunc;
            cfg.validate();
            emit(dump(cmd_ito(cfg)), o, out);
            return kOk;
        }
        if (classical->parsed()) {
            const SystemModel model = io::load_model(o.model_path);
            const DensityOperator rho = io::load_density(o.rho_path);
            const CorrelationQuery q = io::load_query(o.query_path, model.dim());
            const json result = cmd_classical(model, rho, q);
            emit(dump(result), o, out);
            return result["diff"].get<double>() <= kEmbeddingTol ? kOk : kViolation;
        }
        if (verify->parsed()) {
            const SystemModel model =
                o.model_path.empty() ? atom::decay_model(1.0) : io::load_model(o.model_path);
            const VerificationReport report = run_verification(model, o.seed);
            std::ostringstream text;
            for (const auto& r : report.results) {
                text << (r.pass ? "PASS " : "FAIL ") << r.name
                     << " measured=" << format_double(r.measured) << " bound " << r.bound_text()
                     << '\n';
            }
            text << (report.all_passed() ? "verify: all " : "verify: ")
                 << (report.all_passed() ? std::to_string(report.results.size())
                                         : std::to_string(report.failures()) + " of " +
                                               std::to_string(report.results.size()))
                 << (report.all_passed() ? " properties within bounds\n" : " properties violated\n");
            emit(text.str(), o, out);
            return report.all_passed() ? kOk : kViolation;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kViolation;
    }
    return kValidation;
}

}  // namespace qregress::cli
