#pragma once

#include "qregress/collision.hpp"
#include "qregress/io.hpp"
#include "qregress/model.hpp"
#include "qregress/regression.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qregress::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kViolation = 2, kIo = 3 };

enum class Mode { qrt_schrodinger, qrt_heisenberg, oracle_sequential, oracle_joint };

Mode parse_mode(const std::string& text);
std::string mode_name(Mode mode);

/// CSV of ρ(t) on a uniform grid of `steps` intervals over [0, t_end]:
/// t, rho_i_j_re, rho_i_j_im (row-major), trace.
std::string cmd_evolve(const SystemModel& model, const DensityOperator& rho, double t_end,
                       std::size_t steps);

/// Kernel value by one of the four evaluation routes. Oracle modes also log
/// the reference regression value and the error at dt and dt/2.
io::json cmd_correlate(const SystemModel& model, const DensityOperator& rho,
                       const CorrelationQuery& q, Mode mode, const CollisionConfig& cfg);

/// Oracle convergence study: error against the regression value at `levels`
/// successive halvings of dt.
io::json cmd_oracle(const SystemModel& model, const DensityOperator& rho,
                    const CorrelationQuery& q, Mode mode, const CollisionConfig& cfg,
                    std::size_t levels);

io::json cmd_ito(const CollisionConfig& cfg);

io::json cmd_classical(const SystemModel& model, const DensityOperator& rho,
                       const CorrelationQuery& q);

/// Joint-mode budget: QREGRESS_BUDGET if set, else the default. An explicit
/// --budget flag takes precedence over both.
std::size_t default_budget();

/// Full command-line entry point. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qregress::cli
