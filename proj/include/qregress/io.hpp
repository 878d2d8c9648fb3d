#pragma once

#include "qregress/model.hpp"
#include "qregress/regression.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace qregress::io {

using nlohmann::json;

// Matrices are row lists of [re, im] pairs; a bare number is read as real.
ComplexMatrix matrix_from_json(const json& j, const std::string& where);
json matrix_to_json(const ComplexMatrix& m);
json complex_to_json(Complex z);

/// {"dim": d, "H": ..., "L": ...}
SystemModel model_from_json(const json& j, const std::string& where);
/// {"rho": matrix} or {"psi": [[re, im], ...]} for a pure state.
DensityOperator density_from_json(const json& j, const std::string& where);
/// {"times": [...], "a_ops": [...], "b_ops": [...]}; a_ops defaults to identities.
CorrelationQuery query_from_json(const json& j, std::size_t dim, const std::string& where);

json model_to_json(const SystemModel& model);
json query_to_json(const CorrelationQuery& q);

/// Reads and parses a JSON file. IoError if unreadable or not valid JSON.
json read_json(const std::filesystem::path& path);

SystemModel load_model(const std::filesystem::path& path);
DensityOperator load_density(const std::filesystem::path& path);
CorrelationQuery load_query(const std::filesystem::path& path, std::size_t dim);

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double x);

}  // namespace qregress::io
