#include "qregress/io.hpp"

#include "qregress/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qregress::io {

namespace {

Complex complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ValidationError(where + ": expected a number or an [re, im] pair");
}

const json& require_field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError(where + ": missing field '" + key + "'");
    return *it;
}

std::vector<SystemOperator> operator_list(const json& j, std::size_t dim,
                                          const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected a list of matrices");
    std::vector<SystemOperator> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        ComplexMatrix m = matrix_from_json(j[k], where + "[" + std::to_string(k) + "]");
        if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
            throw DimensionError(where + "[" + std::to_string(k) + "]: expected " +
                                 std::to_string(dim) + "x" + std::to_string(dim));
        }
        out.push_back(std::move(m));
    }
    return out;
}

template <typename T, typename Parse>
T with_file_context(const std::filesystem::path& path, Parse&& parse) {
    const json doc = read_json(path);
    return parse(doc, path.string());
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty list of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array()) throw ValidationError(where + ": row 0 is not a list");
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_where = where + " row " + std::to_string(r);
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ValidationError(row_where + ": expected " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], row_where + " col " + std::to_string(c));
        }
    }
    return m;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

SystemModel model_from_json(const json& j, const std::string& where) {
    const json& dim_field = require_field(j, "dim", where);
    if (!dim_field.is_number_integer()) throw ValidationError(where + ": field 'dim' must be an integer");
    const auto dim = dim_field.get<long long>();
    const ComplexMatrix h = matrix_from_json(require_field(j, "H", where), where + ": field 'H'");
    const ComplexMatrix l = matrix_from_json(require_field(j, "L", where), where + ": field 'L'");
    if (dim < 2) throw DimensionError(where + ": field 'dim' must be at least 2");
    if (h.rows() != dim || h.cols() != dim) {
        throw DimensionError(where + ": field 'H' is not " + std::to_string(dim) + "x" +
                             std::to_string(dim));
    }
    if (l.rows() != dim || l.cols() != dim) {
        throw DimensionError(where + ": field 'L' is not " + std::to_string(dim) + "x" +
                             std::to_string(dim));
    }
    try {
        return SystemModel(h, l);
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

DensityOperator density_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_object() && j.contains("psi")) {
            const json& psi = j["psi"];
            if (!psi.is_array() || psi.empty()) throw ValidationError("field 'psi' must be a non-empty list");
            ComplexVector v(static_cast<Eigen::Index>(psi.size()));
            for (std::size_t k = 0; k < psi.size(); ++k) {
                v(static_cast<Eigen::Index>(k)) =
                    complex_from_json(psi[k], "field 'psi' entry " + std::to_string(k));
            }
            return DensityOperator::pure(v);
        }
        return DensityOperator(matrix_from_json(require_field(j, "rho", where), "field 'rho'"));
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw ValidationError(where + ": " + msg);
    }
}

CorrelationQuery query_from_json(const json& j, std::size_t dim, const std::string& where) {
    const json& times_field = require_field(j, "times", where);
    if (!times_field.is_array()) throw ValidationError(where + ": field 'times' must be a list");
    std::vector<double> times;
    for (const auto& t : times_field) {
        if (!t.is_number()) throw ValidationError(where + ": field 'times' must hold numbers");
        times.push_back(t.get<double>());
    }
    std::vector<SystemOperator> b_ops =
        operator_list(require_field(j, "b_ops", where), dim, where + ": field 'b_ops'");
    std::vector<SystemOperator> a_ops;
    if (j.contains("a_ops")) {
        a_ops = operator_list(j["a_ops"], dim, where + ": field 'a_ops'");
    } else {
        a_ops.assign(b_ops.size(), ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                                           static_cast<Eigen::Index>(dim)));
    }
    try {
        return CorrelationQuery(std::move(times), std::move(a_ops), std::move(b_ops));
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

json model_to_json(const SystemModel& model) {
    return {{"dim", model.dim()},
            {"H", matrix_to_json(model.hamiltonian())},
            {"L", matrix_to_json(model.coupling())}};
}

json query_to_json(const CorrelationQuery& q) {
    json a = json::array();
    json b = json::array();
    for (std::size_t k = 0; k < q.size(); ++k) {
        a.push_back(matrix_to_json(q.a_ops()[k]));
        b.push_back(matrix_to_json(q.b_ops()[k]));
    }
    return {{"times", q.times()}, {"a_ops", std::move(a)}, {"b_ops", std::move(b)}};
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw IoError(path.string() + ": invalid JSON: " + e.what());
    }
}

SystemModel load_model(const std::filesystem::path& path) {
    return with_file_context<SystemModel>(path, model_from_json);
}

DensityOperator load_density(const std::filesystem::path& path) {
    return with_file_context<DensityOperator>(path, density_from_json);
}

CorrelationQuery load_query(const std::filesystem::path& path, std::size_t dim) {
    return with_file_context<CorrelationQuery>(
        path, [dim](const json& j, const std::string& where) { return query_from_json(j, dim, where); });
}

std::string format_double(double x) {
    // %.17g without the locale: always round-trips, never a ',' decimal.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace qregress::io
