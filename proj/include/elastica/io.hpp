#pragma once

// Curve and table serialization: CSV with '#' metadata lines, JSON, and OBJ
// polylines. Numbers are written with 17 significant digits so identical
// inputs give byte-identical files.

#include <elastica/geometry.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace elastica {

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline const std::vector<std::string>& curve_columns()
{
    static const std::vector<std::string> cols{
        "s",  "kappa", "tau", "rho", "theta", "z",  "x",  "y",  "tx",
        "ty", "tz",    "nx",  "ny",  "nz",    "bx", "by", "bz", "Theta_darboux"};
    return cols;
}

inline std::vector<double> curve_row(const CurveSample& c)
{
    return {c.s,        c.kappa,    c.tau,      c.rho,      c.theta,    c.z,
            c.r[0],     c.r[1],     c.t_hat[0], c.t_hat[1], c.t_hat[2], c.n_hat[0],
            c.n_hat[1], c.n_hat[2], c.b_hat[0], c.b_hat[1], c.b_hat[2], c.Theta_darboux};
}

inline void write_metadata(std::ostream& os, const Metadata& meta, const char* prefix)
{
    for (const auto& [k, v] : meta) os << prefix << k << '=' << v << '\n';
}

/// Generic CSV table: metadata lines, header row, rows.
inline void write_table_csv(std::ostream& os, const Metadata& meta, const std::vector<std::string>& columns,
                            const std::vector<std::vector<double>>& rows)
{
    write_metadata(os, meta, "# ");
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

inline void write_curve_csv(std::ostream& os, const Metadata& meta, const std::vector<CurveSample>& samples)
{
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& c : samples) rows.push_back(curve_row(c));
    write_table_csv(os, meta, curve_columns(), rows);
}

namespace detail {

// JSON cannot carry inf/nan; those become strings.
inline nlohmann::json json_number(double x)
{
    if (std::isfinite(x)) return x;
    return format_double(x);
}

} // namespace detail

inline nlohmann::json table_json(const Metadata& meta, const std::vector<std::string>& columns,
                                 const std::vector<std::vector<double>>& rows)
{
    nlohmann::json j;
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : meta) m[k] = v;
    j["metadata"] = m;
    j["columns"] = columns;
    nlohmann::json data = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double x : row) r.push_back(detail::json_number(x));
        data.push_back(std::move(r));
    }
    j["rows"] = std::move(data);
    return j;
}

inline void write_table_json(std::ostream& os, const Metadata& meta, const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows)
{
    os << table_json(meta, columns, rows).dump(1) << '\n';
}

inline void write_curve_json(std::ostream& os, const Metadata& meta, const std::vector<CurveSample>& samples)
{
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& c : samples) rows.push_back(curve_row(c));
    write_table_json(os, meta, curve_columns(), rows);
}

/// OBJ polyline: one vertex per sample and a single line element.
inline void write_curve_obj(std::ostream& os, const Metadata& meta, const std::vector<CurveSample>& samples)
{
    write_metadata(os, meta, "# ");
    for (const auto& c : samples) {
        os << "v " << format_double(c.r[0]) << ' ' << format_double(c.r[1]) << ' ' << format_double(c.r[2]) << '\n';
    }
    if (samples.size() >= 2) {
        os << 'l';
        for (std::size_t i = 1; i <= samples.size(); ++i) os << ' ' << i;
        os << '\n';
    }
}

} // namespace elastica
