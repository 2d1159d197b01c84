#include "gbap/report_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace gbap {

namespace {

std::string cell(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_null()) return "";
    return v.dump();
}

nlohmann::json real(double v) {
    // JSON has no inf / nan
    if (!std::isfinite(v)) return format_real(v);
    return v;
}

} // namespace

void ResultTable::add(std::vector<nlohmann::json> row) {
    if (row.size() != columns.size()) throw std::logic_error("result row width does not match the columns");
    rows.push_back(std::move(row));
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const ResultTable& table, const Provenance& prov) {
    out << "# gbap " << GBAP_VERSION << " T=" << format_real(prov.T) << " b*=" << prov.b_star
        << " zeros=" << prov.zeros;
    if (!prov.extra.empty()) out << ' ' << prov.extra;
    out << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const ResultTable& table, const Provenance& prov) {
    nlohmann::json doc;
    doc["provenance"] = {{"version", GBAP_VERSION},
                         {"T", real(prov.T)},
                         {"b_star", prov.b_star},
                         {"zeros", prov.zeros},
                         {"extra", prov.extra}};
    doc["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

ResultTable decomposition_table(const std::vector<DecompositionReport>& reports) {
    ResultTable t;
    t.columns = {"X", "S", "main", "H1", "H2", "Z", "E", "bound_ratio", "q1", "q2", "a1", "a2", "zeros1", "zeros2"};
    for (const auto& r : reports)
        t.add({real(r.X), real(r.S_exact), real(r.main_term), real(r.h1_term), real(r.h2_term), real(r.z_term),
               real(r.residual), real(r.bound_ratio), r.q1, r.q2, r.a1, r.a2, r.zeros_used1, r.zeros_used2});
    return t;
}

ResultTable moment_table(const std::vector<MomentResult>& results) {
    ResultTable t;
    t.columns = {"x", "h", "q", "a", "value", "bound_ratio", "segment_count"};
    for (const auto& r : results)
        t.add({real(r.x), real(r.h), r.q, r.a, real(r.value), real(r.bound_ratio), r.segment_count});
    return t;
}

nlohmann::json to_json(const DecompositionReport& r) {
    return {
        {"X", real(r.X)},
        {"q1", r.q1},
        {"q2", r.q2},
        {"a1", r.a1},
        {"a2", r.a2},
        {"T", real(r.T)},
        {"b_star1", real(r.b_star1)},
        {"b_star2", real(r.b_star2)},
        {"S_exact", real(r.S_exact)},
        {"main_term", real(r.main_term)},
        {"h1_term", real(r.h1_term)},
        {"h2_term", real(r.h2_term)},
        {"z_term", real(r.z_term)},
        {"residual", real(r.residual)},
        {"bound", real(r.bound)},
        {"bound_ratio", real(r.bound_ratio)},
        {"h1_imag_residual", real(r.h1_imag_residual)},
        {"h2_imag_residual", real(r.h2_imag_residual)},
        {"zeros_used1", r.zeros_used1},
        {"zeros_used2", r.zeros_used2},
        {"z_tail_estimate", real(r.z_tail_estimate)},
        {"siegel1", r.siegel1},
        {"siegel2", r.siegel2},
        {"zero_provenance", r.zero_provenance},
    };
}

} // namespace gbap
