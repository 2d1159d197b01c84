#pragma once

#include "gbap/goldbach.hpp"
#include "gbap/moments.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace gbap {

// Run metadata written ahead of every table.
struct Provenance {
    double T = 0.0;
    std::string b_star = "0.5";
    std::string zeros = "none";
    std::string extra;  // free-form key=value pairs
};

// Column-oriented result table; cells are JSON scalars.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    void add(std::vector<nlohmann::json> row);
};

// %.17g
std::string format_real(double v);

// "# gbap <version> T=... b*=... zeros=..." then a header row and one row per
// record, comma separated, reals with 17 significant digits.
void write_csv(std::ostream& out, const ResultTable& table, const Provenance& prov);
// {"provenance": {...}, "columns": [...], "rows": [{column: value}, ...]}
void write_json(std::ostream& out, const ResultTable& table, const Provenance& prov);

ResultTable decomposition_table(const std::vector<DecompositionReport>& reports);
ResultTable moment_table(const std::vector<MomentResult>& results);

nlohmann::json to_json(const DecompositionReport& r);

} // namespace gbap
