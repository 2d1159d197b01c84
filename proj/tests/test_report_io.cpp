#include "doctest.h"

#include "gbap/report_io.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>

using namespace gbap;

TEST_CASE("real formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, -1e-300, 14.134725141734695}) CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("csv layout") {
    ResultTable t;
    t.columns = {"x", "value", "pass"};
    t.add({16, 0.1, true});
    t.add({32, std::numeric_limits<double>::quiet_NaN(), false});
    Provenance p;
    p.T = 500;
    p.zeros = "sets=3";
    std::ostringstream out;
    write_csv(out, t, p);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# gbap ", 0) == 0);
    CHECK(line.find("T=500") != std::string::npos);
    CHECK(line.find("zeros=sets=3") != std::string::npos);
    std::getline(in, line);
    CHECK(line == "x,value,pass");
    std::getline(in, line);
    CHECK(line == "16,0.10000000000000001,1");
    std::getline(in, line);
    CHECK(line.rfind("32,", 0) == 0);
    CHECK(line.back() == '0');
}

TEST_CASE("json layout") {
    DecompositionReport r;
    r.X = 1000;
    r.S_exact = 123.5;
    r.residual = -2.25;
    const ResultTable t = decomposition_table({r});
    std::ostringstream out;
    write_json(out, t, Provenance{});
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j.contains("provenance"));
    CHECK(j["columns"].size() == t.columns.size());
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["X"] == 1000.0);
    CHECK(j["rows"][0]["S"] == 123.5);
    CHECK(j["rows"][0]["E"] == -2.25);
    CHECK(to_json(r)["S_exact"] == 123.5);
}

TEST_CASE("moment table") {
    MomentResult m;
    m.x = 64;
    m.h = 8;
    m.value = 2.5;
    const ResultTable t = moment_table({m, m});
    CHECK(t.rows.size() == 2);
    CHECK(t.columns.front() == "x");
}
