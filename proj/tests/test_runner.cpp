#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "meancomp/runner.hpp"

using namespace meancomp;
using nlohmann::json;

namespace {

std::string amgm_config() {
    return R"({
      "n": 2,
      "interval": [0, "inf"],
      "window": [0.5, 4.0],
      "means": {
        "fp": {"generator": {"power": 0.0},
               "weights": {"lambda": [1.0, 1.0], "alpha": [0.0, 0.0]}},
        "gq": {"generator": {"power": 1.0},
               "weights": {"lambda": [1.0, 1.0], "alpha": [0.0, 0.0]}}
      },
      "search": {"seed": 99}
    })";
}

std::string dsl_config(const char* f, const char* g) {
    json cfg;
    cfg["n"] = 2;
    cfg["interval"] = {0.25, 9.0};
    cfg["window"] = {0.5, 4.0};
    cfg["means"]["fp"]["generator"] = f;
    cfg["means"]["fp"]["weights"] = {"1", "1"};
    cfg["means"]["gq"]["generator"] = g;
    cfg["means"]["gq"]["weights"] = {"1", "1"};
    cfg["search"]["seed"] = 4242;
    return cfg.dump();
}

}  // namespace

TEST_CASE("run_compare_config: AM-GM power preset end to end") {
    RunOutputs out = run_compare_config(amgm_config());
    CHECK_FALSE(out.refuted);

    json report = json::parse(out.report_json);
    CHECK(report["conclusions"]["locally_smaller"]["status"] == "implied");
    CHECK(report["conclusions"]["globally_smaller"]["status"] == "implied");
    CHECK(report["conclusions"]["globally_smaller"]["justified_by"] ==
          rules::power_global);
    CHECK(report["conclusions"]["globally_smaller"]["certification"] == "closed_form");
    CHECK(report["power_family"]["proportional"] == true);
    CHECK(report["power_family"]["gamma"] == 1.0);
    CHECK(report["power_family"]["delta"] == 0.0);

    // every enabled check appears exactly once
    const json& checks = report["checks"];
    for (const char* key : {"first_order", "ratio_monotone", "hessian_definite", "gsc",
                            "gsc_plus", "gsc_power"})
        CHECK(checks.contains(key));
    CHECK(checks["first_order"]["status"] == "holds");
    CHECK(report["search"]["max_gap"]["witness"].is_null());

    // nonpositive gap landscape
    REQUIRE(out.csv.has_value());
    std::istringstream lines(*out.csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "x,y,mean_fp,mean_gq,gap");
    std::string row;
    int rows = 0;
    while (std::getline(lines, row)) {
        ++rows;
        auto last = row.rfind(',');
        double gap = std::stod(row.substr(last + 1));
        CHECK(gap <= 1e-9);
    }
    CHECK(rows == 32 * 32);
}

TEST_CASE("run_compare_config: quadratic vs arithmetic is refuted with a witness") {
    std::string cfg = amgm_config();
    json j = json::parse(cfg);
    j["means"]["fp"]["generator"]["power"] = 2.0;
    RunOutputs out = run_compare_config(j.dump());
    CHECK(out.refuted);
    json report = json::parse(out.report_json);
    CHECK(report["conclusions"]["locally_smaller"]["status"] == "refuted");
    CHECK(report["conclusions"]["locally_smaller"]["justified_by"] == rules::power_local);
    CHECK_FALSE(report["search"]["max_gap"]["witness"].is_null());
    double gap = report["search"]["max_gap"]["witness"]["gap"].get<double>();
    CHECK(gap > 1e-6);
}

TEST_CASE("run_compare_config: DSL means and the shared-weight battery") {
    RunOutputs out = run_compare_config(dsl_config("x", "x^2"));
    CHECK_FALSE(out.refuted);
    json report = json::parse(out.report_json);
    CHECK(report["checks"].contains("shared_weight_battery"));
    CHECK(report["checks"]["shared_weight_battery"]["consistent"] == true);
    CHECK(report["conclusions"]["globally_smaller"]["status"] == "implied");
    CHECK_FALSE(report.contains("power_family"));
}

TEST_CASE("run_compare_config: overrides merge into the configuration") {
    std::string overrides = R"({"search": {"seed": 123}, "grid": {"samples": 64, "pair": 48},
                                "csv": {"resolution": 8}})";
    RunOutputs out = run_compare_config(amgm_config(), overrides);
    json report = json::parse(out.report_json);
    CHECK(report["setup"]["seed"] == 123);
    CHECK(report["setup"]["grid"]["samples"] == 64);
    REQUIRE(out.csv.has_value());
    int rows = 0;
    std::istringstream lines(*out.csv);
    std::string row;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 8 * 8 + 1);
}

TEST_CASE("csv output is bit-stable for a fixed config and seed") {
    RunOutputs a = run_compare_config(amgm_config());
    RunOutputs b = run_compare_config(amgm_config());
    REQUIRE(a.csv.has_value());
    CHECK(*a.csv == *b.csv);
    CHECK(a.report_json == b.report_json);
}

TEST_CASE("config errors are typed and descriptive") {
    CHECK_THROWS_AS(run_compare_config("not json"), ConfigError);
    CHECK_THROWS_AS(run_compare_config("{}"), ConfigError);
    CHECK_THROWS_AS(run_compare_config(R"({"n": 1, "interval": [0, 1]})"), ConfigError);
    CHECK_THROWS_AS(run_compare_config(R"({"n": 2, "interval": [1, 0],
        "means": {"fp": {"generator": "x", "weights": ["1","1"]},
                  "gq": {"generator": "x", "weights": ["1","1"]}}})"),
                    ConfigError);

    // a generator that is not strictly monotone on the interval
    json j = json::parse(dsl_config("x^2", "x"));
    j["interval"] = {-1.0, 1.0};
    j["window"] = {-0.5, 0.5};
    CHECK_THROWS_AS(run_compare_config(j.dump()), ConfigError);

    // malformed DSL inside the config is a config error with context
    try {
        run_compare_config(dsl_config("x +", "x"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("means.fp") != std::string::npos);
    }

    // window outside the interval
    json k = json::parse(amgm_config());
    k["window"] = {-1.0, 4.0};
    CHECK_THROWS_AS(run_compare_config(k.dump()), ConfigError);
}

TEST_CASE("mixed preset: DSL generators with power weights enable gsc_power") {
    json cfg;
    cfg["n"] = 2;
    cfg["interval"] = {0.0, "inf"};
    cfg["window"] = {0.5, 4.0};
    cfg["means"]["fp"]["generator"] = "log(x)";
    cfg["means"]["fp"]["weights"] = {{"lambda", {1.0, 1.0}}, {"alpha", {0.0, 0.0}}};
    cfg["means"]["gq"]["generator"] = "x";
    cfg["means"]["gq"]["weights"] = {{"lambda", {2.0, 2.0}}, {"alpha", {0.0, 0.0}}};
    cfg["search"]["seed"] = 5;
    RunOutputs out = run_compare_config(cfg.dump());
    json report = json::parse(out.report_json);
    CHECK(report["checks"].contains("gsc_power"));
    CHECK(report["checks"]["gsc_power"]["status"] == "holds");
    CHECK_FALSE(report.contains("power_family"));  // generators are not presets
    CHECK(report["conclusions"]["globally_smaller"]["status"] == "implied");
}
