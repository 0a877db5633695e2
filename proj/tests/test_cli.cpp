#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "layerbound/error.hpp"
#include "layerbound/oracles.hpp"
#include "layerbound/run.hpp"
#include "layerbound/sampled_chart.hpp"

using namespace layerbound;
using namespace layerbound::cli;
using nlohmann::json;

namespace {

RunOutput run_json(const std::string& text) { return run(parse_config(json::parse(text))); }

json report_of(const RunOutput& out) {
  REQUIRE_FALSE(out.report.empty());
  return json::parse(out.report);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("bound mode on the sphere") {
  const RunOutput out = run_json(
      R"({"mode":"bound","a":1,"surface":{"name":"sphere","R":2},"grid_n":2000})");
  CHECK(out.exit_code == kOk);
  const json r = report_of(out);
  CHECK(r["lower_bound"].get<double>() ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 4.0).epsilon(1e-9));
  CHECK(r["hypothesis"]["pass"].get<bool>());
  CHECK(r["floor"].is_number());
  CHECK(r["assumptions"].size() == 2);
}

TEST_CASE("bound mode hypothesis failure exits 2") {
  const RunOutput out =
      run_json(R"({"mode":"bound","a":2,"surface":{"name":"sphere","R":2},"grid_n":100})");
  CHECK(out.exit_code == kHypothesisFailure);
  CHECK_FALSE(out.diagnostics.empty());
  CHECK(report_of(out)["hypothesis"]["pass"].get<bool>() == false);
}

TEST_CASE("bound mode from a sampled chart file") {
  const std::string path = "cli_test_torus_chart.txt";
  {
    std::ofstream f(path);
    write_sampled_chart(f, surfaces::torus(2.0, 0.5), {128, 128});
  }
  const RunOutput out = run_json(R"({"mode":"bound","a":0.25,"surface":{"file":")" + path +
                                 R"("},"grid_n":500})");
  CHECK(out.exit_code == kOk);
  CHECK(report_of(out)["branch"] == "k1_minus,k2_plus");
  std::remove(path.c_str());
}

TEST_CASE("lambda1 mode on the degenerate pair") {
  const RunOutput out =
      run_json(R"({"mode":"lambda1","a":1,"pair":{"kappa1":-1,"kappa2":1},"grid_n":500})");
  CHECK(out.exit_code == kOk);
  const json r = report_of(out)["result"];
  CHECK(r["extrapolated"] == false);
  CHECK(r["decreasing"] == true);
  CHECK(r["sequence"].size() == 2);
  CHECK(r["eigenvector"].size() == r["nodes"].size());
}

TEST_CASE("sweep mode table") {
  const RunOutput out = run_json(
      R"({"mode":"sweep","a":1,"pair":{"kappa1":0,"kappa2":0},
          "sweep":{"axis":"kappa2","from":0,"to":1,"steps":11},"grid_n":1000})");
  CHECK(out.exit_code == kOk);
  const auto rows = lines(out.csv);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "param,lambda1,error_estimate,flags");
  const json r = report_of(out);
  REQUIRE(r["rows"].size() == 11);
  double previous = INFINITY;
  for (const auto& row : r["rows"]) {
    const double v = row["lambda1"].get<double>();
    CHECK(v <= previous);
    CHECK(row["error_estimate"].is_number());
    previous = v;
  }
  CHECK(previous == doctest::Approx(oracles::disk_lowest_eigenvalue(2.0)).epsilon(1e-5));
}

TEST_CASE("sweep leaving the admissible box is a config error") {
  const RunOutput out = run_json(
      R"({"mode":"sweep","a":1,"sweep":{"axis":"a","from":0.5,"to":1.5,"steps":3},
          "pair":{"kappa1":1,"kappa2":0},"grid_n":100})");
  // a = 1.5 violates |k a| <= 1: an input error for the whole run.
  CHECK(out.exit_code == kConfigError);
}

TEST_CASE("verify mode passes") {
  const RunOutput out = run_json(R"({"mode":"verify","a":1,"grid_n":1000,"resolution":64,"seed":3})");
  CHECK(out.exit_code == kOk);
  const json r = report_of(out);
  CHECK(r["all_pass"] == true);
  CHECK(r["checks"].size() >= 10);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config(json::parse(R"({"a":1})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"nope"})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"lambda1","a":1})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"bound","a":1})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"sweep","a":1})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"verify","grid_n":2})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"verify","a":-1})")), InputError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"mode":"verify","a":"x"})")), InputError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InputError);
  const RunOutput out = run_json(R"({"mode":"bound","a":1,"surface":{"name":"klein"}})");
  CHECK(out.exit_code == kConfigError);
  CHECK(out.report.empty());
}

TEST_CASE("report formatting") {
  nlohmann::ordered_json j;
  j["z"] = 0.1;
  j["a"] = std::nan("");
  j["n"] = 3;
  j["s"] = "x";
  CHECK(format_report(j) == "{\"z\":0.10000000000000001,\"a\":null,\"n\":3,\"s\":\"x\"}\n");
}

TEST_CASE("reports are deterministic") {
  const std::string cfg = R"({"mode":"bound","a":0.25,"surface":{"name":"torus","R":2,"r":0.5},"grid_n":300,"resolution":64})";
  CHECK(run_json(cfg).report == run_json(cfg).report);
}
