#pragma once

// Batch front end shared by the `layerbound` tool and the tests.
//
// A run is described by a JSON configuration:
//
//   {
//     "mode": "bound" | "lambda1" | "sweep" | "verify",
//     "a": 1.0,
//     "surface": {"name": "torus", "R": 2, "r": 0.5}   // or {"file": "chart.txt"}
//     "pair": {"kappa1": 0.5, "kappa2": 0.0},
//     "grid_n": 2000,
//     "resolution": 256,
//     "endpoint_condition": "natural" | "dirichlet",
//     "sweep": {"axis": "kappa1" | "kappa2" | "a", "from": 0, "to": 1, "steps": 11},
//     "seed": 0,
//     "output": {"report": "out.json", "csv": "sweep.csv"}
//   }
//
// Every result scales as 1/length^2; lengths share one (unspecified) unit.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "layerbound/geometry.hpp"
#include "layerbound/transverse.hpp"

namespace layerbound::cli {

enum class Mode { bound, lambda1, sweep, verify };
enum class SweepAxis { kappa1, kappa2, a };

struct SurfaceSpec {
  std::string name;                      ///< catalog name, empty for files
  std::map<std::string, double> params;  ///< catalog parameters
  std::string file;                      ///< sampled chart path
  int orientation = 1;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::kappa2;
  double from = 0.0;
  double to = 1.0;
  int steps = 11;
};

struct RunConfig {
  Mode mode = Mode::bound;
  std::optional<SurfaceSpec> surface;
  double a = 1.0;
  std::optional<CurvaturePair> pair;
  int grid_n = 2000;
  int resolution = 256;
  EndpointCondition endpoints = EndpointCondition::natural_where_degenerate;
  std::optional<SweepSpec> sweep;
  unsigned long long seed = 0;
  std::string report_path;  ///< empty: stdout
  std::string csv_path;     ///< sweep mode only
};

enum ExitCode : int { kOk = 0, kConfigError = 1, kHypothesisFailure = 2, kNumericalError = 3 };

/// Throws InputError with a readable message for missing or bad fields.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

struct RunOutput {
  int exit_code = kOk;
  std::string report;       ///< JSON document, empty on config errors
  std::string csv;          ///< sweep table, empty otherwise
  std::string diagnostics;  ///< human-readable failure message
};

/// Executes the configuration without touching the filesystem.
RunOutput run(const RunConfig& config);

/// Deterministic JSON text: insertion-ordered keys, numbers printed with 17
/// significant digits, non-finite numbers as null.
std::string format_report(const nlohmann::ordered_json& doc);

}  // namespace layerbound::cli
