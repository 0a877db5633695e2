#include "layerbound/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "layerbound/bounds.hpp"
#include "layerbound/error.hpp"
#include "layerbound/oracles.hpp"
#include "layerbound/sampled_chart.hpp"

namespace layerbound::cli {
namespace {

using ojson = nlohmann::ordered_json;

// ---- config parsing -------------------------------------------------------

double number(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("config: missing '") + key + "'");
  if (!it->is_number()) throw InputError(std::string("config: '") + key + "' must be a number");
  return it->get<double>();
}

int integer(const nlohmann::json& obj, const char* key, int fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw InputError(std::string("config: '") + key + "' must be an integer");
  return it->get<int>();
}

Mode parse_mode(const std::string& s) {
  if (s == "bound") return Mode::bound;
  if (s == "lambda1") return Mode::lambda1;
  if (s == "sweep") return Mode::sweep;
  if (s == "verify") return Mode::verify;
  throw InputError("config: unknown mode '" + s + "'");
}

SurfaceSpec parse_surface(const nlohmann::json& s) {
  if (!s.is_object()) throw InputError("config: 'surface' must be an object");
  SurfaceSpec spec;
  spec.orientation = integer(s, "orientation", 1);
  if (spec.orientation != 1 && spec.orientation != -1)
    throw InputError("config: surface orientation must be 1 or -1");
  if (s.contains("file")) {
    if (!s["file"].is_string()) throw InputError("config: surface 'file' must be a string");
    spec.file = s["file"].get<std::string>();
    return spec;
  }
  if (!s.contains("name") || !s["name"].is_string())
    throw InputError("config: surface needs a 'name' or a 'file'");
  spec.name = s["name"].get<std::string>();
  for (const auto& [key, value] : s.items()) {
    if (key == "name" || key == "orientation") continue;
    if (!value.is_number()) throw InputError("config: surface parameter '" + key + "' must be a number");
    spec.params[key] = value.get<double>();
  }
  return spec;
}

// ---- report helpers -------------------------------------------------------

void write_json(std::string& out, const ojson& j) {
  switch (j.type()) {
    case ojson::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ojson(it.key()).dump();
        out += ':';
        write_json(out, it.value());
      }
      out += '}';
      break;
    }
    case ojson::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        write_json(out, v);
      }
      out += ']';
      break;
    }
    case ojson::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

const char* endpoint_name(EndpointCondition e) {
  return e == EndpointCondition::dirichlet ? "dirichlet" : "natural";
}

ojson summary_json(const CurvatureSummary& s) {
  return ojson{{"k1_plus", s.k1_plus},   {"k1_minus", s.k1_minus}, {"k2_plus", s.k2_plus},
               {"k2_minus", s.k2_minus}, {"max_abs", s.max_abs},
               {"resolution", ojson::array({s.resolution.p, s.resolution.q})}};
}

ojson hypothesis_json(const LayerDiagnostic& d) {
  return ojson{{"pass", d.pass}, {"product", d.product}, {"margin", d.margin}};
}

ojson surface_json(const SurfaceSpec& s) {
  ojson j;
  if (!s.file.empty()) {
    j["file"] = s.file;
  } else {
    j["name"] = s.name;
    for (const auto& [k, v] : s.params) j[k] = v;
  }
  j["orientation"] = s.orientation;
  return j;
}

std::string flags_of(const EigenResult& r) {
  std::string flags = r.extrapolated ? "extrapolated" : "raw";
  if (r.degenerate_endpoints > 0) flags += ";degenerate=" + std::to_string(r.degenerate_endpoints);
  if (r.decreasing.has_value()) flags += *r.decreasing ? ";decreasing" : ";not-decreasing";
  if (r.cross_method_discrepancy.has_value()) flags += ";cross-checked";
  return flags;
}

ojson eigen_json(const EigenResult& r, bool with_vector) {
  ojson j{{"lambda1", r.lambda1},
          {"error_estimate", r.error_estimate},
          {"method", method_name(r.method)},
          {"n", r.n},
          {"extrapolated", r.extrapolated},
          {"degenerate_endpoints", r.degenerate_endpoints}};
  j["decreasing"] = r.decreasing ? ojson(*r.decreasing) : ojson(nullptr);
  j["sequence"] = r.sequence;
  j["cross_method_discrepancy"] =
      r.cross_method_discrepancy ? ojson(*r.cross_method_discrepancy) : ojson(nullptr);
  j["flags"] = flags_of(r);
  if (with_vector) {
    j["nodes"] = r.nodes;
    j["eigenvector"] = r.eigenvector;
  }
  return j;
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.n = c.grid_n;
  o.endpoints = c.endpoints;
  return o;
}

CurvatureSummary summary_for(const SurfaceSpec& spec, int resolution) {
  if (!spec.file.empty()) return curvature_summary(load_sampled_chart(spec.file), spec.orientation);
  ParametricSurface surface = surfaces::by_name(spec.name, spec.params);
  if (spec.orientation < 0) surface = surface.flipped();
  return curvature_summary(surface, {resolution, resolution});
}

// ---- modes ----------------------------------------------------------------

ojson run_bound(const RunConfig& c, RunOutput& out) {
  if (!c.surface) throw InputError("config: bound mode needs a 'surface'");
  const HalfWidth a(c.a);
  const CurvatureSummary summary = summary_for(*c.surface, c.resolution);
  ojson j{{"mode", "bound"}, {"surface", surface_json(*c.surface)}, {"a", c.a},
          {"grid_n", c.grid_n}, {"endpoint_condition", endpoint_name(c.endpoints)}};
  j["curvature_summary"] = summary_json(summary);
  j["assumptions"] = ojson::array({"tube map injective (not checked)",
                                   "curvature extrema taken over the sampled patch only"});
  const LayerDiagnostic diag = check_layer_hypothesis(summary, a);
  j["hypothesis"] = hypothesis_json(diag);
  if (!diag.pass) {
    j["lower_bound"] = nullptr;
    out.exit_code = kHypothesisFailure;
    out.diagnostics = "layer hypothesis fails: a * max|k| = " + short_number(diag.product) +
                      " is not below 1";
    return j;
  }
  const BoundReport report = theorem1_bound(summary, a, solver_options(c));
  j["lower_bound"] = report.lower_bound;
  j["branch"] = branch_name(report.branch);
  ojson branches = ojson::array();
  for (std::size_t b = 0; b < 2; ++b) {
    branches.push_back({{"kappa1", report.branch_pairs[b].kappa1},
                        {"kappa2", report.branch_pairs[b].kappa2},
                        {"lambda1", report.lambda_branch_values[b]}});
  }
  j["branches"] = branches;
  j["floor"] = report.floor ? ojson(*report.floor) : ojson(nullptr);
  j["solver_error"] = report.solver_error;
  return j;
}

ojson run_lambda1(const RunConfig& c) {
  if (!c.pair) throw InputError("config: lambda1 mode needs a 'pair'");
  const EigenResult r = lambda1(*c.pair, HalfWidth(c.a), solver_options(c));
  ojson j{{"mode", "lambda1"},
          {"a", c.a},
          {"pair", {{"kappa1", c.pair->kappa1}, {"kappa2", c.pair->kappa2}}},
          {"grid_n", c.grid_n},
          {"endpoint_condition", endpoint_name(c.endpoints)}};
  j["result"] = eigen_json(r, true);
  return j;
}

struct SweepRow {
  double param;
  double lambda1;
  double error_estimate;
  std::string flags;
};

ojson run_sweep(const RunConfig& c, std::string& csv) {
  if (!c.sweep) throw InputError("config: sweep mode needs a 'sweep' block");
  const SweepSpec& s = *c.sweep;
  if (s.steps < 1) throw InputError("config: sweep steps must be >= 1");
  const CurvaturePair base = c.pair.value_or(CurvaturePair{});
  std::vector<SweepRow> rows;
  for (int i = 0; i < s.steps; ++i) {
    const double t = s.steps == 1 ? 0.0 : static_cast<double>(i) / (s.steps - 1);
    const double param = i == s.steps - 1 && s.steps > 1 ? s.to : s.from + (s.to - s.from) * t;
    CurvaturePair pair = base;
    double a = c.a;
    switch (s.axis) {
      case SweepAxis::kappa1: pair.kappa1 = param; break;
      case SweepAxis::kappa2: pair.kappa2 = param; break;
      case SweepAxis::a: a = param; break;
    }
    try {
      const EigenResult r = lambda1(pair, HalfWidth(a), solver_options(c));
      rows.push_back({param, r.lambda1, r.error_estimate, flags_of(r)});
    } catch (const NumericalError& e) {
      rows.push_back({param, std::nan(""), std::nan(""), std::string("failed: ") + e.what()});
    }
  }
  static const char* axis_names[] = {"kappa1", "kappa2", "a"};
  ojson j{{"mode", "sweep"},
          {"axis", axis_names[static_cast<int>(s.axis)]},
          {"from", s.from},
          {"to", s.to},
          {"steps", s.steps},
          {"a", c.a},
          {"pair", {{"kappa1", base.kappa1}, {"kappa2", base.kappa2}}},
          {"grid_n", c.grid_n},
          {"endpoint_condition", endpoint_name(c.endpoints)}};
  ojson table = ojson::array();
  csv = "param,lambda1,error_estimate,flags\n";
  for (const SweepRow& r : rows) {
    table.push_back({{"param", r.param},
                     {"lambda1", r.lambda1},
                     {"error_estimate", r.error_estimate},
                     {"flags", r.flags}});
    std::string flags = r.flags;
    for (char& ch : flags)
      if (ch == ',' || ch == '\n') ch = ' ';
    csv += format_number(r.param) + "," + format_number(r.lambda1) + "," +
           format_number(r.error_estimate) + "," + flags + "\n";
  }
  j["rows"] = table;
  return j;
}

// Random polynomial vanishing at +-a: (a^2 - u^2) * sum_{k<=4} c_k (u/a)^k.
TestFunction random_polynomial(std::mt19937_64& rng, HalfWidth a, const GridSpec& grid) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::array<double, 5> c{};
  for (double& x : c) x = coef(rng);
  c[0] += 2.0;  // keeps the function away from zero
  const double av = a.value();
  return TestFunction::sample(
      [c, av](double u) {
        const double s = u / av;
        double p = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) p = p * s + c[k];
        return (av * av - u * u) * p;
      },
      a, grid);
}

struct Check {
  std::string name;
  bool pass;
  double value;
  double tolerance;
};

ojson run_verify(const RunConfig& c) {
  const HalfWidth a(c.a);
  const double av = c.a;
  const SolverOptions opts = solver_options(c);
  const double flat = std::numbers::pi * std::numbers::pi / (4.0 * av * av);
  std::vector<Check> checks;
  auto rel = [](double x, double ref) { return std::abs(x - ref) / std::abs(ref); };

  for (const double k : {0.0, 0.3, 0.7}) {
    const double err = rel(lambda1({k / av, k / av}, a, opts).lambda1, flat);
    checks.push_back({"equal_curvature_" + short_number(k), err <= 1e-8, err, 1e-8});
  }
  for (const double k : {0.2, 0.5, 0.8}) {
    const double kappa = k / av;
    const double oracle = oracles::annulus_lowest_eigenvalue({1.0 / kappa - av, 1.0 / kappa + av});
    const double err = rel(lambda1({kappa, 0.0}, a, opts).lambda1, oracle);
    checks.push_back({"annulus_oracle_" + short_number(k), err <= 1e-6, err, 1e-6});
  }
  {
    SolverOptions fine = opts;
    fine.n = std::max(fine.n, 8000);
    const double err = rel(lambda1({1.0 / av, 0.0}, a, fine).lambda1,
                           oracles::disk_lowest_eigenvalue(2.0 * av));
    checks.push_back({"disk_endpoint", err <= 1e-4, err, 1e-4});
  }
  {
    const double floor = faber_krahn_floor(a);
    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 20; ++i) {
      const double value = lambda1({0.0, i / (20.0 * av)}, a, opts).lambda1;
      monotone = monotone && value <= previous;
      previous = value;
      worst = std::min(worst, value - floor);
    }
    checks.push_back({"floor_and_monotonicity", monotone && worst >= -1e-6, worst, -1e-6});
  }
  std::mt19937_64 rng(c.seed);
  {
    const GridSpec grid(std::max(c.grid_n, 400));
    double worst = std::numeric_limits<double>::infinity();
    for (const CurvaturePair pair : {CurvaturePair{0.0, 0.0}, CurvaturePair{0.5 / av, -0.5 / av},
                                     CurvaturePair{1.0 / av, -1.0 / av}}) {
      const double l1 = lambda1(pair, a, opts).lambda1;
      for (int i = 0; i < 34; ++i)
        worst = std::min(worst, verify_hardy_inequality(random_polynomial(rng, a, grid), pair, a, l1).residual);
    }
    checks.push_back({"hardy_residuals", worst >= -1e-8, worst, -1e-8});
  }
  {
    std::uniform_real_distribution<double> uni(-av, av);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
      double u = uni(rng);
      if (std::abs(u) >= av) continue;
      const HardyWeights w = hardy_weights_at(u, a);
      worst = std::min(worst, w.optimal - w.classical);
    }
    checks.push_back({"hardy_dominance", worst >= 0.0, worst, 0.0});
  }
  {
    CurvatureSummary box;
    std::string source = "torus";
    if (c.surface) {
      box = summary_for(*c.surface, c.resolution);
      source = "surface";
    } else {
      box = curvature_summary(surfaces::torus(4.0 * av, 2.0 * av), {c.resolution, c.resolution});
    }
    const LayerDiagnostic diag = check_layer_hypothesis(box, a);
    if (!diag.pass) throw HypothesisError("verify: potential check needs a * max|k| < 1", diag);
    std::vector<double> u(401);
    for (int i = 0; i <= 400; ++i) u[static_cast<std::size_t>(i)] = av * (static_cast<double>(2 * i - 400) / 400);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
      const double k1 = box.k1_minus + (box.k1_plus - box.k1_minus) * t(rng);
      const double k2 = box.k2_minus + (box.k2_plus - box.k2_minus) * t(rng);
      worst = std::min(worst, potential_min_slack(k1, k2, box, u));
    }
    checks.push_back({"potential_min_" + source, worst >= -1e-12, worst, -1e-12});
  }

  bool all = true;
  ojson list = ojson::array();
  for (const Check& ch : checks) {
    all = all && ch.pass;
    list.push_back({{"name", ch.name}, {"pass", ch.pass}, {"value", ch.value}, {"tolerance", ch.tolerance}});
  }
  return ojson{{"mode", "verify"}, {"a", c.a},       {"grid_n", c.grid_n},
               {"seed", c.seed},   {"checks", list}, {"all_pass", all}};
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("config: top level must be an object");
  RunConfig c;
  if (!doc.contains("mode") || !doc["mode"].is_string()) throw InputError("config: missing 'mode'");
  c.mode = parse_mode(doc["mode"].get<std::string>());
  c.a = doc.contains("a") ? number(doc, "a") : 1.0;
  if (!(c.a > 0.0)) throw InputError("config: 'a' must be positive");
  c.grid_n = integer(doc, "grid_n", 2000);
  if (c.grid_n < 3) throw InputError("config: 'grid_n' must be >= 3");
  c.resolution = integer(doc, "resolution", 256);
  if (c.resolution < 16) throw InputError("config: 'resolution' must be >= 16");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw InputError("config: 'seed' must be a non-negative integer");
    c.seed = doc["seed"].get<unsigned long long>();
  }
  if (doc.contains("surface")) c.surface = parse_surface(doc["surface"]);
  if (doc.contains("pair")) {
    const auto& p = doc["pair"];
    if (!p.is_object()) throw InputError("config: 'pair' must be an object");
    c.pair = CurvaturePair{number(p, "kappa1"), number(p, "kappa2")};
  }
  if (doc.contains("endpoint_condition")) {
    const std::string e = doc["endpoint_condition"].get<std::string>();
    if (e == "natural") c.endpoints = EndpointCondition::natural_where_degenerate;
    else if (e == "dirichlet") c.endpoints = EndpointCondition::dirichlet;
    else throw InputError("config: endpoint_condition must be 'natural' or 'dirichlet'");
  }
  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    if (!s.is_object() || !s.contains("axis") || !s["axis"].is_string())
      throw InputError("config: 'sweep' needs an 'axis'");
    SweepSpec spec;
    const std::string axis = s["axis"].get<std::string>();
    if (axis == "kappa1") spec.axis = SweepAxis::kappa1;
    else if (axis == "kappa2") spec.axis = SweepAxis::kappa2;
    else if (axis == "a") spec.axis = SweepAxis::a;
    else throw InputError("config: sweep axis must be kappa1, kappa2 or a");
    spec.from = number(s, "from");
    spec.to = number(s, "to");
    spec.steps = integer(s, "steps", 11);
    c.sweep = spec;
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (o.contains("report")) c.report_path = o["report"].get<std::string>();
    if (o.contains("csv")) c.csv_path = o["csv"].get<std::string>();
  }
  switch (c.mode) {
    case Mode::bound:
      if (!c.surface) throw InputError("config: bound mode needs a 'surface'");
      break;
    case Mode::lambda1:
      if (!c.pair) throw InputError("config: lambda1 mode needs a 'pair'");
      break;
    case Mode::sweep:
      if (!c.sweep) throw InputError("config: sweep mode needs a 'sweep' block");
      break;
    case Mode::verify:
      break;
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

std::string format_report(const nlohmann::ordered_json& doc) {
  std::string out;
  write_json(out, doc);
  out += '\n';
  return out;
}

RunOutput run(const RunConfig& config) {
  RunOutput out;
  try {
    ojson report;
    switch (config.mode) {
      case Mode::bound: report = run_bound(config, out); break;
      case Mode::lambda1: report = run_lambda1(config); break;
      case Mode::sweep: report = run_sweep(config, out.csv); break;
      case Mode::verify:
        report = run_verify(config);
        if (!report["all_pass"].get<bool>()) {
          out.exit_code = kNumericalError;
          out.diagnostics = "verify: at least one check failed";
        }
        break;
    }
    out.report = format_report(report);
  } catch (const HypothesisError& e) {
    out.exit_code = kHypothesisFailure;
    out.diagnostics = e.what();
    ojson j{{"error", "hypothesis"}, {"hypothesis", hypothesis_json(e.diagnostic())}};
    out.report = format_report(j);
  } catch (const ImmersionError& e) {
    out.exit_code = kHypothesisFailure;
    out.diagnostics = e.what();
    ojson j{{"error", "immersion"}, {"message", e.what()}, {"p", e.p()}, {"q", e.q()}};
    out.report = format_report(j);
  } catch (const NumericalError& e) {
    out.exit_code = kNumericalError;
    out.diagnostics = e.what();
  } catch (const InputError& e) {
    out.exit_code = kConfigError;
    out.diagnostics = e.what();
  }
  return out;
}

}  // namespace layerbound::cli
