// layerbound: spectral lower bounds for thin layers along surfaces.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "layerbound/error.hpp"
#include "layerbound/run.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace layerbound::cli;

  CLI::App app{"Lower bounds on the first Dirichlet eigenvalue of layers along surfaces"};
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  int resolution = 0;
  long long seed = -1;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_path, "report path (overrides the config; default stdout)");
  app.add_option("--csv", csv_path, "sweep table path (overrides the config)");
  app.add_option("--resolution", resolution, "surface samples per parameter axis")
      ->check(CLI::Range(16, 1 << 16));
  app.add_option("--seed", seed, "seed for randomized checks")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const layerbound::InputError& e) {
    std::cerr << "layerbound: " << e.what() << '\n';
    return kConfigError;
  }
  if (!out_path.empty()) config.report_path = out_path;
  if (!csv_path.empty()) config.csv_path = csv_path;
  if (resolution > 0) config.resolution = resolution;
  if (seed >= 0) config.seed = static_cast<unsigned long long>(seed);

  const RunOutput result = run(config);
  if (!result.diagnostics.empty()) std::cerr << "layerbound: " << result.diagnostics << '\n';

  if (!result.report.empty()) {
    if (config.report_path.empty()) {
      std::cout << result.report;
    } else if (!write_file(config.report_path, result.report)) {
      std::cerr << "layerbound: cannot write '" << config.report_path << "'\n";
      return kConfigError;
    }
  }
  if (!result.csv.empty() && !config.csv_path.empty() && !write_file(config.csv_path, result.csv)) {
    std::cerr << "layerbound: cannot write '" << config.csv_path << "'\n";
    return kConfigError;
  }
  return result.exit_code;
}
