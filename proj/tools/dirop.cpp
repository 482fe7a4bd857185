// dirop: analyze affine composition operators on weighted Dirichlet series spaces.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dirop/cli/config.hpp"
#include "dirop/cli/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Composition operators C(az+b) on weighted Dirichlet series spaces"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  bool pretty = false;
  dirop::cli::RunOptions opts;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> truncation;

  app.add_option("--config", config_path, "JSON configuration (schema 1)")->required();
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_flag("--pretty", pretty, "human-readable table instead of JSON");
  app.add_flag("--strict", opts.strict, "treat unconverged or undecided quantities as errors");
  app.add_option("--seed", opts.seed, "seed for sampled checks");
  app.add_option("--horizon", horizon, "override the index window");
  app.add_option("--truncation", truncation, "override the finite-section size N");
  app.add_option("--matrix-csv", opts.matrix_csv, "compare: write finite sections as CSV (row,col,re,im)");
  app.add_option("--trace-csv", opts.trace_csv, "cyclic: write residual traces as CSV");
  app.fallthrough();

  for (const char* name : {"analyze", "norm", "schatten", "cyclic", "symmetry", "compare"}) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  opts.horizon = horizon;
  opts.truncation = truncation;
  const auto cmd = dirop::cli::parse_command(app.get_subcommands().front()->get_name());

  dirop::cli::RunResult result;
  try {
    const auto cfg = dirop::cli::load_config(config_path);
    result = dirop::cli::run(*cmd, cfg, opts);
  } catch (const dirop::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const dirop::Error& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 2;
  }

  const std::string text = pretty ? dirop::cli::render_table(result.report) : result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 1;
    }
    out << text;
  }
  for (const auto& w : result.report["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
  return result.exit_code;
}
