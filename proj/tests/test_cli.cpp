#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "dirop/cli/config.hpp"
#include "dirop/cli/report.hpp"

using namespace dirop;
using cli::Json;

namespace {

const std::string kSamples = DIROP_SAMPLES_DIR;
const std::string kCli = DIROP_CLI_PATH;

struct Invocation {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Invocation invoke(const std::string& args) {
  const std::string out = testing::TempDir() + "dirop_out.txt";
  const std::string err = testing::TempDir() + "dirop_err.txt";
  const int raw = std::system((kCli + " " + args + " > " + out + " 2> " + err).c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

Json arithmetic_doc() {
  return Json::parse(R"({"schema": 1, "frequencies": {"family": "arithmetic"}, "weights": {"family": "constant"},
                         "symbols": [{"a": 2, "b": {"re": 1, "im": 0}}], "horizon": 64, "truncation": 40})");
}

}  // namespace

TEST(Config, ParsesSamples) {
  const auto cfg = cli::load_config(kSamples + "/cyclic_zero_start.json");
  ASSERT_EQ(cfg.symbols.size(), 1u);
  EXPECT_EQ(cfg.symbols[0].a, 2);
  ASSERT_TRUE(cfg.dynamics.has_value());
  EXPECT_EQ(cfg.dynamics->epsilon, 0.01);
  EXPECT_EQ(cfg.dynamics->degree_cap, 1000000u);
}

TEST(Config, RejectsBadInput) {
  auto doc = arithmetic_doc();
  doc["symbols"][0]["a"] = 0.5;
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
  doc = arithmetic_doc();
  doc["schema"] = 2;
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
  doc = arithmetic_doc();
  doc["horizon"] = 4;
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
  doc = arithmetic_doc();
  doc["truncation"] = 1;
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
  doc = arithmetic_doc();
  doc["extra"] = true;
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
  doc = arithmetic_doc();
  doc["symbols"][0]["b"] = "1+i";
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
  doc = arithmetic_doc();
  doc["frequencies"] = {{"family", "explicit"}, {"values", {1, 1, 2}}};
  EXPECT_THROW(cli::parse_config(doc), cli::ConfigError);
}

TEST(Run, AnalyzeReport) {
  const auto r = cli::run(cli::Command::Analyze, cli::parse_config(arithmetic_doc()), {});
  EXPECT_EQ(r.exit_code, 0);
  const auto& s = r.report["symbols"][0];
  EXPECT_TRUE(s["boundedness"]["bounded"].get<bool>());
  EXPECT_NEAR(s["boundedness"]["operator_norm"]["value"].get<double>(), std::exp(-1.0), 1e-15);
  EXPECT_TRUE(s["norms"]["compact"].get<bool>());
  for (const auto& row : s["schatten"]["schatten"]) EXPECT_EQ(row["member"], "converges");
  EXPECT_EQ(s["cyclicity"]["verdict"], "not_cyclic");
  EXPECT_TRUE(r.report["space"]["L"]["converged"].get<bool>());
  EXPECT_EQ(r.report["space"]["theta"].get<double>(), 0);
}

TEST(Run, Deterministic) {
  const auto cfg = cli::load_config(kSamples + "/diagonal_and_symmetry.json");
  cli::RunOptions opts;
  opts.seed = 99;
  const auto a = cli::run(cli::Command::Symmetry, cfg, opts).report.dump();
  const auto b = cli::run(cli::Command::Symmetry, cfg, opts).report.dump();
  EXPECT_EQ(a, b);
}

TEST(Run, StrictEscalatesWarnings) {
  const auto cfg = cli::load_config(kSamples + "/boundary_product_weights.json");
  const auto lax = cli::run(cli::Command::Schatten, cfg, {});
  EXPECT_EQ(lax.exit_code, 0);
  EXPECT_FALSE(lax.report["warnings"].empty());
  cli::RunOptions strict;
  strict.strict = true;
  EXPECT_EQ(cli::run(cli::Command::Schatten, cfg, strict).exit_code, 2);
}

TEST(Run, ComputationErrorsGiveExitTwo) {
  auto doc = arithmetic_doc();
  doc["symbols"] = Json::parse(R"([{"a": 2, "b": {"re": 0, "im": 0}}])");
  doc["dynamics"] = Json::parse(R"({"nu": {"re": 1, "im": 0}, "epsilon": 0.01})");
  doc["frequencies"] = Json::parse(R"({"family": "geometric", "first": 1, "ratio": 2, "leading_zero": true})");
  doc["dynamics"]["degree_cap"] = 10;
  const auto r = cli::run(cli::Command::Cyclic, cli::parse_config(doc), {});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_FALSE(r.report["symbols"][0]["errors"].empty());
}

TEST(Run, NonFiniteNumbersAreStrings) {
  EXPECT_EQ(cli::num(INFINITY), "+inf");
  EXPECT_EQ(cli::num(-INFINITY), "-inf");
  EXPECT_TRUE(cli::num(NAN).is_null());
}

TEST(Binary, AnalyzeSample) {
  const auto r = invoke("analyze --config " + kSamples + "/analyze_arithmetic.json");
  EXPECT_EQ(r.status, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["command"], "analyze");
}

TEST(Binary, CyclicTraceEndsBelowTarget) {
  const std::string trace = testing::TempDir() + "dirop_trace.csv";
  const auto r = invoke("cyclic --config " + kSamples + "/cyclic_zero_start.json --trace-csv " + trace);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto c = Json::parse(r.out)["symbols"][0]["cyclicity"]["construction"];
  EXPECT_LE(c["trace"].back()["measured_residual"].get<double>(), 1e-2);
  EXPECT_EQ(slurp(trace).rfind("degree,predicted_residual,measured_residual\n", 0), 0u);
}

TEST(Binary, MalformedSlope) {
  const auto r = invoke("analyze --config " + kSamples + "/malformed_slope.json");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("a must be 0 or a >= 1"), std::string::npos);
}

TEST(Binary, MissingConfigAndUsage) {
  EXPECT_EQ(invoke("analyze --config /nonexistent.json").status, 1);
  EXPECT_EQ(invoke("frobnicate --config x").status, 1);
}

TEST(Binary, PrettyAndOutFile) {
  const std::string out = testing::TempDir() + "dirop_report.json";
  const auto r = invoke("norm --pretty --config " + kSamples + "/analyze_arithmetic.json --out " + out);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(slurp(out).find("symbols[0].boundedness.bounded"), std::string::npos);
}

TEST(Binary, MatrixCsvAndOverrides) {
  const std::string csv = testing::TempDir() + "dirop_matrix.csv";
  const auto r = invoke("compare --truncation 4 --horizon 32 --seed 3 --config " + kSamples +
                        "/analyze_arithmetic.json --matrix-csv " + csv);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["symbols"][0]["oracle"]["N"], 4);
  EXPECT_EQ(slurp(csv).rfind("row,col,re,im\n2,1,", 0), 0u);
}

TEST(Binary, SeedIsReproducible) {
  const std::string args = "symmetry --seed 17 --config " + kSamples + "/diagonal_and_symmetry.json";
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}
