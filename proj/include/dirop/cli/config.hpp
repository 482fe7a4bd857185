#pragma once

// JSON analysis configuration (schema 1).
//
// {
//   "schema": 1,
//   "frequencies": {"family": "arithmetic" | "logarithmic" | "factorial" |
//                   "geometric" (first, ratio) | "power_of_base" (scale, base) |
//                   "explicit" (values), "leading_zero": false},
//   "weights": {"family": "constant" (value) | "exp_linear" (c) |
//               "exp_product_of_powers" (base) | "explicit" (values)},
//   "symbols": [{"a": 2, "b": {"re": 1, "im": 0}}],
//   "horizon": 64, "truncation": 40,
//   "tolerances": {"ratio": 1e-12, "zero": 1e-9, "kernel": 1e-12},
//   "schatten_p": [1, 2], "conjugations": [0, 1],
//   "dynamics": {"nu": {"re": 1, "im": 0}, "epsilon": 0.01, "degree_cap": 1000000, "gamma": 0.55}
// }
//
// Integer parameters and "p/q" strings are held as exact rationals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dirop/errors.hpp"
#include "dirop/operator.hpp"
#include "dirop/sequences.hpp"
#include "dirop/space.hpp"

namespace dirop::cli {

using Json = nlohmann::ordered_json;

/// Raised for anything wrong with the configuration document itself.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SymbolSpec {
  double a = 1;
  Complex b;
};

struct DynamicsSpec {
  Complex nu = 1;
  double epsilon = 1e-2;
  std::size_t degree_cap = 1'000'000;
  double gamma = 0.55;
};

struct AnalysisConfig {
  Json frequencies;
  Json weights;
  std::vector<SymbolSpec> symbols;
  std::size_t horizon = 64;
  std::size_t truncation = 40;
  double ratio_tol = kDefaultRatioTol;
  double zero_tol = 1e-9;
  double kernel_tol = 1e-12;
  std::vector<double> schatten_p{1.0, 2.0};
  std::vector<double> conjugations{0.0};
  std::optional<DynamicsSpec> dynamics;
};

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw ConfigError(what); }

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) bad(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline double number(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } catch (const std::exception&) {
      bad(where + ": '" + s + "' is not a number or p/q rational");
    }
  }
  bad(where + ": expected a number");
}

/// Exact value for integers and "p/q" strings; none for other floats.
inline std::optional<Rational> rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(BigInt(s));
      const BigInt den(s.substr(slash + 1));
      if (den == 0) bad(where + ": zero denominator");
      return Rational(BigInt(s.substr(0, slash)), den);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      bad(where + ": '" + s + "' is not an integer or p/q rational");
    }
  }
  return std::nullopt;
}

inline std::size_t count(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(where + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

inline Complex complex_value(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_object()) bad(where + ": complex numbers are written as {\"re\": x, \"im\": y}");
  for (const auto& [k, _] : v.items())
    if (k != "re" && k != "im") bad(where + ": unknown key '" + k + "' in complex number");
  const double re = v.contains("re") ? number(v.at("re"), where + ".re") : 0.0;
  const double im = v.contains("im") ? number(v.at("im"), where + ".im") : 0.0;
  return {re, im};
}

inline std::vector<double> numbers(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, _] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      bad(where + ": unknown key '" + k + "'");
}

}  // namespace detail

inline FrequencySequence make_frequencies(const AnalysisConfig& cfg) {
  using namespace detail;
  const Json& f = cfg.frequencies;
  const std::string family = f.at("family").get<std::string>();
  const bool leading_zero = f.value("leading_zero", false);
  auto build = [&]() -> FrequencySequence {
    if (family == "arithmetic") {
      only_keys(f, {"family", "leading_zero"}, "frequencies");
      return FrequencySequence::arithmetic();
    }
    if (family == "logarithmic") {
      only_keys(f, {"family", "leading_zero"}, "frequencies");
      return FrequencySequence::logarithmic();
    }
    if (family == "factorial") {
      only_keys(f, {"family", "leading_zero"}, "frequencies");
      return FrequencySequence::factorial();
    }
    if (family == "geometric" || family == "power_of_base") {
      const bool geo = family == "geometric";
      const char* k1 = geo ? "first" : "scale";
      const char* k2 = geo ? "ratio" : "base";
      only_keys(f, {"family", "leading_zero", k1, k2}, "frequencies");
      const Json one = 1;
      const Json& v1 = f.contains(k1) ? f.at(k1) : one;
      const Json& v2 = field(f, k2, "frequencies");
      const auto q1 = rational(v1, std::string("frequencies.") + k1);
      const auto q2 = rational(v2, std::string("frequencies.") + k2);
      if (q1 && q2) return geo ? FrequencySequence::geometric(*q1, *q2) : FrequencySequence::power_of_base(*q1, *q2);
      const double x1 = number(v1, std::string("frequencies.") + k1);
      const double x2 = number(v2, std::string("frequencies.") + k2);
      return geo ? FrequencySequence::geometric(x1, x2) : FrequencySequence::power_of_base(x1, x2);
    }
    if (family == "explicit") {
      only_keys(f, {"family", "leading_zero", "values"}, "frequencies");
      const Json& vals = field(f, "values", "frequencies");
      if (!vals.is_array()) bad("frequencies.values: expected an array");
      std::vector<Rational> exact;
      bool all_exact = true;
      for (std::size_t i = 0; i < vals.size() && all_exact; ++i) {
        auto q = rational(vals[i], "frequencies.values[" + std::to_string(i) + "]");
        if (q) exact.push_back(*q);
        else all_exact = false;
      }
      if (all_exact) return FrequencySequence::explicit_exact(std::move(exact));
      return FrequencySequence::explicit_list(numbers(vals, "frequencies.values"));
    }
    bad("frequencies: unknown family '" + family + "'");
  };
  FrequencySequence seq = build();
  return leading_zero ? seq.with_leading_zero() : seq;
}

inline WeightSequence make_weights(const AnalysisConfig& cfg) {
  using namespace detail;
  const Json& w = cfg.weights;
  const std::string family = w.at("family").get<std::string>();
  if (family == "constant") {
    only_keys(w, {"family", "value"}, "weights");
    return WeightSequence::constant(w.contains("value") ? number(w.at("value"), "weights.value") : 1.0);
  }
  if (family == "exp_linear") {
    only_keys(w, {"family", "c"}, "weights");
    return WeightSequence::exp_linear(number(field(w, "c", "weights"), "weights.c"));
  }
  if (family == "exp_product_of_powers") {
    only_keys(w, {"family", "base"}, "weights");
    return WeightSequence::exp_product_of_powers(number(field(w, "base", "weights"), "weights.base"));
  }
  if (family == "explicit") {
    only_keys(w, {"family", "values"}, "weights");
    return WeightSequence::explicit_list(numbers(field(w, "values", "weights"), "weights.values"));
  }
  bad("weights: unknown family '" + family + "'");
}

inline DirichletSpace make_space(const AnalysisConfig& cfg) {
  SpaceOptions opt;
  opt.horizon = cfg.horizon;
  opt.ratio_tol = cfg.ratio_tol;
  opt.zero_tol = cfg.zero_tol;
  return DirichletSpace(make_frequencies(cfg), make_weights(cfg), opt);
}

inline AnalysisConfig parse_config(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) bad("configuration must be a JSON object");
  if (!doc.contains("schema") || doc.at("schema") != 1) bad("unsupported or missing schema version (expected \"schema\": 1)");
  static const char* known[] = {"schema", "frequencies", "weights", "symbols", "horizon", "truncation",
                                "tolerances", "schatten_p", "conjugations", "dynamics", "description"};
  for (const auto& [k, _] : doc.items())
    if (std::find(std::begin(known), std::end(known), k) == std::end(known)) bad("unknown top-level field '" + k + "'");

  AnalysisConfig cfg;
  cfg.frequencies = field(doc, "frequencies", "config");
  cfg.weights = doc.value("weights", Json{{"family", "constant"}});
  if (!cfg.frequencies.is_object() || !cfg.frequencies.contains("family")) bad("frequencies: expected {\"family\": ...}");
  if (!cfg.weights.is_object() || !cfg.weights.contains("family")) bad("weights: expected {\"family\": ...}");

  const Json& syms = field(doc, "symbols", "config");
  if (!syms.is_array() || syms.empty()) bad("symbols: expected a non-empty array");
  for (std::size_t i = 0; i < syms.size(); ++i) {
    const std::string where = "symbols[" + std::to_string(i) + "]";
    SymbolSpec s;
    s.a = number(field(syms[i], "a", where), where + ".a");
    s.b = syms[i].contains("b") ? complex_value(syms[i].at("b"), where + ".b") : Complex(0);
    if (!std::isfinite(s.a) || !(s.a == 0 || s.a >= 1))
      bad(where + ": slope a = " + std::to_string(s.a) + " is not allowed; a must be 0 or a >= 1");
    cfg.symbols.push_back(s);
  }

  if (doc.contains("horizon")) cfg.horizon = count(doc.at("horizon"), "horizon");
  if (doc.contains("truncation")) cfg.truncation = count(doc.at("truncation"), "truncation");
  if (cfg.horizon < 8) bad("horizon must be at least 8");
  if (cfg.truncation < 2) bad("truncation must be at least 2");

  if (doc.contains("tolerances")) {
    const Json& t = doc.at("tolerances");
    if (!t.is_object()) bad("tolerances: expected an object");
    for (const auto& [k, v] : t.items()) {
      const double x = number(v, "tolerances." + k);
      if (!(x > 0)) bad("tolerances." + k + " must be positive");
      if (k == "ratio") cfg.ratio_tol = x;
      else if (k == "zero") cfg.zero_tol = x;
      else if (k == "kernel") cfg.kernel_tol = x;
      else bad("tolerances: unknown key '" + k + "'");
    }
  }
  if (doc.contains("schatten_p")) {
    cfg.schatten_p = numbers(doc.at("schatten_p"), "schatten_p");
    for (double p : cfg.schatten_p)
      if (!(p > 0) || !std::isfinite(p)) bad("schatten_p entries must be positive");
  }
  if (doc.contains("conjugations")) cfg.conjugations = numbers(doc.at("conjugations"), "conjugations");

  if (doc.contains("dynamics")) {
    const Json& d = doc.at("dynamics");
    if (!d.is_object()) bad("dynamics: expected an object");
    DynamicsSpec spec;
    for (const auto& [k, v] : d.items()) {
      if (k == "nu") spec.nu = complex_value(v, "dynamics.nu");
      else if (k == "epsilon") spec.epsilon = number(v, "dynamics.epsilon");
      else if (k == "degree_cap") spec.degree_cap = count(v, "dynamics.degree_cap");
      else if (k == "gamma") spec.gamma = number(v, "dynamics.gamma");
      else bad("dynamics: unknown key '" + k + "'");
    }
    if (!(spec.epsilon > 0)) bad("dynamics.epsilon must be positive");
    if (!(spec.gamma > 0.5 && spec.gamma < 1)) bad("dynamics.gamma must lie in (1/2, 1)");
    if (spec.degree_cap < 1) bad("dynamics.degree_cap must be positive");
    cfg.dynamics = spec;
  }

  // Build once so that descriptor errors surface as configuration errors.
  try {
    (void)make_frequencies(cfg);
    (void)make_weights(cfg);
  } catch (const Error& e) {
    bad(e.what());
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid descriptor: ") + e.what());
  }
  return cfg;
}

inline AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace dirop::cli
