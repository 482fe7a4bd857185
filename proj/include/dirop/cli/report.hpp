#pragma once

// Subcommand orchestration and JSON report assembly.

#include <cmath>
#include <cstdint>
#include <functional>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dirop/cli/config.hpp"
#include "dirop/dynamics.hpp"
#include "dirop/operator.hpp"
#include "dirop/oracle.hpp"
#include "dirop/space.hpp"
#include "dirop/symmetry.hpp"

namespace dirop::cli {

enum class Command { Analyze, Norm, Schatten, Cyclic, Symmetry, Compare };

inline std::optional<Command> parse_command(const std::string& name) {
  if (name == "analyze") return Command::Analyze;
  if (name == "norm") return Command::Norm;
  if (name == "schatten") return Command::Schatten;
  if (name == "cyclic") return Command::Cyclic;
  if (name == "symmetry") return Command::Symmetry;
  if (name == "compare") return Command::Compare;
  return std::nullopt;
}

inline std::string command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Norm: return "norm";
    case Command::Schatten: return "schatten";
    case Command::Cyclic: return "cyclic";
    case Command::Symmetry: return "symmetry";
    case Command::Compare: return "compare";
  }
  return "?";
}

struct RunOptions {
  bool strict = false;
  std::uint64_t seed = 20240917;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> truncation;
  std::string matrix_csv;  // compare: finite sections as CSV
  std::string trace_csv;   // cyclic: residual-vs-degree traces as CSV
};

struct RunResult {
  int exit_code = 0;
  Json report;
};

// ---------------------------------------------------------------------------
// JSON helpers

/// Infinities become "+inf"/"-inf" strings and NaN becomes null.
inline Json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

inline Json complex_json(Complex z) { return Json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

inline Json estimate_json(const Estimate& e) {
  return Json{{"value", num(e.value)}, {"converged", e.converged}, {"analytic", e.analytic}};
}

class Warnings {
 public:
  void add(std::string w) { items_.push_back(std::move(w)); }
  void check(const Estimate& e, const std::string& what) {
    if (!e.converged) add(what + " has not stabilized over the window");
  }
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
};

namespace detail {

struct SymbolContext {
  const AnalysisConfig& cfg;
  const DirichletSpace& space;
  const RunOptions& opts;
  std::size_t index;  // 0-based position in the symbol list
  std::size_t horizon;
  std::size_t truncation;
};

inline std::string indexed_path(const std::string& path, std::size_t i, std::size_t total) {
  if (total == 1) return path;
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string suffix = "_" + std::to_string(i + 1);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

inline std::string scalar_label(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline Json boundedness_json(const AffineSymbol& sym, const BoundednessReport& b, Warnings& w) {
  Json j;
  j["self_map"] = b.self_map;
  j["bounded"] = b.bounded;
  j["reason"] = b.reason;
  j["closed_form"] = b.closed_form;
  if (sym.a() >= 1) {
    j["in_ratio_set"] = sym.in_ratio_set();
    j["ratio_witness"] = sym.ratio_witness() ? Json(*sym.ratio_witness()) : Json(nullptr);
    j["ratio_window"] = sym.window();
    j["ratio_window_limited"] = sym.ratio_window_limited();
  }
  if (b.operator_norm) {
    j["operator_norm"] = estimate_json(*b.operator_norm);
    w.check(*b.operator_norm, "operator norm");
  } else {
    j["operator_norm"] = nullptr;
  }
  Json r = Json::array();
  for (double v : b.r_values) r.push_back(num(v));
  j["r_values"] = r;
  return j;
}

inline Json norm_section(const AffineSymbol& sym, const SymbolContext& ctx, Warnings& w) {
  Json j;
  const auto ess = essential_norm(sym, ctx.horizon);
  w.check(ess, "essential norm");
  j["essential_norm"] = estimate_json(ess);
  j["compact"] = ess.value <= ctx.space.options().zero_tol;
  const auto cr = closed_range(sym, ctx.horizon);
  if (sym.a() >= 1) {
    w.check(cr.liminf, "liminf of r_n");
  }
  j["closed_range"] = Json{{"closed", cr.closed},
                           {"infimum", sym.a() == 0 ? Json(nullptr) : estimate_json(cr.infimum)},
                           {"liminf", sym.a() == 0 ? Json(nullptr) : estimate_json(cr.liminf)}};
  return j;
}

inline Json schatten_section(const AffineSymbol& sym, const SymbolContext& ctx, Warnings& w) {
  Json j;
  const auto hs = hilbert_schmidt(sym, ctx.horizon);
  j["hilbert_schmidt"] = Json{{"finite", std::string(to_string(hs.finite))},
                              {"value", num(hs.value)},
                              {"tail_bound", num(hs.tail_bound)},
                              {"converged", hs.converged}};
  if (hs.finite == Summability::Undetermined) w.add("Hilbert-Schmidt membership undetermined");
  if (hs.finite == Summability::Converges && !hs.converged) w.add("Hilbert-Schmidt norm has no certified tail");
  Json list = Json::array();
  for (double p : ctx.cfg.schatten_p) {
    const auto s = schatten_membership(sym, p, ctx.horizon);
    if (s.member == Summability::Undetermined) w.add("Schatten p = " + scalar_label(p) + " membership undetermined");
    if (sym.a() >= 1) w.check(s.sigma_c, "critical abscissa for p = " + scalar_label(p));
    list.push_back(Json{{"p", p},
                        {"member", std::string(to_string(s.member))},
                        {"partial_sum", num(s.partial_sum)},
                        {"tail_bound", num(s.tail_bound)},
                        {"window", s.window},
                        {"sigma_c", estimate_json(s.sigma_c)}});
  }
  j["schatten"] = list;
  return j;
}

inline Json census_json(const InitialPointCensus& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(Json{{"index", p.index}, {"zero", p.zero}});
  return Json{{"zero", c.zero}, {"nonzero", c.nonzero}, {"points", pts}};
}

inline Json cyclic_section(const AffineSymbol& sym, const SymbolContext& ctx, Warnings& w, bool with_dynamics) {
  Json j;
  ApproxOptions approx;
  if (ctx.cfg.dynamics) {
    approx.gamma = ctx.cfg.dynamics->gamma;
    approx.degree_cap = ctx.cfg.dynamics->degree_cap;
  }
  const auto v = classify_cyclicity(sym, ctx.horizon, approx);
  j["verdict"] = std::string(to_string(v.kind));
  j["reason"] = v.reason;
  j["supercyclic"] = v.supercyclic ? Json(*v.supercyclic) : Json(nullptr);
  j["census"] = v.census ? census_json(*v.census) : Json(nullptr);
  if (v.kind == Cyclicity::Inconclusive) w.add("cyclicity inconclusive: " + v.reason);

  if (sym.a() > 0) {
    // Krylov rank of a seeded vector under the finite section.
    const std::size_t N = std::min<std::size_t>(ctx.truncation, 12);
    const auto t = truncate(sym, N);
    std::mt19937_64 rng(ctx.opts.seed + ctx.index);
    std::normal_distribution<double> gauss;
    std::vector<Complex> f(N);
    for (auto& x : f) x = Complex(gauss(rng), gauss(rng));
    const auto k = krylov_density_oracle(t.M, f, N - 1);
    Json zr = Json::array();
    for (auto r : k.zero_rows) zr.push_back(r);
    j["krylov"] = Json{{"dimension", N}, {"rank", k.rank}, {"zero_rows", zr}};
  }

  if (with_dynamics && ctx.cfg.dynamics && sym.a() > 1 && v.census && v.census->zero == 1 && v.census->nonzero == 1) {
    const auto& d = *ctx.cfg.dynamics;
    const auto model = shift_from_space(sym, ctx.horizon);
    const auto poly = build_approx_polynomial(model, d.nu, d.epsilon, approx);
    const auto trace = doubling_trace(model, d.nu, poly.s, approx);
    Json rows = Json::array();
    for (const auto& r : trace)
      rows.push_back(Json{{"degree", r.degree}, {"predicted_residual", num(r.predicted_residual)},
                          {"measured_residual", num(r.measured_residual)}});
    j["construction"] = Json{{"nu", complex_json(d.nu)},
                             {"target", d.epsilon},
                             {"gamma", approx.gamma},
                             {"degree", poly.degree()},
                             {"s", poly.s},
                             {"epsilon", complex_json(poly.epsilon)},
                             {"predicted_residual", num(poly.predicted_residual)},
                             {"measured_residual", num(poly.measured_residual)},
                             {"value_at_one", complex_json(poly.value_at_one())},
                             {"coefficient_sum", complex_json(exact_coefficient_sum(poly.u))},
                             {"trace", rows}};
    if (!ctx.opts.trace_csv.empty()) {
      std::ofstream out(indexed_path(ctx.opts.trace_csv, ctx.index, ctx.cfg.symbols.size()));
      write_trace_csv(out, trace);
    }
  }
  return j;
}

inline Json symmetry_section(const AffineSymbol& sym, const SymbolContext& ctx) {
  const auto rep = complex_symmetry_verdict(sym, ctx.truncation, ctx.cfg.conjugations);
  Json j;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["reason"] = rep.reason;
  Json defects = Json::array();
  for (const auto& d : rep.defects) defects.push_back(Json{{"c", d.c}, {"defect", num(d.defect)}});
  j["defects"] = defects;
  if (rep.kernel_dim_adjoint) {
    j["kernel_witness"] = Json{{"dim_ker_adjoint", *rep.kernel_dim_adjoint},
                               {"dim_ker_operator", *rep.kernel_dim_operator},
                               {"first_index_outside_image", rep.witness_index ? Json(*rep.witness_index) : Json(nullptr)},
                               {"truncation", ctx.truncation}};
  }
  return j;
}

inline Json compare_section(const AffineSymbol& sym, const SymbolContext& ctx) {
  const auto rep = compare(sym, ctx.truncation, ctx.cfg.schatten_p);
  Json j;
  j["N"] = rep.N;
  Json lost = Json::array();
  for (auto c : rep.lost_columns) lost.push_back(c);
  j["lost_columns"] = lost;
  Json sv = Json::array();
  for (double s : rep.singular_values) sv.push_back(num(s));
  j["singular_values"] = sv;
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"quantity", r.quantity},
                        {"closed_form", num(r.closed_form)},
                        {"oracle", num(r.oracle)},
                        {"deviation", num(r.deviation)},
                        {"tail_bound", num(r.tail_bound)}});
  j["rows"] = rows;
  j["kernel_dimensions"] = Json{{"zero_rows", rep.kernels.zero_rows},
                                {"zero_columns", rep.kernels.zero_columns},
                                {"zero_columns_not_lost", rep.kernels.zero_columns_kept}};
  if (!ctx.opts.matrix_csv.empty()) {
    std::ofstream out(indexed_path(ctx.opts.matrix_csv, ctx.index, ctx.cfg.symbols.size()));
    write_csv(out, truncate(sym, ctx.truncation).M);
  }
  return j;
}

struct SymbolOutcome {
  Json report;
  std::vector<std::string> warnings;
  bool failed = false;
};

inline SymbolOutcome analyze_symbol(Command cmd, const SymbolContext& ctx) {
  SymbolOutcome out;
  Warnings w;
  const auto& spec = ctx.cfg.symbols[ctx.index];
  Json& j = out.report;
  j["a"] = spec.a;
  j["b"] = complex_json(spec.b);
  Json errors = Json::array();
  auto guarded = [&](const char* section, auto&& fn) {
    try {
      j[section] = fn();
    } catch (const Error& e) {
      errors.push_back(Json{{"section", section}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}});
      out.failed = true;
    }
  };
  std::optional<AffineSymbol> sym;
  try {
    sym = AffineSymbol::make(ctx.space, spec.a, spec.b);
  } catch (const Error& e) {
    errors.push_back(Json{{"section", "symbol"}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}});
    out.failed = true;
  }
  if (sym) {
    BoundednessReport b;
    guarded("boundedness", [&] {
      b = check_bounded(*sym, ctx.horizon);
      return boundedness_json(*sym, b, w);
    });
    if (b.bounded) {
      const bool all = cmd == Command::Analyze;
      if (all || cmd == Command::Norm) guarded("norms", [&] { return norm_section(*sym, ctx, w); });
      if (all || cmd == Command::Schatten) guarded("schatten", [&] { return schatten_section(*sym, ctx, w); });
      if (all || cmd == Command::Cyclic) guarded("cyclicity", [&] { return cyclic_section(*sym, ctx, w, cmd == Command::Cyclic); });
      if (all || cmd == Command::Symmetry) guarded("symmetry", [&] { return symmetry_section(*sym, ctx); });
      if (all || cmd == Command::Compare) guarded("oracle", [&] { return compare_section(*sym, ctx); });
    } else if (cmd != Command::Analyze && cmd != Command::Norm) {
      w.add(sym->describe() + " is unbounded; " + command_name(cmd) + " skipped");
    }
  }
  j["errors"] = errors;
  for (const auto& s : w.items()) out.warnings.push_back("symbol " + std::to_string(ctx.index + 1) + ": " + s);
  j["warnings"] = out.warnings;
  return out;
}

inline Json space_json(const AnalysisConfig& cfg, const DirichletSpace& space, Warnings& w) {
  Json j;
  j["frequencies"] = cfg.frequencies;
  j["weights"] = cfg.weights;
  j["description"] = space.frequencies().describe() + " / " + space.weights().describe();
  j["horizon"] = space.options().horizon;
  j["L"] = estimate_json(space.L());
  j["beta_star"] = estimate_json(space.beta_star());
  j["theta"] = num(space.theta());
  w.check(space.L(), "L");
  w.check(space.beta_star(), "beta*");
  // For β_k = Π_{i<k} e^{a^i} on Λ = (a^k) two closed forms circulate; report which one the window supports.
  const auto& f = space.frequencies();
  const auto& wt = space.weights();
  if (wt.family() == WeightSequence::Family::ExpProductOfPowers && f.family() == FrequencySequence::Family::Geometric &&
      !f.leading_zero() && f.first_parameter() == wt.parameter() && f.ratio_parameter() == wt.parameter()) {
    const double a = wt.parameter();
    const double c1 = 1 / (a * a - a);
    const double c2 = 1 / (a - 1);
    const double v = space.beta_star().value;
    const std::string supported = std::abs(v - c2) < std::abs(v - c1) ? "1/(a-1)" : "1/(a^2-a)";
    j["beta_star_check"] = Json{{"computed", num(v)},
                                {"candidates", Json{{"1/(a^2-a)", c1}, {"1/(a-1)", c2}}},
                                {"supported", supported},
                                {"discrepancy", std::abs(c1 - c2)}};
    w.add("beta* closed forms disagree for this space; the window supports " + supported);
  }
  return j;
}

}  // namespace detail

inline RunResult run(Command cmd, AnalysisConfig cfg, const RunOptions& opts) {
  if (opts.horizon) {
    if (*opts.horizon < 8) throw ConfigError("horizon must be at least 8");
    cfg.horizon = *opts.horizon;
  }
  if (opts.truncation) {
    if (*opts.truncation < 2) throw ConfigError("truncation must be at least 2");
    cfg.truncation = *opts.truncation;
  }
  RunResult result;
  Json& report = result.report;
  report["schema"] = 1;
  report["command"] = command_name(cmd);
  report["seed"] = opts.seed;
  report["truncation"] = cfg.truncation;

  const DirichletSpace space = make_space(cfg);
  Warnings space_warnings;
  report["space"] = detail::space_json(cfg, space, space_warnings);

  if (cmd == Command::Symmetry) {
    Json conj = Json::array();
    for (double c : cfg.conjugations) {
      const auto d = verify_conjugation(Conjugation(space, c), 100, opts.seed);
      conj.push_back(Json{{"c", c}, {"samples", d.samples}, {"isometry_defect", num(d.isometry)},
                          {"involution_defect", num(d.involution)}, {"antilinearity_defect", num(d.antilinearity)}});
    }
    report["conjugations"] = conj;
  }

  std::vector<std::future<detail::SymbolOutcome>> jobs;
  for (std::size_t i = 0; i < cfg.symbols.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      detail::SymbolContext ctx{cfg, space, opts, i, cfg.horizon, cfg.truncation};
      return detail::analyze_symbol(cmd, ctx);
    }));
  }
  Json symbols = Json::array();
  std::vector<std::string> warnings = space_warnings.items();
  bool failed = false;
  for (auto& job : jobs) {
    auto outcome = job.get();
    failed = failed || outcome.failed;
    warnings.insert(warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
    symbols.push_back(std::move(outcome.report));
  }
  report["symbols"] = symbols;
  report["warnings"] = warnings;
  result.exit_code = failed || (opts.strict && !warnings.empty()) ? 2 : 0;
  report["exit_code"] = result.exit_code;
  return result;
}

// ---------------------------------------------------------------------------
// --pretty

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(10) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

inline void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    rows.emplace_back(prefix, "[" + s + "]");
  } else {
    rows.emplace_back(prefix, scalar_text(v));
  }
}

}  // namespace detail

inline std::string render_table(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  return os.str();
}

}  // namespace dirop::cli
