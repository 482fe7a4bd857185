#pragma once

// Cyclicity of affine composition operators, the weighted-shift model
// T = I ⊕ S_α, and explicit polynomials u with u(1) = ν and small ‖u(S_α)e_1‖.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dirop/errors.hpp"
#include "dirop/estimate.hpp"
#include "dirop/operator.hpp"
#include "dirop/oracle.hpp"
#include "dirop/sequences.hpp"
#include "dirop/space.hpp"

namespace dirop {

// ---------------------------------------------------------------------------
// Weighted shift model

/// Forward shift S_α e_j = α_j e_{j+1} on H²₀, weights given through log α_j.
class ShiftModel {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  ShiftModel(std::function<double(std::size_t)> log_alpha, std::size_t length = kUnbounded)
      : log_alpha_(std::move(log_alpha)), length_(length) {}

  static ShiftModel constant(double alpha = 1.0) {
    require(alpha > 0, ErrorCode::InvalidArgument, "shift weights must be positive");
    const double la = std::log(alpha);
    return ShiftModel([la](std::size_t) { return la; });
  }

  static ShiftModel from_weights(std::vector<double> alpha) {
    for (double a : alpha) require(a > 0 && std::isfinite(a), ErrorCode::InvalidArgument, "shift weights must be positive");
    const std::size_t n = alpha.size();
    return ShiftModel([w = std::move(alpha)](std::size_t j) { return std::log(w[j - 1]); }, n);
  }

  std::size_t length() const { return length_; }

  double log_alpha(std::size_t j) const {
    require(j >= 1, ErrorCode::InvalidArgument, "shift indices start at 1");
    if (j > length_) fail(ErrorCode::WindowExceeded, "shift weight " + std::to_string(j) + " beyond the model window");
    return log_alpha_(j);
  }

  double alpha(std::size_t j) const { return std::exp(log_alpha(j)); }

  /// log ω_j for j = 1..count, accumulated with Neumaier compensation.
  std::vector<double> log_omega(std::size_t count) const {
    std::vector<double> out(count);
    double sum = 0;
    double comp = 0;
    for (std::size_t j = 1; j <= count; ++j) {
      const double x = log_alpha(j);
      const double t = sum + x;
      if (std::isfinite(t)) {
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      }
      sum = t;
      out[j - 1] = sum + comp;
    }
    return out;
  }

 private:
  std::function<double(std::size_t)> log_alpha_;
  std::size_t length_;
};

/// Initial points of Λ with respect to a, tallied.
struct InitialPointCensus {
  std::vector<InitialPoint> points;
  std::size_t zero = 0;
  std::size_t nonzero = 0;
};

inline InitialPointCensus initial_point_census(const AffineSymbol& sym, std::size_t horizon) {
  InitialPointCensus c;
  const std::size_t h = std::min(horizon, sym.space().window());
  c.points = initial_points(sym.space().frequencies(), sym.a(), h, sym.space().options().ratio_tol);
  for (const auto& p : c.points) (p.zero ? c.zero : c.nonzero) += 1;
  return c;
}

/// α_j = r_{j+1} for the block below the fixed constant direction.
inline ShiftModel shift_from_space(const AffineSymbol& sym, std::size_t horizon = 0) {
  require(sym.a() > 1, ErrorCode::InvalidArgument, "shift model needs a > 1");
  require_bounded(sym);
  const std::size_t h = horizon == 0 ? sym.space().options().horizon : horizon;
  const auto census = initial_point_census(sym, h);
  if (!(census.zero == 1 && census.nonzero == 1 && census.points.size() == 2 && census.points[0].index == 1 &&
        census.points[1].index == 2))
    fail(ErrorCode::WrongInitialPointCensus, "shift model needs exactly one zero and one non-zero initial point (found " +
                                                 std::to_string(census.zero) + " zero, " +
                                                 std::to_string(census.nonzero) + " non-zero)");
  const std::size_t length = sym.r_exponent() ? ShiftModel::kUnbounded : (sym.window() > 1 ? sym.window() - 1 : 0);
  return ShiftModel([sym](std::size_t j) { return log_r_value(sym, j + 1); }, length);
}

// ---------------------------------------------------------------------------
// Polynomials u = ν + (z - 1) p with u(1) = ν and small ‖u(S_α) e_1‖

struct ApproxOptions {
  double gamma = 0.55;                  // h_j = ω_j s_j^γ, γ in (1/2, 1)
  std::size_t degree_cap = 1'000'000;
  double divergence_threshold = 1e3;    // evidence that Σ ω_j^{-2} diverges
  std::size_t zero_nu_degree = 1;       // s used when ν = 0
};

/// Append rounding corrections until Σ c equals target exactly in rational arithmetic.
inline void balance_coefficient_sum(std::vector<Complex>& c, Complex target) {
  Rational re = -Rational(target.real());
  Rational im = -Rational(target.imag());
  for (const auto& v : c) {
    re += Rational(v.real());
    im += Rational(v.imag());
  }
  while (re != 0 || im != 0) {
    const Complex fix(-static_cast<double>(re), -static_cast<double>(im));
    c.push_back(fix);
    re += Rational(fix.real());
    im += Rational(fix.imag());
  }
}

struct ApproxPolynomial {
  Complex nu;
  Complex epsilon;
  std::size_t s = 0;             // p has degree s
  std::vector<Complex> p;        // a_0 .. a_s
  std::vector<Complex> u;        // coefficients of u, u_0 .. u_{s+1}
  double predicted_residual = 0;
  double measured_residual = 0;  // ‖u(S_α)e_1‖ from the coefficients of u

  /// u(1); equal to ν by the form of u.
  Complex value_at_one() const { return nu; }
  std::size_t degree() const {
    std::size_t d = u.size();
    while (d > 1 && u[d - 1] == Complex(0)) --d;
    return d - 1;
  }
};

namespace detail {

// Running log-sums for s_j = Σ ω_i^{-2}, G_j = Σ 1/(h_i ω_i), Q_j = Σ h_i^{-2}.
struct AbelDiniSums {
  std::vector<double> log_omega;  // index j-1
  std::vector<double> log_g;      // log 1/(h_j ω_j)
  double log_s = -std::numeric_limits<double>::infinity();
  double log_G = -std::numeric_limits<double>::infinity();
  double log_Q = -std::numeric_limits<double>::infinity();
  double omega_sum = 0;   // Neumaier state for log ω
  double omega_comp = 0;
  double gamma;

  explicit AbelDiniSums(double g) : gamma(g) {}

  std::size_t size() const { return log_g.size(); }

  void push(double log_alpha) {
    const double t = omega_sum + log_alpha;
    if (std::isfinite(t))
      omega_comp += std::abs(omega_sum) >= std::abs(log_alpha) ? (omega_sum - t) + log_alpha : (log_alpha - t) + omega_sum;
    omega_sum = t;
    const double lw = omega_sum + omega_comp;
    log_omega.push_back(lw);
    const double log_t = -2 * lw;
    log_s = log_sum_exp(log_s, log_t);
    const double lg = log_t - gamma * log_s;
    log_g.push_back(lg);
    log_G = log_sum_exp(log_G, lg);
    log_Q = log_sum_exp(log_Q, log_t - 2 * gamma * log_s);
  }

  double predicted(double abs_nu) const { return abs_nu * std::exp(0.5 * log_Q - log_G); }
};

inline double measured_residual(const std::vector<Complex>& u, const std::vector<double>& log_omega) {
  // ‖u(S)e_1‖² = |u_0|² + Σ_{j>=1} |u_j|² ω_j²
  double sum = std::norm(u[0]);
  for (std::size_t j = 1; j < u.size(); ++j) {
    if (u[j] == Complex(0)) continue;
    sum += std::exp(2 * (std::log(std::abs(u[j])) + log_omega[j - 1]));
  }
  return std::sqrt(sum);
}

inline void require_divergence(const ShiftModel& model, const ApproxOptions& opt) {
  require(opt.gamma > 0.5 && opt.gamma < 1, ErrorCode::InvalidArgument, "gamma must lie in (1/2, 1)");
  const double log_threshold = std::log(opt.divergence_threshold);
  const std::size_t limit = std::min(model.length(), std::max<std::size_t>(opt.degree_cap + 1, 2));
  AbelDiniSums sums(opt.gamma);
  for (std::size_t j = 1; j <= limit; ++j) {
    sums.push(model.log_alpha(j));
    if (sums.log_s > log_threshold) {
      // Increments must still matter at the crossing point.
      const double rel = std::exp(-2 * sums.log_omega.back() - sums.log_s);
      if (rel >= kStabilizationTol) return;
      break;
    }
  }
  fail(ErrorCode::DivergenceNotEvidenced, "partial sums of ω_j^{-2} do not exceed " +
                                              std::to_string(opt.divergence_threshold) + " with live increments");
}

// Make u(1) = ν hold exactly, then measure; corrections may lengthen u by a term or two.
inline void finalize(ApproxPolynomial& out, AbelDiniSums& sums, const ShiftModel& model) {
  balance_coefficient_sum(out.u, out.nu);
  while (sums.log_omega.size() + 1 < out.u.size()) sums.push(model.log_alpha(sums.log_omega.size() + 1));
  out.measured_residual = measured_residual(out.u, sums.log_omega);
}

inline ApproxPolynomial emit(const AbelDiniSums& sums, std::size_t s, Complex nu) {
  ApproxPolynomial out;
  out.nu = nu;
  out.s = s;
  out.p.resize(s + 1);
  out.u.assign(s + 2, Complex(0));
  double logG_j = -std::numeric_limits<double>::infinity();
  double logG_s = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < s; ++j) logG_s = log_sum_exp(logG_s, sums.log_g[j]);
  double logQ_s = -std::numeric_limits<double>::infinity();
  double log_s = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < s; ++j) {
    log_s = log_sum_exp(log_s, -2 * sums.log_omega[j]);
    logQ_s = log_sum_exp(logQ_s, -2 * sums.log_omega[j] - 2 * sums.gamma * log_s);
  }

  if (nu != Complex(0)) {
    // a_0 = ν, a_j = a_{j-1} - ε/(h_j ω_j), ε = ν / G_s, a_s = 0
    out.epsilon = nu * std::exp(-logG_s);
    out.p[0] = nu;
    for (std::size_t j = 1; j < s; ++j) {
      logG_j = log_sum_exp(logG_j, sums.log_g[j - 1]);
      out.p[j] = nu * -std::expm1(logG_j - logG_s);
    }
    out.p[s] = 0;
    out.predicted_residual = std::abs(nu) * std::exp(0.5 * logQ_s - logG_s);
  } else {
    // a_0 = ε, same recursion; ‖u(S)e_1‖² = ε² C with C from s alone
    out.p[0] = 1;
    for (std::size_t j = 1; j <= s; ++j) out.p[j] = out.p[j - 1] - std::exp(sums.log_g[j - 1]);
  }
  out.u[0] = nu - out.p[0];
  for (std::size_t j = 1; j <= s; ++j) out.u[j] = out.p[j - 1] - out.p[j];
  out.u[s + 1] = out.p[s];
  return out;
}

}  // namespace detail

/// Smallest s <= degree_cap whose predicted residual meets the target.
inline ApproxPolynomial build_approx_polynomial(const ShiftModel& model, Complex nu, double target,
                                                const ApproxOptions& opt = {}) {
  require(target > 0, ErrorCode::InvalidArgument, "residual target must be positive");
  detail::require_divergence(model, opt);
  detail::AbelDiniSums sums(opt.gamma);
  if (nu == Complex(0)) {
    const std::size_t s = std::max<std::size_t>(opt.zero_nu_degree, 1);
    for (std::size_t j = 1; j <= s + 1; ++j) sums.push(model.log_alpha(j));
    auto out = detail::emit(sums, s, nu);
    const double unit = detail::measured_residual(out.u, sums.log_omega);
    const double eps = target / (2 * unit);
    for (auto& a : out.p) a *= eps;
    for (auto& c : out.u) c *= eps;
    out.epsilon = eps;
    out.predicted_residual = target / 2;
    detail::finalize(out, sums, model);
    return out;
  }
  const double abs_nu = std::abs(nu);
  const std::size_t cap = model.length() == 0 ? 0 : std::min(opt.degree_cap, model.length() - 1);
  for (std::size_t s = 1; s <= cap; ++s) {
    sums.push(model.log_alpha(s));
    if (sums.predicted(abs_nu) <= target) {
      sums.push(model.log_alpha(s + 1));
      auto out = detail::emit(sums, s, nu);
      detail::finalize(out, sums, model);
      return out;
    }
  }
  fail(ErrorCode::DegreeCapExceeded, "no degree up to " + std::to_string(opt.degree_cap) + " reaches residual " +
                                         std::to_string(target));
}

/// The construction at a prescribed s (no search).
inline ApproxPolynomial build_approx_polynomial_at_degree(const ShiftModel& model, Complex nu, std::size_t s,
                                                          const ApproxOptions& opt = {}) {
  require(s >= 1, ErrorCode::InvalidArgument, "degree must be positive");
  require(opt.gamma > 0.5 && opt.gamma < 1, ErrorCode::InvalidArgument, "gamma must lie in (1/2, 1)");
  detail::AbelDiniSums sums(opt.gamma);
  for (std::size_t j = 1; j <= s + 1; ++j) sums.push(model.log_alpha(j));
  auto out = detail::emit(sums, s, nu);
  if (nu == Complex(0)) out.epsilon = 1;
  detail::finalize(out, sums, model);
  if (nu == Complex(0)) out.predicted_residual = out.measured_residual;
  return out;
}

struct TraceRow {
  std::size_t degree;
  double predicted_residual;
  double measured_residual;
};

/// Residuals along s = 1, 2, 4, ... up to and including s_final.
inline std::vector<TraceRow> doubling_trace(const ShiftModel& model, Complex nu, std::size_t s_final,
                                            const ApproxOptions& opt = {}) {
  std::vector<TraceRow> rows;
  for (std::size_t s = 1;; s *= 2) {
    const std::size_t d = std::min(s, s_final);
    const auto poly = build_approx_polynomial_at_degree(model, nu, d, opt);
    rows.push_back({d, poly.predicted_residual, poly.measured_residual});
    if (d == s_final) break;
  }
  return rows;
}

inline void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "degree,predicted_residual,measured_residual\n";
  os.precision(17);
  for (const auto& r : rows) os << r.degree << ',' << r.predicted_residual << ',' << r.measured_residual << '\n';
}

/// Σ of the coefficients, added exactly and rounded once.
inline Complex exact_coefficient_sum(const std::vector<Complex>& c) {
  Rational re = 0;
  Rational im = 0;
  for (const auto& v : c) {
    re += Rational(v.real());
    im += Rational(v.imag());
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// Apply p(S_α) to e_1 one shift at a time; returns coordinates 1..deg+1.
inline std::vector<Complex> apply_polynomial_to_e1(const ShiftModel& model, const std::vector<Complex>& p) {
  std::vector<Complex> out(p.size(), Complex(0));
  double x = 1;  // S^j e_1 = x e_{j+1}
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j > 0) x *= model.alpha(j);
    out[j] = p[j] * x;
  }
  return out;
}

struct CyclicApproximation {
  std::vector<Complex> p;       // coefficients of p
  std::vector<Complex> p_tilde;
  ApproxPolynomial u;
  double interpolation_offset = 0;  // ‖p̃(S)e_1 - y‖
  double residual = 0;              // ‖p(S_α)e_1 - y‖ by direct shift application
  double value_error = 0;           // |κ p(1) - μ| with p(1) summed exactly
};

/// p with κ p(1) = μ and ‖p(S_α)e_1 - y‖ < eps; y holds the coordinates of e_1, e_2, ...
inline CyclicApproximation cyclic_approximation(const ShiftModel& model, Complex kappa, Complex mu,
                                                const std::vector<Complex>& y, double eps,
                                                std::optional<double> offset = std::nullopt,
                                                const ApproxOptions& opt = {}) {
  require(kappa != Complex(0), ErrorCode::InvalidArgument, "κ must be non-zero");
  require(eps > 0, ErrorCode::InvalidArgument, "ε must be positive");
  const double delta = offset.value_or(eps / 8);
  require(delta >= 0 && delta < eps, ErrorCode::InvalidArgument, "interpolation offset must lie in [0, ε)");
  CyclicApproximation out;
  out.interpolation_offset = delta;
  // c_0 = b_1 + δ, c_m = b_{m+1} / ω_m
  if (!y.empty()) {
    const auto lw = model.log_omega(y.size() - 1);
    out.p_tilde.resize(y.size());
    out.p_tilde[0] = y[0] + delta;
    for (std::size_t m = 1; m < y.size(); ++m) out.p_tilde[m] = y[m] * std::exp(-lw[m - 1]);
  }
  const Complex nu = mu / kappa - exact_coefficient_sum(out.p_tilde);
  out.u = build_approx_polynomial(model, nu, (eps - delta) / 2, opt);
  out.p = out.u.u;
  if (out.p.size() < out.p_tilde.size()) out.p.resize(out.p_tilde.size(), Complex(0));
  for (std::size_t j = 0; j < out.p_tilde.size(); ++j) out.p[j] += out.p_tilde[j];
  balance_coefficient_sum(out.p, mu / kappa);

  const auto image = apply_polynomial_to_e1(model, out.p);
  double sq = 0;
  for (std::size_t k = 0; k < std::max(image.size(), y.size()); ++k) {
    const Complex a = k < image.size() ? image[k] : Complex(0);
    const Complex b = k < y.size() ? y[k] : Complex(0);
    sq += std::norm(a - b);
  }
  out.residual = std::sqrt(sq);
  out.value_error = std::abs(kappa * exact_coefficient_sum(out.p) - mu);
  return out;
}

// ---------------------------------------------------------------------------
// Krylov rank oracle

struct KrylovReport {
  std::size_t rank = 0;
  std::size_t dimension = 0;
  std::vector<std::size_t> zero_rows;  // 1-based coordinates never reached by the orbit
};

/// Numeric rank of span{f, Tf, ..., T^M f} by column-pivoted Gram-Schmidt.
inline KrylovReport krylov_density_oracle(const Matrix& T, const std::vector<Complex>& f, std::size_t powers) {
  const std::size_t N = T.rows();
  require(T.cols() == N && f.size() == N, ErrorCode::InvalidArgument, "Krylov oracle needs a square matrix and matching seed");
  require(powers + 1 >= N, ErrorCode::InvalidArgument, "need at least N - 1 powers");
  std::vector<std::vector<Complex>> cols;
  std::vector<Complex> x = f;
  for (std::size_t k = 0; k <= powers; ++k) {
    double nrm = 0;
    for (const auto& v : x) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    if (nrm > 0) {
      std::vector<Complex> c(N);
      for (std::size_t i = 0; i < N; ++i) c[i] = x[i] / nrm;
      cols.push_back(std::move(c));
    }
    std::vector<Complex> next(N, Complex(0));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) next[i] += T(i, j) * x[j];
    x = std::move(next);
  }
  KrylovReport rep;
  rep.dimension = N;
  for (std::size_t i = 0; i < N; ++i) {
    bool zero = true;
    for (const auto& c : cols) zero = zero && c[i] == Complex(0);
    if (zero) rep.zero_rows.push_back(i + 1);
  }
  const double threshold = 1e-8;  // columns are normalized, so the largest column norm is 1
  std::vector<bool> used(cols.size(), false);
  while (rep.rank < N) {
    std::size_t best = cols.size();
    double best_norm = threshold;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (used[k]) continue;
      double nrm = 0;
      for (const auto& v : cols[k]) nrm += std::norm(v);
      nrm = std::sqrt(nrm);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = k;
      }
    }
    if (best == cols.size()) break;
    used[best] = true;
    ++rep.rank;
    auto q = cols[best];
    for (auto& v : q) v /= best_norm;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (used[k]) continue;
      Complex proj = 0;
      for (std::size_t i = 0; i < N; ++i) proj += std::conj(q[i]) * cols[k][i];
      for (std::size_t i = 0; i < N; ++i) cols[k][i] -= proj * q[i];
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Cyclicity { Cyclic, NotCyclic, Inconclusive };

inline constexpr std::string_view to_string(Cyclicity c) {
  switch (c) {
    case Cyclicity::Cyclic: return "cyclic";
    case Cyclicity::NotCyclic: return "not_cyclic";
    case Cyclicity::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CyclicityVerdict {
  Cyclicity kind = Cyclicity::Inconclusive;
  std::string reason;
  std::optional<bool> supercyclic;  // false whenever the verdict is decided
  std::optional<InitialPointCensus> census;
};

namespace detail {

inline bool distinct_eigenvalues(const AffineSymbol& sym, std::size_t h, std::size_t& n_out, std::size_t& m_out) {
  constexpr double tol = 1e-12;
  const auto& space = sym.space();
  std::vector<double> logmod(h);
  std::vector<double> arg(h);
  for (std::size_t n = 1; n <= h; ++n) {
    const double lambda = space.lambda(n);
    logmod[n - 1] = -lambda * sym.b().real();
    arg[n - 1] = std::remainder(-lambda * sym.b().imag(), 2 * std::numbers::pi);
  }
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j) {
      if (std::abs(logmod[i] - logmod[j]) > tol) continue;
      const double d = std::abs(std::remainder(arg[i] - arg[j], 2 * std::numbers::pi));
      if (d <= tol) {
        n_out = i + 1;
        m_out = j + 1;
        return false;
      }
    }
  return true;
}

}  // namespace detail

inline CyclicityVerdict classify_cyclicity(const AffineSymbol& sym, std::size_t horizon = 0,
                                           const ApproxOptions& opt = {}) {
  require_bounded(sym);
  const auto& space = sym.space();
  const std::size_t h = horizon == 0 ? space.options().horizon : horizon;
  CyclicityVerdict v;
  if (sym.a() == 0) {
    v.kind = Cyclicity::NotCyclic;
    v.reason = "constant symbol: every orbit spans at most two dimensions";
    v.supercyclic = false;
    return v;
  }
  if (sym.a() == 1) {
    v.supercyclic = false;
    if (sym.b() == Complex(0)) {
      v.kind = Cyclicity::NotCyclic;
      v.reason = "identity: the orbit contains only one function";
      return v;
    }
    std::size_t n = 0, m = 0;
    if (detail::distinct_eigenvalues(sym, std::min(h, space.window()), n, m)) {
      v.kind = Cyclicity::Cyclic;
      v.reason = "diagonal with pairwise distinct eigenvalues e^{-λ_n b} over the window";
    } else {
      v.kind = Cyclicity::NotCyclic;
      v.reason = "repeated eigenvalue at indices " + std::to_string(n) + " and " + std::to_string(m);
    }
    return v;
  }

  v.census = initial_point_census(sym, h);
  const auto& c = *v.census;
  if (c.nonzero >= 2) {
    v.kind = Cyclicity::NotCyclic;
    v.reason = "at least two non-zero initial points";
    v.supercyclic = false;
    return v;
  }
  if (c.nonzero == 1 && c.zero == 0) {
    v.kind = Cyclicity::Cyclic;
    v.reason = "exactly one initial point";
    v.supercyclic = false;
    return v;
  }
  if (c.nonzero == 1 && c.zero == 1) {
    const double bs = space.beta_star().value;
    try {
      detail::require_divergence(shift_from_space(sym, h), opt);
      v.kind = Cyclicity::Cyclic;
      v.reason = "one zero and one non-zero initial point; Σ ω_j^{-2} diverges over the window";
      v.supercyclic = false;
      return v;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivergenceNotEvidenced && e.code() != ErrorCode::WindowExceeded) throw;
    }
    if (std::isfinite(bs) && sym.b().real() > sym.a() * bs && sym.b().real() >= 0) {
      v.kind = Cyclicity::Cyclic;
      v.reason = "one zero and one non-zero initial point; Re b > a β* and Re b >= 0";
      v.supercyclic = false;
      return v;
    }
    v.kind = Cyclicity::Inconclusive;
    v.reason = "one zero and one non-zero initial point, but (ω_j^{-1}) may be square summable";
    return v;
  }
  v.kind = Cyclicity::Inconclusive;
  v.reason = "initial-point census outside the decided cases";
  return v;
}

}  // namespace dirop
