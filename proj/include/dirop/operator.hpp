#pragma once

// Affine composition operators C f = f(a z + b) on H(β,Λ).
//
// For a >= 1 every basis vector is sent to a multiple of another one:
// C q_n = (β_{m_n}/β_n) e^{-λ_n b} q_{m_n} with λ_{m_n} = a λ_n, so norm,
// essential norm, Schatten membership and closed range are all read off the
// single sequence r_n = e^{-λ_n Re b} β_{m_n}/β_n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirop/errors.hpp"
#include "dirop/estimate.hpp"
#include "dirop/sequences.hpp"
#include "dirop/space.hpp"

namespace dirop {

inline bool is_self_map(double a, Complex b, double theta) {
  if (a == 0) return b.real() > theta;
  if (a > 0) return b.real() >= (1 - a) * theta;
  return false;
}

class AffineSymbol {
 public:
  static AffineSymbol make(const DirichletSpace& space, double a, Complex b) {
    require(std::isfinite(a) && std::isfinite(b.real()) && std::isfinite(b.imag()), ErrorCode::InvalidSymbol,
            "symbol coefficients must be finite");
    require(a == 0 || a >= 1, ErrorCode::InvalidSymbol,
            "slope a = " + std::to_string(a) + " is not allowed: a must be 0 or a >= 1");
    AffineSymbol s(space, a, b);
    s.self_map_ = is_self_map(a, b, space.theta());
    if (a >= 1) s.cache_index_map();
    if (a == 1 || (a > 1 && space.weights().log_slope())) {
      const double c = space.weights().log_slope().value_or(0.0);
      s.weight_exponent_ = a == 1 ? 0.0 : c * (a - 1);
    }
    return s;
  }

  const DirichletSpace& space() const { return space_; }
  double a() const { return a_; }
  Complex b() const { return b_; }
  bool self_map() const { return self_map_; }

  /// Window of n for which m_n is cached (all of them when the ratio certificate holds).
  std::size_t window() const { return index_map_.size(); }
  bool in_ratio_set() const { return !ratio_witness_; }
  std::optional<std::size_t> ratio_witness() const { return ratio_witness_; }
  bool ratio_window_limited() const { return ratio_window_limited_; }

  /// m_n, computed on demand past the cached window.
  std::optional<std::size_t> m(std::size_t n) const {
    require(a_ >= 1, ErrorCode::InvalidArgument, "index map needs a >= 1");
    if (n >= 1 && n <= index_map_.size()) return index_map_[n - 1];
    return ratio_index(space_.frequencies(), a_, n, space_.options().ratio_tol);
  }

  /// κ₀ with log(β_{m_n}/β_n) = κ₀ λ_n for every n, when the weights allow it.
  std::optional<double> weight_exponent() const { return weight_exponent_; }

  /// κ with log r_n = κ λ_n, when the weights allow it.
  std::optional<double> r_exponent() const {
    if (!weight_exponent_) return std::nullopt;
    return *weight_exponent_ - b_.real();
  }

  std::string describe() const {
    return "C(" + std::to_string(a_) + " z + (" + std::to_string(b_.real()) + (b_.imag() < 0 ? " - " : " + ") +
           std::to_string(std::abs(b_.imag())) + "i))";
  }

 private:
  AffineSymbol(DirichletSpace space, double a, Complex b) : space_(std::move(space)), a_(a), b_(b) {}

  void cache_index_map() {
    const std::size_t h = space_.window();
    index_map_.reserve(h);
    for (std::size_t n = 1; n <= h; ++n) {
      std::optional<std::size_t> m;
      try {
        m = ratio_index(space_.frequencies(), a_, n, space_.options().ratio_tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchWindowExceeded) throw;
        ratio_window_limited_ = true;
        break;
      }
      if (!m) {
        ratio_witness_ = n;
        break;
      }
      index_map_.push_back(*m);
    }
  }

  DirichletSpace space_;
  double a_;
  Complex b_;
  bool self_map_ = false;
  std::vector<std::size_t> index_map_;
  std::optional<std::size_t> ratio_witness_;
  bool ratio_window_limited_ = false;
  std::optional<double> weight_exponent_;
};

// ---------------------------------------------------------------------------
// The r_n sequence

/// log(β_{m_n}/β_n) - λ_n Re b.
inline double log_r_value(const AffineSymbol& sym, std::size_t n) {
  require(sym.a() >= 1, ErrorCode::InvalidArgument, "r_n is defined for a >= 1");
  const auto m = sym.m(n);
  if (!m) fail(ErrorCode::RatioIndexMissing, "no m_n for n = " + std::to_string(n));
  const auto& space = sym.space();
  const double lambda = space.frequencies().at_or_inf(n);
  const double shift = sym.b().real() == 0 ? 0.0 : lambda * sym.b().real();
  if (auto k0 = sym.weight_exponent()) return (*k0 == 0 ? 0.0 : *k0 * lambda) - shift;
  return space.log_weight_ratio(n, *m) - shift;
}

inline double r_value(const AffineSymbol& sym, std::size_t n) { return std::exp(log_r_value(sym, n)); }

inline std::vector<double> r_window(const AffineSymbol& sym, std::size_t horizon) {
  const std::size_t h = std::min(horizon, sym.window());
  std::vector<double> r(h);
  for (std::size_t n = 1; n <= h; ++n) r[n - 1] = r_value(sym, n);
  return r;
}

/// Window length actually available: the requested horizon capped by the cached index map.
inline std::size_t effective_horizon(const AffineSymbol& sym, std::size_t horizon) {
  const std::size_t h = horizon == 0 ? sym.space().options().horizon : horizon;
  return sym.a() >= 1 ? std::min(h, sym.window()) : h;
}

// ---------------------------------------------------------------------------
// Boundedness and norms

struct BoundednessReport {
  bool self_map = false;
  bool bounded = false;
  std::string reason;
  std::optional<Estimate> operator_norm;
  bool closed_form = false;
  std::vector<double> r_values;
};

namespace detail {

inline BoundednessReport unbounded(BoundednessReport rep, std::string why) {
  rep.bounded = false;
  rep.reason = std::move(why);
  rep.operator_norm.reset();
  return rep;
}

}  // namespace detail

inline BoundednessReport check_bounded(const AffineSymbol& sym, std::size_t horizon = 0) {
  const auto& space = sym.space();
  const double lambda1 = space.lambda(1);
  BoundednessReport rep;
  rep.self_map = sym.self_map();
  if (!rep.self_map) return detail::unbounded(rep, "symbol does not map the half-plane Re > θ into itself");

  if (sym.a() == 0) {
    rep.closed_form = true;
    if (lambda1 != 0) return detail::unbounded(rep, "constant symbol needs λ_1 = 0");
    rep.bounded = true;
    rep.reason = "constant symbol: rank one";
    try {
      rep.operator_norm = Estimate::exact(space.weight(1) * kernel_norm(space, sym.b()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TailNotCertifiable) throw;
      rep.reason = "constant symbol: rank one; norm needs a certified kernel tail";
    }
    return rep;
  }

  const std::size_t h = effective_horizon(sym, horizon);
  if (sym.a() > 1 && !sym.in_ratio_set())
    return detail::unbounded(rep, "a is not in the ratio set (no m_n for n = " + std::to_string(*sym.ratio_witness()) + ")");
  rep.r_values = r_window(sym, std::min<std::size_t>(h, 64));

  if (auto kappa = sym.r_exponent()) {
    rep.closed_form = true;
    if (*kappa > 0) return detail::unbounded(rep, "r_n grows like exp(κ λ_n) with κ > 0");
    rep.bounded = true;
    rep.operator_norm = Estimate::exact(*kappa == 0 ? 1.0 : std::exp(*kappa * lambda1));
    return rep;
  }

  require(h >= 1, ErrorCode::WindowNotConclusive, "no r_n available in the window");
  const auto r = r_window(sym, h);
  const Estimate s = window::sup(r);
  if (std::isinf(s.value)) return detail::unbounded(rep, "r_n leaves every bound inside the window");
  rep.bounded = true;
  rep.operator_norm = s;
  if (!s.converged) rep.reason = "sup of r_n has not stabilized over the window";
  return rep;
}

inline void require_bounded(const AffineSymbol& sym) {
  const auto rep = check_bounded(sym);
  if (!rep.bounded) fail(ErrorCode::UnboundedSymbol, sym.describe() + ": " + rep.reason);
}

// ---------------------------------------------------------------------------
// Action on coefficients

inline DirichletElement apply(const AffineSymbol& sym, const DirichletElement& f) {
  require_same_space(sym.space(), f.space());
  require_bounded(sym);
  DirichletElement out(sym.space());
  if (sym.a() == 0) {
    out.set(1, evaluate(f, sym.b()).value);
    return out;
  }
  for (const auto& [n, c] : f.coefficients()) {
    const auto m = sym.m(n);
    if (!m) fail(ErrorCode::RatioIndexMissing, "no m_n for n = " + std::to_string(n));
    out.add(*m, c * std::exp(-sym.space().lambda(n) * sym.b()));
  }
  return out;
}

/// Adjoint; for a = 0 the result is a₁β₁² k_{b}, truncated once the certified tail is below tol.
inline DirichletElement apply_adjoint(const AffineSymbol& sym, const DirichletElement& f, double tol = 1e-14) {
  require_same_space(sym.space(), f.space());
  require_bounded(sym);
  const auto& space = sym.space();
  if (sym.a() == 0) {
    auto k = kernel_truncated(space, sym.b(), tol).element;
    k *= f.coefficient(1) * std::exp(2 * space.log_weight(1));
    return k;
  }
  DirichletElement out(space);
  for (const auto& [k, c] : f.coefficients()) {
    const auto n = ratio_preimage(space.frequencies(), sym.a(), k, space.options().ratio_tol);
    if (!n) continue;  // k is not of the form m_n
    const double lw = space.log_weight_ratio(*n, k);
    out.add(*n, c * std::exp(2 * lw - space.lambda(*n) * std::conj(sym.b())));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Essential norm, compactness, Schatten classes, closed range

inline Estimate essential_norm(const AffineSymbol& sym, std::size_t horizon = 0) {
  require_bounded(sym);
  if (sym.a() == 0) return Estimate::exact(0);
  if (auto kappa = sym.r_exponent()) return Estimate::exact(*kappa == 0 ? 1.0 : 0.0);
  return window::limsup(r_window(sym, effective_horizon(sym, horizon)));
}

inline bool is_compact(const AffineSymbol& sym, std::size_t horizon = 0) {
  return essential_norm(sym, horizon).value <= sym.space().options().zero_tol;
}

struct SchattenReport {
  double p = 2;
  Summability member = Summability::Undetermined;
  double partial_sum = 0;    // Σ_{n<=window} r_n^p
  double tail_bound = std::numeric_limits<double>::quiet_NaN();  // Σ_{n>window} r_n^p when certifiable
  Estimate sigma_c;          // critical abscissa of Σ (β_{m_k}/β_k)^p e^{-pλ_k s}
  std::size_t window = 0;
};

namespace detail {

inline double r_power_tail(const AffineSymbol& sym, double p, std::size_t n) {
  const auto kappa = sym.r_exponent();
  if (!kappa || *kappa >= 0) return std::numeric_limits<double>::quiet_NaN();
  return sym.space().frequencies().exp_tail_bound(-p * *kappa, n).value_or(std::numeric_limits<double>::quiet_NaN());
}

// Windowed σ_c: partial sums when they grow, tails when the series converges at 0.
inline Estimate windowed_sigma_c(const AffineSymbol& sym, double p, std::size_t h) {
  std::vector<double> logw(h);
  std::vector<double> lambda(h);
  for (std::size_t n = 1; n <= h; ++n) {
    lambda[n - 1] = sym.space().lambda(n);
    logw[n - 1] = p * (log_r_value(sym, n) + lambda[n - 1] * sym.b().real());
  }
  std::vector<double> x;
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < h; ++n) {
    acc = log_sum_exp(acc, logw[n]);
    if (lambda[n] > 0) x.push_back(acc / (p * lambda[n]));
  }
  Estimate partial = window::limsup(x);
  if (!(partial.value <= 0)) return partial;
  std::vector<double> tails(h, -std::numeric_limits<double>::infinity());
  acc = -std::numeric_limits<double>::infinity();
  for (std::size_t n = h; n-- > 0;) {
    tails[n] = acc;
    acc = log_sum_exp(acc, logw[n]);
  }
  x.clear();
  for (std::size_t n = 0; n + 1 < h; ++n)
    if (lambda[n] > 0 && std::isfinite(tails[n])) x.push_back(tails[n] / (p * lambda[n]));
  if (x.empty()) return partial;
  return window::limsup(x);
}

}  // namespace detail

inline SchattenReport schatten_membership(const AffineSymbol& sym, double p, std::size_t horizon = 0) {
  require(p > 0 && std::isfinite(p), ErrorCode::InvalidArgument, "Schatten exponent must be positive");
  require_bounded(sym);
  const auto& space = sym.space();
  SchattenReport rep;
  rep.p = p;
  if (sym.a() == 0) {
    // Rank one: the single singular value is the operator norm.
    rep.member = Summability::Converges;
    rep.partial_sum = std::pow(check_bounded(sym).operator_norm.value_or(Estimate{std::numeric_limits<double>::quiet_NaN(), false, false}).value, p);
    rep.tail_bound = 0;
    rep.sigma_c = Estimate::exact(-std::numeric_limits<double>::infinity());
    return rep;
  }
  const std::size_t h = effective_horizon(sym, horizon);
  rep.window = h;
  for (std::size_t n = 1; n <= h; ++n) rep.partial_sum += std::exp(p * log_r_value(sym, n));
  rep.tail_bound = detail::r_power_tail(sym, p, h);

  if (auto kappa = sym.r_exponent()) {
    const Estimate L = space.L();
    rep.sigma_c = Estimate{*sym.weight_exponent() + L.value / p, L.converged, L.analytic};
    if (*kappa == 0) {
      rep.member = Summability::Diverges;
    } else if (-p * *kappa > L.value) {
      rep.member = L.converged ? Summability::Converges : Summability::Undetermined;
    } else if (-p * *kappa < L.value) {
      rep.member = L.converged ? Summability::Diverges : Summability::Undetermined;
    }
    return rep;
  }

  const double tol = space.options().zero_tol;
  const Estimate ess = window::limsup(r_window(sym, h));
  rep.sigma_c = detail::windowed_sigma_c(sym, p, h);
  if (ess.value > tol) {
    rep.member = Summability::Diverges;  // terms do not tend to 0
  } else if (sym.b().real() > rep.sigma_c.value + tol) {
    rep.member = Summability::Converges;
  } else if (sym.b().real() < rep.sigma_c.value - tol) {
    rep.member = Summability::Diverges;
  }
  return rep;
}

struct HilbertSchmidtReport {
  Summability finite = Summability::Undetermined;
  double value = std::numeric_limits<double>::infinity();  // sqrt(Σ r_n²) over the window when finite
  double tail_bound = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
};

inline HilbertSchmidtReport hilbert_schmidt(const AffineSymbol& sym, std::size_t horizon = 0) {
  const SchattenReport s = schatten_membership(sym, 2.0, horizon);
  HilbertSchmidtReport rep;
  rep.finite = s.member;
  rep.tail_bound = s.tail_bound;
  if (s.member == Summability::Converges) {
    rep.value = std::sqrt(s.partial_sum);
    const double tol = sym.space().options().zero_tol;
    rep.converged = sym.a() == 0 || (std::isfinite(s.tail_bound) && s.tail_bound <= tol);
  } else if (s.member == Summability::Diverges) {
    rep.converged = true;
  }
  return rep;
}

inline std::vector<double> singular_values_closed_form(const AffineSymbol& sym, std::size_t count) {
  require(sym.a() >= 1, ErrorCode::InvalidArgument, "closed-form singular values need a >= 1");
  require_bounded(sym);
  std::vector<double> r(count);
  for (std::size_t k = 1; k <= count; ++k) r[k - 1] = r_value(sym, k);
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

struct ClosedRangeReport {
  bool closed = false;
  Estimate infimum;   // inf_n r_n
  Estimate liminf;    // liminf_n r_n; closed iff it is positive
};

inline ClosedRangeReport closed_range(const AffineSymbol& sym, std::size_t horizon = 0) {
  require_bounded(sym);
  ClosedRangeReport rep;
  if (sym.a() == 0) {
    rep.closed = true;
    return rep;
  }
  if (auto kappa = sym.r_exponent()) {
    rep.closed = *kappa == 0;
    rep.liminf = Estimate::exact(rep.closed ? 1.0 : 0.0);
    rep.infimum = rep.liminf;
    return rep;
  }
  const auto r = r_window(sym, effective_horizon(sym, horizon));
  rep.infimum = window::inf(r);
  rep.liminf = window::liminf(r);
  rep.closed = rep.liminf.value > sym.space().options().zero_tol;
  return rep;
}

struct CompactDifferenceReport {
  bool compact = false;
  Estimate essential_norm;
  bool lower_bound_only = false;  // the value bounds the essential norm from below
};

inline CompactDifferenceReport compact_difference(const AffineSymbol& s1, const AffineSymbol& s2, std::size_t horizon = 0) {
  require_same_space(s1.space(), s2.space());
  require_bounded(s1);
  require_bounded(s2);
  const double tol = s1.space().options().zero_tol;
  const Estimate e1 = essential_norm(s1, horizon);
  const Estimate e2 = essential_norm(s2, horizon);
  const bool c1 = e1.value <= tol;
  const bool c2 = e2.value <= tol;
  CompactDifferenceReport rep;
  if (c1 && c2) {
    rep.compact = true;
    rep.essential_norm = Estimate{0.0, e1.converged && e2.converged, e1.analytic && e2.analytic};
    return rep;
  }
  if (c1 != c2) {
    rep.essential_norm = c1 ? e2 : e1;
    return rep;
  }
  const auto& space = s1.space();
  const std::size_t h = std::min(effective_horizon(s1, horizon), effective_horizon(s2, horizon));
  std::vector<double> d(h);
  if (s1.a() != s2.a()) {
    // Columns of the difference carry two entries at distinct rows.
    for (std::size_t n = 1; n <= h; ++n) d[n - 1] = std::hypot(r_value(s1, n), r_value(s2, n));
    rep.essential_norm = window::limsup(d);
    rep.lower_bound_only = true;
    return rep;
  }
  for (std::size_t n = 1; n <= h; ++n) {
    const double lambda = space.lambda(n);
    const double w = std::exp(log_r_value(s1, n) + lambda * s1.b().real());
    d[n - 1] = w * std::abs(std::exp(-lambda * s1.b()) - std::exp(-lambda * s2.b()));
  }
  rep.essential_norm = window::limsup(d);
  rep.compact = rep.essential_norm.value <= tol;
  return rep;
}

}  // namespace dirop
