#pragma once

// Estimators for asymptotic quantities (sup, inf, limsup, liminf) computed
// either in closed form or over a finite window of indices.
//
// Windowed limsup/liminf of a prefix x[0..n) look at its tail block of
// length ceil(n/4): when the block is monotone the last value is the limit
// estimate, otherwise the block extremum is used. A windowed estimate is
// reported as converged when the estimate, recomputed for every prefix
// length in the last ceil(H/4) indices, stays within the stabilization
// tolerance of the full-window value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace dirop {

inline constexpr double kStabilizationTol = 1e-9;

struct Estimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  bool analytic = false;

  static Estimate exact(double v) { return {v, true, true}; }
};

namespace window {

inline std::size_t tail_block(std::size_t n) { return (n + 3) / 4; }

enum class Extremum { Sup, Inf };

namespace detail {

inline bool same_value(double lhs, double rhs, double tol) {
  if (std::isinf(lhs) || std::isinf(rhs)) return lhs == rhs;
  if (std::isnan(lhs) || std::isnan(rhs)) return false;
  return std::abs(lhs - rhs) <= tol;
}

template <class ValueAt>
Estimate stabilized(std::size_t h, ValueAt value_at, double tol) {
  Estimate out;
  out.value = value_at(h);
  if (h < 2) return out;
  const std::size_t block = tail_block(h);
  const std::size_t first = h > block ? h - block : 1;
  const std::size_t span_len = h - first;
  const std::size_t samples = std::min<std::size_t>(span_len, 64);
  out.converged = true;
  for (std::size_t s = 0; s <= samples && out.converged; ++s) {
    const std::size_t n = samples == 0 ? h : first + (span_len * s) / samples;
    if (n == 0) continue;
    out.converged = same_value(value_at(n), out.value, tol);
  }
  return out;
}

}  // namespace detail

/// Limit estimate of the prefix x[0..n) from its tail block.
inline double tail_limit(std::span<const double> x, std::size_t n, Extremum kind) {
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t block = tail_block(n);
  const std::size_t lo = n - block;
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = lo + 1; i < n; ++i) {
    if (x[i] < x[i - 1]) increasing = false;
    if (x[i] > x[i - 1]) decreasing = false;
  }
  if (increasing || decreasing) return x[n - 1];
  auto first = x.begin() + static_cast<std::ptrdiff_t>(lo);
  auto last = x.begin() + static_cast<std::ptrdiff_t>(n);
  return kind == Extremum::Sup ? *std::max_element(first, last) : *std::min_element(first, last);
}

inline Estimate limsup(std::span<const double> x, double tol = kStabilizationTol) {
  return detail::stabilized(x.size(), [&](std::size_t n) { return tail_limit(x, n, Extremum::Sup); }, tol);
}

inline Estimate liminf(std::span<const double> x, double tol = kStabilizationTol) {
  return detail::stabilized(x.size(), [&](std::size_t n) { return tail_limit(x, n, Extremum::Inf); }, tol);
}

/// Running supremum over the whole window, converged when it stops moving.
inline Estimate sup(std::span<const double> x, double tol = kStabilizationTol) {
  std::vector<double> running(x.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) running[i] = m = std::max(m, x[i]);
  return detail::stabilized(x.size(), [&](std::size_t n) { return running[n - 1]; }, tol);
}

inline Estimate inf(std::span<const double> x, double tol = kStabilizationTol) {
  std::vector<double> running(x.size());
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) running[i] = m = std::min(m, x[i]);
  return detail::stabilized(x.size(), [&](std::size_t n) { return running[n - 1]; }, tol);
}

/// Stabilization of a sequence of partial sums (or any running value).
inline Estimate settled(std::span<const double> running, double tol = kStabilizationTol) {
  return detail::stabilized(running.size(), [&](std::size_t n) { return running[n - 1]; }, tol);
}

}  // namespace window

/// log(sum exp(terms)) without overflow.
inline double log_sum_exp(double acc, double term) {
  if (acc == -std::numeric_limits<double>::infinity()) return term;
  if (term == -std::numeric_limits<double>::infinity()) return acc;
  const double hi = std::max(acc, term);
  const double lo = std::min(acc, term);
  if (std::isinf(hi)) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace dirop
