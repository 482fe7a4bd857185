#pragma once

// The Hilbert space H(β,Λ) of Dirichlet series f(z) = Σ a_n e^{-λ_n z} with
// ⟨f,g⟩ = Σ a_n conj(b_n) β_n². Elements are finitely supported.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dirop/errors.hpp"
#include "dirop/estimate.hpp"
#include "dirop/sequences.hpp"

namespace dirop {

using Complex = std::complex<double>;

struct SpaceOptions {
  std::size_t horizon = 256;
  double ratio_tol = kDefaultRatioTol;
  double zero_tol = 1e-9;  // values at or below this count as 0 in verdicts
  std::size_t kernel_term_cap = std::size_t{1} << 20;
};

struct HalfPlaneDomain {
  double theta = 0;
  bool contains(Complex z) const { return z.real() > theta; }
};

class DirichletSpace {
 public:
  DirichletSpace(FrequencySequence freq, WeightSequence weights, SpaceOptions opts = {}) {
    require(opts.horizon >= 8, ErrorCode::InvalidArgument, "horizon must be at least 8");
    auto impl = std::make_shared<Impl>(Impl{std::move(freq), std::move(weights), opts, {}, {}});
    impl->L = compute_L(impl->freq, opts.horizon);
    impl->beta_star = compute_beta_star(impl->weights, impl->freq, opts.horizon);
    impl_ = std::move(impl);
  }

  const FrequencySequence& frequencies() const { return impl_->freq; }
  const WeightSequence& weights() const { return impl_->weights; }
  const SpaceOptions& options() const { return impl_->opts; }

  Estimate L() const { return impl_->L; }
  Estimate beta_star() const { return impl_->beta_star; }

  /// Abscissa of the canonical half-plane, L/2 - β*.
  double theta() const { return impl_->L.value / 2 - impl_->beta_star.value; }
  HalfPlaneDomain domain() const { return {theta()}; }

  /// Largest index usable for both Λ and β.
  std::size_t max_index() const { return std::min(impl_->freq.max_index(), impl_->weights.max_index()); }
  std::size_t window() const { return std::min(impl_->opts.horizon, max_index()); }

  double lambda(std::size_t n) const { return impl_->freq.at(n); }
  double log_weight(std::size_t n) const { return impl_->weights.log_at(n, impl_->freq); }
  double weight(std::size_t n) const { return std::exp(log_weight(n)); }

  /// log(β_m / β_n), exact in the exponent for exponential weight families.
  double log_weight_ratio(std::size_t n, std::size_t m) const {
    if (auto slope = impl_->weights.log_slope()) {
      if (*slope == 0) return 0.0;
      return *slope * (impl_->freq.at_or_inf(m) - impl_->freq.at_or_inf(n));
    }
    return impl_->weights.log_ratio(n, m, impl_->freq);
  }

  bool operator==(const DirichletSpace& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    FrequencySequence freq;
    WeightSequence weights;
    SpaceOptions opts;
    Estimate L;
    Estimate beta_star;
  };
  std::shared_ptr<const Impl> impl_;
};

inline void require_same_space(const DirichletSpace& x, const DirichletSpace& y) {
  require(x == y, ErrorCode::MismatchedSpace, "elements belong to different (Λ, β) pairs");
}

/// Finitely supported f = Σ a_n e^{-λ_n z}; coefficients are keyed by index.
class DirichletElement {
 public:
  explicit DirichletElement(DirichletSpace space) : space_(std::move(space)) {}

  /// e^{-λ_n z}
  static DirichletElement monomial(const DirichletSpace& space, std::size_t n, Complex c = 1.0) {
    DirichletElement f(space);
    f.set(n, c);
    return f;
  }

  /// Orthonormal basis vector q_n = β_n^{-1} e^{-λ_n z}.
  static DirichletElement basis(const DirichletSpace& space, std::size_t n) {
    return monomial(space, n, std::exp(-space.log_weight(n)));
  }

  const DirichletSpace& space() const { return space_; }
  const std::map<std::size_t, Complex>& coefficients() const { return coeffs_; }

  void set(std::size_t n, Complex c) {
    require(n >= 1, ErrorCode::InvalidArgument, "indices start at 1");
    if (c == Complex(0)) {
      coeffs_.erase(n);
    } else {
      coeffs_[n] = c;
    }
  }

  void add(std::size_t n, Complex c) { set(n, coefficient(n) + c); }

  Complex coefficient(std::size_t n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex(0) : it->second;
  }

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t max_support() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  DirichletElement& operator+=(const DirichletElement& g) {
    require_same_space(space_, g.space_);
    for (const auto& [n, c] : g.coeffs_) add(n, c);
    return *this;
  }

  DirichletElement& operator-=(const DirichletElement& g) {
    require_same_space(space_, g.space_);
    for (const auto& [n, c] : g.coeffs_) add(n, -c);
    return *this;
  }

  DirichletElement& operator*=(Complex s) {
    if (s == Complex(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [n, c] : coeffs_) c *= s;
    return *this;
  }

  friend DirichletElement operator+(DirichletElement f, const DirichletElement& g) { return f += g; }
  friend DirichletElement operator-(DirichletElement f, const DirichletElement& g) { return f -= g; }
  friend DirichletElement operator*(Complex s, DirichletElement f) { return f *= s; }

 private:
  DirichletSpace space_;
  std::map<std::size_t, Complex> coeffs_;
};

inline Complex inner_product(const DirichletElement& f, const DirichletElement& g) {
  require_same_space(f.space(), g.space());
  Complex sum = 0;
  const auto& gc = g.coefficients();
  for (const auto& [n, a] : f.coefficients()) {
    auto it = gc.find(n);
    if (it == gc.end()) continue;
    sum += a * std::conj(it->second) * std::exp(2 * f.space().log_weight(n));
  }
  return sum;
}

inline double norm(const DirichletElement& f) {
  double sum = 0;
  for (const auto& [n, a] : f.coefficients()) sum += std::norm(a) * std::exp(2 * f.space().log_weight(n));
  return std::sqrt(sum);
}

struct Evaluation {
  Complex value;
  double error_bound = 0;  // floating-point summation bound
};

inline Evaluation evaluate(const DirichletElement& f, Complex z, const HalfPlaneDomain& domain) {
  require(domain.contains(z), ErrorCode::OutsideDomain, "Re(z) must exceed the abscissa " + std::to_string(domain.theta));
  Evaluation out;
  double magnitude = 0;
  for (const auto& [n, a] : f.coefficients()) {
    const Complex term = a * std::exp(-f.space().lambda(n) * z);
    out.value += term;
    magnitude += std::abs(term);
  }
  out.error_bound = static_cast<double>(f.coefficients().size()) * std::numeric_limits<double>::epsilon() * magnitude;
  return out;
}

inline Evaluation evaluate(const DirichletElement& f, Complex z) { return evaluate(f, z, f.space().domain()); }

// ---------------------------------------------------------------------------
// Reproducing kernel

/// Bound log β_n >= slope λ_n + offset, used to majorize kernel tails.
struct LogWeightBound {
  double slope = 0;
  double offset = 0;
};

/// Lower bound on log β_n valid for n > from. For weight families without an
/// exact exponential form the slope is β* - slack and the offset is the
/// smallest gap observed over the space window.
inline LogWeightBound log_weight_lower_bound(const DirichletSpace& space, double slack, std::size_t from) {
  const auto& w = space.weights();
  if (auto slope = w.log_slope()) return {*slope, w.log_intercept()};
  const double bs = space.beta_star().value;
  require(std::isfinite(bs), ErrorCode::TailNotCertifiable, "β* is not finite");
  LogWeightBound b{bs - slack, std::numeric_limits<double>::infinity()};
  const std::size_t h = space.window();
  for (std::size_t n = std::max<std::size_t>(from, 1); n <= h; ++n) {
    const double lambda = space.lambda(n);
    b.offset = std::min(b.offset, space.log_weight(n) - b.slope * lambda);
  }
  require(std::isfinite(b.offset), ErrorCode::TailNotCertifiable, "no window left to calibrate the weight bound");
  return b;
}

/// Certified bound on Σ_{n>N} β_n^{-2} e^{-λ_n s}.
inline std::optional<double> kernel_tail_bound(const DirichletSpace& space, double s, std::size_t N) {
  const double needed = space.L().value - 2 * space.beta_star().value;
  if (!(s > needed)) return std::nullopt;
  const double slack = std::isfinite(needed) ? (s - needed) / 4 : 1.0;
  const LogWeightBound wb = log_weight_lower_bound(space, slack, N + 1);
  const auto t = space.frequencies().exp_tail_bound(s + 2 * wb.slope, N);
  if (!t) return std::nullopt;
  return std::exp(-2 * wb.offset) * *t;
}

struct KernelValue {
  Complex value;
  double tail_bound = 0;
  std::size_t terms = 0;
};

namespace detail {

// Smallest N with a certified tail below tol; N is found by doubling then bisection.
inline std::size_t kernel_terms_for(const DirichletSpace& space, double s, double tol) {
  const std::size_t cap = std::min(space.options().kernel_term_cap, space.max_index() - 1);
  auto ok = [&](std::size_t n) {
    auto t = kernel_tail_bound(space, s, n);
    return t && *t <= tol;
  };
  std::size_t hi = 1;
  while (!ok(hi)) {
    if (hi >= cap) fail(ErrorCode::TailNotCertifiable, "kernel tail majorant not below tolerance within the term cap");
    hi = std::min(cap, hi * 2);
  }
  std::size_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// K(z, w) = Σ β_n^{-2} e^{-λ_n (z + conj(w))}, remainder certified below tol.
inline KernelValue kernel_eval(const DirichletSpace& space, Complex w, Complex z, const HalfPlaneDomain& domain,
                               double tol = 1e-12) {
  require(domain.contains(z) && domain.contains(w), ErrorCode::OutsideDomain,
          "kernel points must lie in Re > " + std::to_string(domain.theta));
  const Complex zeta = z + std::conj(w);
  KernelValue out;
  out.terms = detail::kernel_terms_for(space, zeta.real(), tol);
  for (std::size_t n = 1; n <= out.terms; ++n)
    out.value += std::exp(-2 * space.log_weight(n) - space.lambda(n) * zeta);
  out.tail_bound = *kernel_tail_bound(space, zeta.real(), out.terms);
  return out;
}

inline KernelValue kernel_eval(const DirichletSpace& space, Complex w, Complex z, double tol = 1e-12) {
  return kernel_eval(space, w, z, space.domain(), tol);
}

inline double kernel_norm(const DirichletSpace& space, Complex w, const HalfPlaneDomain& domain, double tol = 1e-12) {
  return std::sqrt(kernel_eval(space, w, w, domain, tol).value.real());
}

inline double kernel_norm(const DirichletSpace& space, Complex w, double tol = 1e-12) {
  return kernel_norm(space, w, space.domain(), tol);
}

/// k_w^{(N)}: the first N coefficients of the kernel at w, with ‖k_w - k_w^{(N)}‖².
struct TruncatedKernel {
  DirichletElement element;
  double tail_norm_sq;
};

inline TruncatedKernel kernel_truncated(const DirichletSpace& space, Complex w, std::size_t N) {
  require(space.domain().contains(w), ErrorCode::OutsideDomain, "kernel point outside the domain");
  DirichletElement k(space);
  for (std::size_t n = 1; n <= N; ++n)
    k.set(n, std::exp(-2 * space.log_weight(n) - space.lambda(n) * std::conj(w)));
  auto tail = kernel_tail_bound(space, 2 * w.real(), N);
  require(tail.has_value(), ErrorCode::TailNotCertifiable, "kernel tail cannot be majorized");
  return {std::move(k), *tail};
}

/// Kernel element truncated at the first N whose certified tail is below tol.
inline TruncatedKernel kernel_truncated(const DirichletSpace& space, Complex w, double tol) {
  require(space.domain().contains(w), ErrorCode::OutsideDomain, "kernel point outside the domain");
  return kernel_truncated(space, w, detail::kernel_terms_for(space, 2 * w.real(), tol));
}

// ---------------------------------------------------------------------------
// Abscissae

struct AbscissaReport {
  double D = -std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();  // σ_c, σ_u, σ_a lie in [lower, upper]
  double upper = -std::numeric_limits<double>::infinity();
  double window_max = -std::numeric_limits<double>::infinity();  // max of log|a_n|/λ_n over the support
};

inline AbscissaReport coefficient_abscissa(const DirichletElement& f) {
  require(!f.is_zero(), ErrorCode::ZeroElement, "abscissa of the zero element is undefined");
  AbscissaReport r;
  for (const auto& [n, a] : f.coefficients()) {
    const double lambda = f.space().lambda(n);
    if (lambda > 0) r.window_max = std::max(r.window_max, std::log(std::abs(a)) / lambda);
  }
  r.upper = r.D + f.space().L().value;
  r.lower = r.D;
  return r;
}

}  // namespace dirop
