#pragma once

// Frequency sequences Λ = (λ_n) and weight sequences β = (β_n).
//
// Indices are 1-based throughout, matching the usual notation for Dirichlet
// series. Families with integer or rational parameters carry an exact
// rational representation so that ratio-set questions (is a·λ_n some λ_m?)
// are decided without floating-point equality tests.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirop/errors.hpp"
#include "dirop/estimate.hpp"

namespace dirop {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kDefaultRatioTol = 1e-12;
inline constexpr std::size_t kMaxIntegerIndex = std::size_t{1} << 53;

namespace detail {

inline Rational rational_pow(const Rational& base, std::size_t exponent) {
  const auto e = static_cast<unsigned>(exponent);
  return Rational(boost::multiprecision::pow(boost::multiprecision::numerator(base), e),
                  boost::multiprecision::pow(boost::multiprecision::denominator(base), e));
}

inline bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace detail

class FrequencySequence {
 public:
  enum class Family { Explicit, Arithmetic, Logarithmic, Geometric, Factorial, PowerOfBase };

  static FrequencySequence explicit_list(std::vector<double> values) {
    FrequencySequence s(Family::Explicit);
    validate_list(values);
    s.values_ = std::move(values);
    return s;
  }

  static FrequencySequence explicit_exact(std::vector<Rational> values) {
    FrequencySequence s(Family::Explicit);
    std::vector<double> approx;
    approx.reserve(values.size());
    for (const auto& v : values) approx.push_back(static_cast<double>(v));
    validate_list(approx);
    for (std::size_t i = 1; i < values.size(); ++i)
      require(values[i] > values[i - 1], ErrorCode::InvalidArgument, "frequencies must be strictly increasing");
    s.values_ = std::move(approx);
    s.exact_values_ = std::move(values);
    s.exact_ = true;
    return s;
  }

  static FrequencySequence arithmetic() {
    FrequencySequence s(Family::Arithmetic);
    s.exact_ = true;
    return s;
  }

  static FrequencySequence logarithmic() { return FrequencySequence(Family::Logarithmic); }

  static FrequencySequence factorial() {
    FrequencySequence s(Family::Factorial);
    s.exact_ = true;
    return s;
  }

  /// λ_n = first · ratio^(n-1).
  static FrequencySequence geometric(const Rational& first, const Rational& ratio) {
    FrequencySequence s = geometric(static_cast<double>(first), static_cast<double>(ratio));
    s.first_q_ = first;
    s.ratio_q_ = ratio;
    s.exact_ = true;
    return s;
  }

  static FrequencySequence geometric(double first, double ratio) {
    require(first > 0 && std::isfinite(first), ErrorCode::InvalidArgument, "geometric first term must be positive");
    require(ratio > 1 && std::isfinite(ratio), ErrorCode::InvalidArgument, "geometric ratio must exceed 1");
    FrequencySequence s(Family::Geometric);
    s.first_ = first;
    s.ratio_ = ratio;
    return s;
  }

  /// λ_n = scale · base^n.
  static FrequencySequence power_of_base(const Rational& scale, const Rational& base) {
    FrequencySequence s = power_of_base(static_cast<double>(scale), static_cast<double>(base));
    s.first_q_ = scale;
    s.ratio_q_ = base;
    s.exact_ = true;
    return s;
  }

  static FrequencySequence power_of_base(double scale, double base) {
    require(scale > 0 && std::isfinite(scale), ErrorCode::InvalidArgument, "power-of-base scale must be positive");
    require(base > 1 && std::isfinite(base), ErrorCode::InvalidArgument, "power-of-base base must exceed 1");
    FrequencySequence s(Family::PowerOfBase);
    s.first_ = scale;
    s.ratio_ = base;
    return s;
  }

  /// Same sequence with λ = 0 prepended, e.g. (0, 1, 2, 4, 8, ...).
  FrequencySequence with_leading_zero() const {
    require(!leading_zero_, ErrorCode::InvalidArgument, "sequence already starts with a zero frequency");
    require(base_at(1) > 0, ErrorCode::InvalidArgument, "leading zero needs a positive first frequency");
    FrequencySequence s = *this;
    s.leading_zero_ = true;
    return s;
  }

  Family family() const { return family_; }
  bool exact() const { return exact_; }
  bool leading_zero() const { return leading_zero_; }
  double first_parameter() const { return first_; }
  double ratio_parameter() const { return ratio_; }
  const std::vector<double>& explicit_values() const { return values_; }

  /// Largest index whose frequency is materializable as a finite double.
  std::size_t max_index() const { return base_max_index() + (leading_zero_ ? 1 : 0); }

  double at(std::size_t n) const {
    check_index(n);
    if (leading_zero_) return n == 1 ? 0.0 : base_at(n - 1);
    return base_at(n);
  }

  Rational exact_at(std::size_t n) const {
    require(exact_, ErrorCode::InvalidArgument, "sequence has no exact representation");
    check_index(n);
    if (leading_zero_) return n == 1 ? Rational(0) : exact_base_at(n - 1);
    return exact_base_at(n);
  }

  /// log λ_n, finite for analytic families even where λ_n itself overflows.
  double log_at(std::size_t n) const {
    require(n >= 1, ErrorCode::InvalidArgument, "indices start at 1");
    if (leading_zero_) {
      if (n == 1) return -std::numeric_limits<double>::infinity();
      return log_base_at(n - 1);
    }
    return log_base_at(n);
  }

  /// λ_n, or +inf beyond the materializable window of an analytic family.
  double at_or_inf(std::size_t n) const {
    if (n <= max_index()) return at(n);
    if (family_ == Family::Explicit) fail(ErrorCode::WindowExceeded, "index beyond explicit frequency window");
    return std::numeric_limits<double>::infinity();
  }

  /// Closed-form L = limsup log n / λ_n for generator families.
  std::optional<double> analytic_L() const {
    switch (family_) {
      case Family::Explicit: return std::nullopt;
      case Family::Logarithmic: return 1.0;
      default: return 0.0;
    }
  }

  /// Upper bound on sum_{k>n} exp(-rho λ_k), when one can be certified.
  std::optional<double> exp_tail_bound(double rho, std::size_t n) const {
    if (family_ == Family::Explicit) return std::nullopt;
    if (family_ == Family::Logarithmic) {
      if (!(rho > 1)) return std::nullopt;
      // sum_{j>=j0} j^-rho <= j0^-rho + j0^(1-rho)/(rho-1)
      const double j0 = static_cast<double>(leading_zero_ ? n : n + 1);
      if (j0 < 1) return std::nullopt;
      return std::pow(j0, -rho) + std::pow(j0, 1 - rho) / (rho - 1);
    }
    // Remaining families have non-decreasing gaps from the second term on.
    if (!(rho > 0)) return std::nullopt;
    const double next = at_or_inf(n + 1);
    const double gap = at_or_inf(n + 2) - next;
    if (std::isinf(next)) return 0.0;
    return std::exp(-rho * next) / (-std::expm1(-rho * gap));
  }

  std::string describe() const {
    std::string out;
    switch (family_) {
      case Family::Explicit: out = "explicit(" + std::to_string(values_.size()) + " values)"; break;
      case Family::Arithmetic: out = "arithmetic"; break;
      case Family::Logarithmic: out = "logarithmic"; break;
      case Family::Factorial: out = "factorial"; break;
      case Family::Geometric: out = "geometric(" + fmt(first_) + ", " + fmt(ratio_) + ")"; break;
      case Family::PowerOfBase: out = "power_of_base(" + fmt(first_) + ", " + fmt(ratio_) + ")"; break;
    }
    return leading_zero_ ? "zero+" + out : out;
  }

 private:
  explicit FrequencySequence(Family f) : family_(f) {}

  static std::string fmt(double x) {
    std::string s = std::to_string(x);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  static void validate_list(const std::vector<double>& values) {
    require(!values.empty(), ErrorCode::InvalidArgument, "explicit frequency list is empty");
    require(values.front() >= 0, ErrorCode::InvalidArgument, "frequencies must be non-negative");
    for (std::size_t i = 0; i < values.size(); ++i) {
      require(std::isfinite(values[i]), ErrorCode::InvalidArgument, "frequencies must be finite");
      if (i > 0)
        require(values[i] > values[i - 1], ErrorCode::InvalidArgument,
                "frequencies must be strictly increasing (index " + std::to_string(i + 1) + ")");
    }
  }

  void check_index(std::size_t n) const {
    require(n >= 1, ErrorCode::InvalidArgument, "indices start at 1");
    if (n > max_index())
      fail(ErrorCode::WindowExceeded, "index " + std::to_string(n) + " beyond window of " + describe());
  }

  std::size_t base_max_index() const {
    const double log_max = std::log(std::numeric_limits<double>::max());
    switch (family_) {
      case Family::Explicit: return values_.size();
      case Family::Arithmetic:
      case Family::Logarithmic: return kMaxIntegerIndex;
      case Family::Factorial: return 170;
      case Family::Geometric:
        return 1 + static_cast<std::size_t>(std::floor((log_max - std::log(first_)) / std::log(ratio_))) - 1;
      case Family::PowerOfBase:
        return static_cast<std::size_t>(std::floor((log_max - std::log(first_)) / std::log(ratio_))) - 1;
    }
    return 0;
  }

  double base_at(std::size_t k) const {
    switch (family_) {
      case Family::Explicit: return values_[k - 1];
      case Family::Arithmetic: return static_cast<double>(k);
      case Family::Logarithmic: return std::log(static_cast<double>(k));
      case Family::Geometric: return first_ * std::pow(ratio_, static_cast<double>(k - 1));
      case Family::PowerOfBase: return first_ * std::pow(ratio_, static_cast<double>(k));
      case Family::Factorial: {
        double f = 1;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return f;
      }
    }
    return 0;
  }

  double log_base_at(std::size_t k) const {
    switch (family_) {
      case Family::Explicit:
        require(k <= values_.size(), ErrorCode::WindowExceeded, "index beyond explicit frequency window");
        return std::log(values_[k - 1]);
      case Family::Arithmetic: return std::log(static_cast<double>(k));
      case Family::Logarithmic: return std::log(std::log(static_cast<double>(k)));
      case Family::Geometric: return std::log(first_) + static_cast<double>(k - 1) * std::log(ratio_);
      case Family::PowerOfBase: return std::log(first_) + static_cast<double>(k) * std::log(ratio_);
      case Family::Factorial: return std::lgamma(static_cast<double>(k) + 1.0);
    }
    return 0;
  }

  Rational exact_base_at(std::size_t k) const {
    switch (family_) {
      case Family::Explicit: return exact_values_[k - 1];
      case Family::Arithmetic: return Rational(static_cast<std::uint64_t>(k));
      case Family::Geometric: return first_q_ * detail::rational_pow(ratio_q_, k - 1);
      case Family::PowerOfBase: return first_q_ * detail::rational_pow(ratio_q_, k);
      case Family::Factorial: {
        BigInt f = 1;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
        return Rational(f);
      }
      case Family::Logarithmic: break;
    }
    fail(ErrorCode::InvalidArgument, "sequence has no exact representation");
  }

  Family family_;
  bool exact_ = false;
  bool leading_zero_ = false;
  std::vector<double> values_;
  std::vector<Rational> exact_values_;
  double first_ = 1;
  double ratio_ = 2;
  Rational first_q_{1};
  Rational ratio_q_{2};
};

class WeightSequence {
 public:
  enum class Family { Explicit, Constant, ExpLinear, ExpProductOfPowers, Custom };

  static WeightSequence constant(double value = 1.0) {
    require(value > 0 && std::isfinite(value), ErrorCode::InvalidArgument, "weights must be positive");
    WeightSequence w(Family::Constant);
    w.param_ = value;
    return w;
  }

  /// β_n = exp(c λ_n).
  static WeightSequence exp_linear(double c) {
    require(std::isfinite(c), ErrorCode::InvalidArgument, "exp-linear slope must be finite");
    WeightSequence w(Family::ExpLinear);
    w.param_ = c;
    return w;
  }

  /// β_k = prod_{i<k} exp(base^i).
  static WeightSequence exp_product_of_powers(double base) {
    require(base > 0 && base != 1 && std::isfinite(base), ErrorCode::InvalidArgument,
            "product-of-powers base must be positive and different from 1");
    WeightSequence w(Family::ExpProductOfPowers);
    w.param_ = base;
    return w;
  }

  static WeightSequence explicit_list(std::vector<double> values) {
    require(!values.empty(), ErrorCode::InvalidArgument, "explicit weight list is empty");
    WeightSequence w(Family::Explicit);
    for (double v : values) {
      require(v > 0 && std::isfinite(v), ErrorCode::InvalidArgument, "weights must be positive");
      w.values_.push_back(std::log(v));
    }
    return w;
  }

  /// Per-index rule given as n -> log β_n.
  static WeightSequence custom(std::function<double(std::size_t)> log_weight, std::string name = "custom") {
    WeightSequence w(Family::Custom);
    w.custom_ = std::move(log_weight);
    w.name_ = std::move(name);
    return w;
  }

  Family family() const { return family_; }
  double parameter() const { return param_; }

  std::size_t max_index() const {
    return family_ == Family::Explicit ? values_.size() : std::numeric_limits<std::size_t>::max();
  }

  double log_at(std::size_t n, const FrequencySequence& seq) const {
    require(n >= 1, ErrorCode::InvalidArgument, "indices start at 1");
    switch (family_) {
      case Family::Constant: return std::log(param_);
      case Family::ExpLinear: {
        const double lambda = seq.at_or_inf(n);
        return param_ == 0 ? 0.0 : param_ * lambda;
      }
      case Family::ExpProductOfPowers: {
        // sum_{i=1}^{n-1} base^i = base (base^(n-1) - 1) / (base - 1)
        const double k = static_cast<double>(n - 1);
        return param_ * std::expm1(k * std::log(param_)) / (param_ - 1);
      }
      case Family::Explicit:
        if (n > values_.size()) fail(ErrorCode::WindowExceeded, "index beyond explicit weight window");
        return values_[n - 1];
      case Family::Custom: {
        const double v = custom_(n);
        require(!std::isnan(v) && v != -std::numeric_limits<double>::infinity(), ErrorCode::InvalidArgument,
                "custom weight rule produced a non-positive weight");
        return v;
      }
    }
    return 0;
  }

  double at(std::size_t n, const FrequencySequence& seq) const { return std::exp(log_at(n, seq)); }

  /// log β_m - log β_n, summed without cancellation where the family allows it.
  double log_ratio(std::size_t n, std::size_t m, const FrequencySequence& seq) const {
    if (family_ == Family::ExpProductOfPowers && m != n) {
      // sum_{i=lo}^{hi-1} base^i = base^lo (base^(hi-lo) - 1) / (base - 1)
      const std::size_t lo = std::min(n, m);
      const std::size_t hi = std::max(n, m);
      const double v = std::pow(param_, static_cast<double>(lo)) * std::expm1(static_cast<double>(hi - lo) * std::log(param_)) /
                       (param_ - 1);
      return m > n ? v : -v;
    }
    return log_at(m, seq) - log_at(n, seq);
  }

  /// Slope s such that log β_n = s λ_n + intercept holds for every n.
  std::optional<double> log_slope() const {
    if (family_ == Family::Constant) return 0.0;
    if (family_ == Family::ExpLinear) return param_;
    return std::nullopt;
  }

  double log_intercept() const { return family_ == Family::Constant ? std::log(param_) : 0.0; }

  std::optional<double> analytic_beta_star() const { return log_slope(); }

  std::string describe() const {
    switch (family_) {
      case Family::Constant: return "constant(" + std::to_string(param_) + ")";
      case Family::ExpLinear: return "exp_linear(" + std::to_string(param_) + ")";
      case Family::ExpProductOfPowers: return "exp_product_of_powers(" + std::to_string(param_) + ")";
      case Family::Explicit: return "explicit(" + std::to_string(values_.size()) + " values)";
      case Family::Custom: return name_;
    }
    return "?";
  }

 private:
  explicit WeightSequence(Family f) : family_(f) {}

  Family family_;
  double param_ = 1;
  std::vector<double> values_;  // log weights
  std::function<double(std::size_t)> custom_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Operations

inline double lambda_at(const FrequencySequence& seq, std::size_t n) { return seq.at(n); }

inline Estimate compute_L(const FrequencySequence& seq, std::size_t horizon) {
  require(horizon >= 8, ErrorCode::InvalidArgument, "horizon must be at least 8");
  if (auto l = seq.analytic_L()) return Estimate::exact(*l);
  const std::size_t h = std::min(horizon, seq.max_index());
  std::vector<double> x;
  x.reserve(h);
  for (std::size_t n = 1; n <= h; ++n) {
    const double lambda = seq.at(n);
    if (lambda > 0) x.push_back(std::log(static_cast<double>(n)) / lambda);
  }
  return window::limsup(x);
}

inline Estimate compute_beta_star(const WeightSequence& w, const FrequencySequence& seq, std::size_t horizon) {
  require(horizon >= 8, ErrorCode::InvalidArgument, "horizon must be at least 8");
  if (auto b = w.analytic_beta_star()) return Estimate::exact(*b);
  const std::size_t h = std::min({horizon, seq.max_index(), w.max_index()});
  std::vector<double> x;
  x.reserve(h);
  for (std::size_t n = 1; n <= h; ++n) {
    const double lambda = seq.at(n);
    if (lambda > 0) x.push_back(w.log_at(n, seq) / lambda);
  }
  return window::liminf(x);
}

namespace detail {

inline Rational to_rational(double a) { return Rational(a); }

// Smallest index in [lo, hi] whose frequency is >= target; hi + 1 if none.
template <class Less>
std::size_t lower_bound_index(std::size_t lo, std::size_t hi, Less below_target) {
  std::size_t first = lo;
  std::size_t count = hi >= lo ? hi - lo + 1 : 0;
  while (count > 0) {
    const std::size_t step = count / 2;
    const std::size_t mid = first + step;
    if (below_target(mid)) {
      first = mid + 1;
      count -= step + 1;
    } else {
      count = step;
    }
  }
  return first;
}

inline std::optional<std::size_t> search_frequency(const FrequencySequence& seq, double target,
                                                   const std::optional<Rational>& exact_target, std::size_t lo,
                                                   std::size_t hi, double tol) {
  if (lo > hi) return std::nullopt;
  if (seq.exact() && exact_target) {
    const std::size_t m =
        lower_bound_index(lo, hi, [&](std::size_t i) { return seq.exact_at(i) < *exact_target; });
    if (m <= hi && seq.exact_at(m) == *exact_target) return m;
    return std::nullopt;
  }
  const std::size_t m =
      lower_bound_index(lo, hi, [&](std::size_t i) { return seq.at(i) < target - tol * std::abs(target); });
  if (m <= hi && std::abs(seq.at(m) - target) <= tol * std::max(std::abs(seq.at(m)), 1e-300)) return m;
  return std::nullopt;
}

// Index ℓ >= 0 with ratio^ℓ = a, when it exists.
inline std::optional<std::size_t> integer_log(const FrequencySequence& seq, double a, double tol) {
  if (seq.exact()) {
    const Rational target = to_rational(a);
    const Rational ratio = Rational(seq.exact_at(seq.leading_zero() ? 3 : 2)) / seq.exact_at(seq.leading_zero() ? 2 : 1);
    Rational p = 1;
    std::size_t ell = 0;
    while (p < target) {
      p *= ratio;
      ++ell;
    }
    if (p == target) return ell;
    return std::nullopt;
  }
  const double ell = std::log(a) / std::log(seq.ratio_parameter());
  const double rounded = std::round(ell);
  if (std::abs(ell - rounded) <= tol * std::max(1.0, ell)) return static_cast<std::size_t>(rounded);
  return std::nullopt;
}

}  // namespace detail

/// The unique m >= n with a·λ_n = λ_m, if any.
inline std::optional<std::size_t> ratio_index(const FrequencySequence& seq, double a, std::size_t n,
                                              double tol = kDefaultRatioTol) {
  require(a >= 1 && std::isfinite(a), ErrorCode::InvalidArgument, "ratio must satisfy a >= 1");
  require(n >= 1, ErrorCode::InvalidArgument, "indices start at 1");
  if (a == 1) return n;
  using F = FrequencySequence::Family;
  const std::size_t offset = seq.leading_zero() ? 1 : 0;
  if (seq.leading_zero() && n == 1) return 1;  // a·0 = 0
  switch (seq.family()) {
    case F::Arithmetic: {
      const Rational target = detail::to_rational(a) * Rational(static_cast<std::uint64_t>(n - offset));
      if (boost::multiprecision::denominator(target) != 1) return std::nullopt;
      const auto m = static_cast<std::size_t>(boost::multiprecision::numerator(target)) + offset;
      if (m > seq.max_index()) fail(ErrorCode::SearchWindowExceeded, "a·λ_n beyond representable indices");
      return m;
    }
    case F::Geometric:
    case F::PowerOfBase: {
      if (auto ell = detail::integer_log(seq, a, tol)) return n + *ell;
      return std::nullopt;
    }
    default: break;
  }
  if (n > seq.max_index()) fail(ErrorCode::WindowExceeded, "index beyond frequency window");
  const double target = a * seq.at(n);
  const std::size_t hi = seq.max_index();
  std::optional<Rational> exact_target;
  if (seq.exact()) {
    exact_target = detail::to_rational(a) * seq.exact_at(n);
    if (*exact_target > seq.exact_at(hi))
      fail(ErrorCode::SearchWindowExceeded, "a·λ_" + std::to_string(n) + " exceeds the largest materializable frequency");
  } else if (target > seq.at(hi) * (1 + tol)) {
    fail(ErrorCode::SearchWindowExceeded, "a·λ_" + std::to_string(n) + " exceeds the largest materializable frequency");
  }
  return detail::search_frequency(seq, target, exact_target, n, hi, tol);
}

/// The index n < k with a·λ_n = λ_k, if any (inverse of ratio_index).
inline std::optional<std::size_t> ratio_preimage(const FrequencySequence& seq, double a, std::size_t k,
                                                 double tol = kDefaultRatioTol) {
  require(a >= 1, ErrorCode::InvalidArgument, "ratio must satisfy a >= 1");
  if (a == 1) return k;
  if (seq.leading_zero() && k == 1) return 1;
  using F = FrequencySequence::Family;
  if (seq.family() == F::Geometric || seq.family() == F::PowerOfBase) {
    const std::size_t first = seq.leading_zero() ? 2 : 1;
    if (auto ell = detail::integer_log(seq, a, tol); ell && k >= first + *ell) return k - *ell;
    return std::nullopt;
  }
  const double target = seq.at(k) / a;
  std::optional<Rational> exact_target;
  if (seq.exact()) exact_target = seq.exact_at(k) / detail::to_rational(a);
  return detail::search_frequency(seq, target, exact_target, 1, k, tol);
}

struct RatioSetCertificate {
  bool member = true;
  std::optional<std::size_t> witness;  // first n with no matching m_n
  std::size_t horizon = 0;             // certificate covers n <= horizon only
};

inline RatioSetCertificate is_in_ratio_set(const FrequencySequence& seq, double a, std::size_t horizon,
                                           double tol = kDefaultRatioTol) {
  require(a >= 1, ErrorCode::InvalidArgument, "ratio must satisfy a >= 1");
  RatioSetCertificate cert;
  cert.horizon = horizon;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (!ratio_index(seq, a, n, tol)) {
      cert.member = false;
      cert.witness = n;
      break;
    }
  }
  return cert;
}

struct InitialPoint {
  std::size_t index;
  bool zero;
  bool operator==(const InitialPoint&) const = default;
};

/// Indices k <= horizon not of the form a^s λ_n = λ_k with n < k, s >= 1.
inline std::vector<InitialPoint> initial_points(const FrequencySequence& seq, double a, std::size_t horizon,
                                                double tol = kDefaultRatioTol) {
  require(a > 1, ErrorCode::InvalidArgument, "initial points need a > 1");
  std::vector<InitialPoint> out;
  for (std::size_t k = 1; k <= horizon; ++k) {
    const double lambda = seq.at(k);
    if (lambda == 0) {
      out.push_back({k, true});
      continue;
    }
    // With a in the ratio set, λ_k = a^s λ_n for some s >= 1 iff λ_k / a is a frequency.
    const auto pre = ratio_preimage(seq, a, k, tol);
    if (!pre || *pre >= k) out.push_back({k, false});
  }
  return out;
}

enum class Summability { Converges, Diverges, Undetermined };

inline constexpr std::string_view to_string(Summability s) {
  switch (s) {
    case Summability::Converges: return "converges";
    case Summability::Diverges: return "diverges";
    case Summability::Undetermined: return "undetermined";
  }
  return "?";
}

struct SummabilityReport {
  Summability decision = Summability::Undetermined;
  double partial_sum = 0;
  Estimate L;
};

/// Classifies sum_n exp(-r λ_n) against the threshold L.
inline SummabilityReport summability_threshold(const FrequencySequence& seq, double r, std::size_t horizon) {
  require(horizon >= 1, ErrorCode::InvalidArgument, "horizon must be positive");
  SummabilityReport rep;
  const std::size_t h = std::min(horizon, seq.max_index());
  for (std::size_t n = 1; n <= h; ++n) rep.partial_sum += std::exp(-r * seq.at(n));
  rep.L = compute_L(seq, std::max<std::size_t>(h, 8));
  if (r <= 0)
    rep.decision = Summability::Diverges;  // terms do not vanish
  else if (r > rep.L.value)
    rep.decision = Summability::Converges;
  else if (r < rep.L.value)
    rep.decision = Summability::Diverges;
  else
    rep.decision = Summability::Undetermined;
  return rep;
}

}  // namespace dirop
