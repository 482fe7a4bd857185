#pragma once

// Conjugations J_c f = Σ conj(a_n) e^{-icλ_n} e^{-λ_n z} and complex symmetry
// of affine composition operators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dirop/errors.hpp"
#include "dirop/operator.hpp"
#include "dirop/oracle.hpp"
#include "dirop/space.hpp"

namespace dirop {

class Conjugation {
 public:
  Conjugation(DirichletSpace space, double c) : space_(std::move(space)), c_(c) {
    require(std::isfinite(c), ErrorCode::InvalidArgument, "conjugation shift must be finite");
  }

  const DirichletSpace& space() const { return space_; }
  double c() const { return c_; }

  DirichletElement apply(const DirichletElement& f) const {
    require_same_space(space_, f.space());
    DirichletElement out(space_);
    for (const auto& [n, a] : f.coefficients()) out.set(n, std::conj(a) * std::polar(1.0, -c_ * space_.lambda(n)));
    return out;
  }

 private:
  DirichletSpace space_;
  double c_;
};

inline DirichletElement conjugation_apply(const Conjugation& J, const DirichletElement& f) { return J.apply(f); }

/// Random element with up to max_support terms, scaled so that ‖f‖ is of order one.
inline DirichletElement random_element(const DirichletSpace& space, std::mt19937_64& rng, std::size_t max_support = 16) {
  const std::size_t window = std::min(space.window(), std::max<std::size_t>(max_support * 4, 1));
  std::uniform_int_distribution<std::size_t> index(1, window);
  std::uniform_int_distribution<std::size_t> count(1, max_support);
  std::normal_distribution<double> gauss;
  DirichletElement f(space);
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t n = index(rng);
    f.set(n, Complex(gauss(rng), gauss(rng)) * std::exp(-space.log_weight(n)));
  }
  return f;
}

struct ConjugationDefects {
  double isometry = 0;
  double involution = 0;
  double antilinearity = 0;
  std::size_t samples = 0;
};

inline ConjugationDefects verify_conjugation(const Conjugation& J, std::size_t sample_count, std::uint64_t seed) {
  require(sample_count >= 1, ErrorCode::InvalidArgument, "need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ConjugationDefects d;
  d.samples = sample_count;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const auto f = random_element(J.space(), rng);
    const auto g = random_element(J.space(), rng);
    const Complex alpha(gauss(rng), gauss(rng));
    const double nf = norm(f);
    const double scale = std::max(1.0, nf);
    d.isometry = std::max(d.isometry, std::abs(norm(J.apply(f)) - nf) / scale);
    d.involution = std::max(d.involution, norm(J.apply(J.apply(f)) - f) / scale);
    const auto lhs = J.apply(alpha * f + g);
    const auto rhs = std::conj(alpha) * J.apply(f) + J.apply(g);
    d.antilinearity = std::max(d.antilinearity, norm(lhs - rhs) / std::max({1.0, std::abs(alpha) * nf, norm(g)}));
    for (Complex probe : {Complex(2, 0), Complex(0, 1)}) {
      const auto diff = J.apply(probe * f) - std::conj(probe) * J.apply(f);
      d.antilinearity = std::max(d.antilinearity, norm(diff) / scale);
    }
  }
  return d;
}

enum class SymmetryVerdict { ComplexSymmetric, NeverComplexSymmetric };

inline constexpr std::string_view to_string(SymmetryVerdict v) {
  return v == SymmetryVerdict::ComplexSymmetric ? "complex_symmetric" : "never_complex_symmetric";
}

struct SymmetryDefect {
  double c;
  double defect;  // max_n ‖(C J - J C*) q_n‖ over n <= N
};

struct SymmetryReport {
  SymmetryVerdict verdict = SymmetryVerdict::ComplexSymmetric;
  std::string reason;
  std::vector<SymmetryDefect> defects;
  // Kernel witness for a > 1: zero rows of the section (ker C*) against zero
  // columns that are not truncation losses (ker C).
  std::optional<std::size_t> kernel_dim_adjoint;
  std::optional<std::size_t> kernel_dim_operator;
  std::optional<std::size_t> witness_index;  // first index outside the image of n -> m_n
};

/// max_{n <= N} ‖(C J - J C*) q_n‖
inline double symmetry_defect(const AffineSymbol& sym, const Conjugation& J, std::size_t N) {
  double worst = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    const auto q = DirichletElement::basis(sym.space(), n);
    const auto lhs = apply(sym, J.apply(q));
    const auto rhs = J.apply(apply_adjoint(sym, q));
    worst = std::max(worst, norm(lhs - rhs));
  }
  return worst;
}

inline SymmetryReport complex_symmetry_verdict(const AffineSymbol& sym, std::size_t N, const std::vector<double>& cs = {0.0}) {
  require(N >= 1, ErrorCode::InvalidArgument, "truncation dimension must be positive");
  require_bounded(sym);
  SymmetryReport rep;
  if (sym.a() == 0) {
    rep.verdict = SymmetryVerdict::ComplexSymmetric;
    rep.reason = "rank one operator";
    return rep;
  }
  if (sym.a() == 1) {
    rep.verdict = SymmetryVerdict::ComplexSymmetric;
    rep.reason = "J_c-symmetric for every real c";
    for (double c : cs) rep.defects.push_back({c, symmetry_defect(sym, Conjugation(sym.space(), c), N)});
    return rep;
  }
  rep.verdict = SymmetryVerdict::NeverComplexSymmetric;
  rep.reason = "ker C* is non-trivial while ker C is trivial";
  const auto t = truncate(sym, N);
  const auto k = kernel_dimensions(t, 0.0);  // structural zeros are exact
  rep.kernel_dim_adjoint = k.zero_rows;
  rep.kernel_dim_operator = k.zero_columns_kept;
  for (std::size_t i = 0; i < N && !rep.witness_index; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < N && zero; ++j) zero = t.M(i, j) == Complex(0);
    if (zero) rep.witness_index = i + 1;
  }
  return rep;
}

}  // namespace dirop
