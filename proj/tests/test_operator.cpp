#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "dirop/operator.hpp"

using namespace dirop;

namespace {
const double e = std::numbers::e;
const Complex I(0, 1);

DirichletSpace arithmetic() { return DirichletSpace(FrequencySequence::arithmetic(), WeightSequence::constant()); }
DirichletSpace with_zero() {
  return DirichletSpace(FrequencySequence::arithmetic().with_leading_zero(), WeightSequence::constant());
}
}  // namespace

TEST(SelfMap, Conditions) {
  EXPECT_TRUE(is_self_map(1, 0.0, 0));
  EXPECT_FALSE(is_self_map(0, 0.0, 0));
  EXPECT_TRUE(is_self_map(2, -1.0, 1));
  EXPECT_FALSE(is_self_map(2, -1.1, 1));
}

TEST(Symbol, RejectsFractionalSlope) {
  try {
    (void)AffineSymbol::make(arithmetic(), 0.5, 1.0);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InvalidSymbol);
    EXPECT_NE(std::string(err.what()).find("a must be 0 or a >= 1"), std::string::npos);
  }
}

TEST(RSequence, Values) {
  const auto s = arithmetic();
  EXPECT_NEAR(r_value(AffineSymbol::make(s, 2, 1.0), 3), std::exp(-3.0), 1e-16);
  for (std::size_t n = 1; n <= 20; ++n) {
    EXPECT_EQ(r_value(AffineSymbol::make(s, 1, 0.0), n), 1);
    EXPECT_EQ(r_value(AffineSymbol::make(s, 1, I), n), 1);
  }
}

TEST(Boundedness, Examples) {
  const auto s = arithmetic();
  EXPECT_FALSE(check_bounded(AffineSymbol::make(s, 0, 1.0)).bounded);
  const auto diag = check_bounded(AffineSymbol::make(s, 1, 0.5));
  ASSERT_TRUE(diag.bounded);
  EXPECT_EQ(diag.operator_norm->value, std::exp(-0.5));
  const auto dil = check_bounded(AffineSymbol::make(s, 2, 1.0));
  ASSERT_TRUE(dil.bounded);
  EXPECT_NEAR(dil.operator_norm->value, std::exp(-1.0), 1e-16);
  EXPECT_FALSE(check_bounded(AffineSymbol::make(s, 1, -0.1)).bounded);
}

TEST(Boundedness, NotInRatioSet) {
  const DirichletSpace s(FrequencySequence::factorial(), WeightSequence::constant(), {.horizon = 16});
  const auto rep = check_bounded(AffineSymbol::make(s, 2, 1.0));
  EXPECT_FALSE(rep.bounded);
  EXPECT_THROW(require_bounded(AffineSymbol::make(s, 2, 1.0)), Error);
}

TEST(Boundedness, ConstantSymbolNeedsZeroFrequency) {
  const auto rep = check_bounded(AffineSymbol::make(with_zero(), 0, 1.0));
  ASSERT_TRUE(rep.bounded);
  // ‖C_b‖ = β_1 ‖k_b‖ with k_b(b) = Σ_{n>=0} e^{-2n}.
  EXPECT_NEAR(rep.operator_norm->value, std::sqrt(1 / (1 - std::exp(-2.0))), 1e-10);
}

TEST(Apply, Examples) {
  const auto s = arithmetic();
  auto f = DirichletElement::monomial(s, 1, 2.0) + DirichletElement::monomial(s, 4, I);
  const auto id = apply(AffineSymbol::make(s, 1, 0.0), f);
  EXPECT_EQ(id.coefficients(), f.coefficients());
  const auto shifted = apply(AffineSymbol::make(s, 2, 0.0), DirichletElement::monomial(s, 1));
  EXPECT_EQ(shifted.coefficient(2), Complex(1));
  EXPECT_EQ(shifted.coefficient(1), Complex(0));
}

TEST(Apply, ConstantSymbolEvaluates) {
  const DirichletSpace s(FrequencySequence::explicit_list({0, 1}), WeightSequence::constant(), {.horizon = 8});
  const auto f = DirichletElement::monomial(s, 1) + DirichletElement::monomial(s, 2);
  const auto g = apply(AffineSymbol::make(s, 0, 1.0), f);
  EXPECT_NEAR(std::abs(g.coefficient(1) - (1 + std::exp(-1.0))), 0, 1e-15);
  EXPECT_EQ(g.max_support(), 1u);
}

TEST(Adjoint, Dilation) {
  const auto s = arithmetic();
  const auto sym = AffineSymbol::make(s, 2, 0.0);
  EXPECT_TRUE(apply_adjoint(sym, DirichletElement::monomial(s, 1)).is_zero());
  const auto a = apply_adjoint(sym, DirichletElement::monomial(s, 2));
  EXPECT_EQ(a.coefficient(1), Complex(1));
}

TEST(Adjoint, TranslationConjugatesB) {
  const auto s = arithmetic();
  const Complex b(0, 0.7);
  auto f = DirichletElement::monomial(s, 1, 1.0) + DirichletElement::monomial(s, 3, Complex(0.5, -2));
  const auto lhs = apply_adjoint(AffineSymbol::make(s, 1, b), f);
  const auto rhs = apply(AffineSymbol::make(s, 1, std::conj(b)), f);
  for (std::size_t n : {1u, 3u}) EXPECT_NEAR(std::abs(lhs.coefficient(n) - rhs.coefficient(n)), 0, 1e-15);
}

TEST(Adjoint, InnerProductIdentity) {
  const DirichletSpace s(FrequencySequence::arithmetic(), WeightSequence::exp_linear(0.2));
  const auto sym = AffineSymbol::make(s, 3, Complex(0.4, 1.1));
  auto f = DirichletElement::monomial(s, 1, Complex(1, 2)) + DirichletElement::monomial(s, 2, Complex(-1, 0.5));
  auto g = DirichletElement::monomial(s, 3, Complex(0.3, 0)) + DirichletElement::monomial(s, 6, Complex(0, 1));
  const Complex lhs = inner_product(apply(sym, f), g);
  const Complex rhs = inner_product(f, apply_adjoint(sym, g));
  EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-15);
}

TEST(EssentialNorm, Examples) {
  const auto s = arithmetic();
  EXPECT_EQ(essential_norm(AffineSymbol::make(s, 1, I)).value, 1);
  EXPECT_EQ(essential_norm(AffineSymbol::make(s, 1, 0.5)).value, 0);
  EXPECT_TRUE(is_compact(AffineSymbol::make(with_zero(), 0, 1.0)));
  EXPECT_FALSE(is_compact(AffineSymbol::make(s, 1, I)));
}

TEST(HilbertSchmidt, Examples) {
  const auto s = arithmetic();
  const auto hs = hilbert_schmidt(AffineSymbol::make(s, 2, 1.0));
  EXPECT_EQ(hs.finite, Summability::Converges);
  EXPECT_NEAR(hs.value, std::sqrt(1 / (e * e - 1)), 1e-15);
  EXPECT_EQ(hilbert_schmidt(AffineSymbol::make(s, 1, I)).finite, Summability::Diverges);
  EXPECT_EQ(hilbert_schmidt(AffineSymbol::make(with_zero(), 0, 1.0)).finite, Summability::Converges);
}

TEST(Schatten, Translations) {
  const auto s = arithmetic();
  EXPECT_EQ(schatten_membership(AffineSymbol::make(s, 1, 1.0), 2).member, Summability::Converges);
  EXPECT_EQ(schatten_membership(AffineSymbol::make(s, 1, I), 1).member, Summability::Diverges);
  EXPECT_EQ(schatten_membership(AffineSymbol::make(with_zero(), 0, 1.0), 0.5).member, Summability::Converges);
}

TEST(Schatten, LogarithmicThreshold) {
  // Classical Dirichlet series: C_{z+b} is in S_p iff p Re b > 1.
  const DirichletSpace s(FrequencySequence::logarithmic(), WeightSequence::constant());
  EXPECT_EQ(schatten_membership(AffineSymbol::make(s, 1, 1.0), 2).member, Summability::Converges);
  EXPECT_EQ(schatten_membership(AffineSymbol::make(s, 1, 0.25), 2).member, Summability::Diverges);
}

TEST(Schatten, ProductWeightsBoundary) {
  const DirichletSpace s(FrequencySequence::geometric(2.0, 2.0), WeightSequence::exp_product_of_powers(2), {.horizon = 64});
  for (double p : {1.0, 2.0}) {
    const auto at_one = schatten_membership(AffineSymbol::make(s, 2, 1.0), p);
    EXPECT_EQ(at_one.member, Summability::Diverges);
    EXPECT_NEAR(at_one.sigma_c.value, 1.0, 1e-9);
    EXPECT_EQ(schatten_membership(AffineSymbol::make(s, 2, 1.1), p).member, Summability::Converges);
  }
}

TEST(SingularValues, ClosedForm) {
  const auto s = arithmetic();
  const auto sv = singular_values_closed_form(AffineSymbol::make(s, 2, 1.0), 3);
  ASSERT_EQ(sv.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(sv[k], std::exp(-(k + 1.0)), 1e-16);
  for (double v : singular_values_closed_form(AffineSymbol::make(s, 1, 0.0), 5)) EXPECT_EQ(v, 1);
}

TEST(ClosedRange, Examples) {
  const auto s = arithmetic();
  EXPECT_TRUE(closed_range(AffineSymbol::make(s, 1, I)).closed);
  EXPECT_FALSE(closed_range(AffineSymbol::make(s, 2, 1.0)).closed);
  EXPECT_TRUE(closed_range(AffineSymbol::make(with_zero(), 0, 1.0)).closed);
}

TEST(CompactDifference, Examples) {
  const auto s = arithmetic();
  const double pi = std::numbers::pi;
  EXPECT_TRUE(compact_difference(AffineSymbol::make(s, 1, 0.3 * I), AffineSymbol::make(s, 1, (0.3 + 2 * pi) * I)).compact);
  const auto d = compact_difference(AffineSymbol::make(s, 1, 0.0), AffineSymbol::make(s, 1, pi * I));
  EXPECT_FALSE(d.compact);
  EXPECT_NEAR(d.essential_norm.value, 2, 1e-12);
  EXPECT_TRUE(compact_difference(AffineSymbol::make(s, 1, 0.5), AffineSymbol::make(s, 1, Complex(1, 3))).compact);
}
