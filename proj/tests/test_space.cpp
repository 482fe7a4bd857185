#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dirop/space.hpp"
#include "dirop/symmetry.hpp"

using namespace dirop;

namespace {
const double e = std::numbers::e;
const Complex I(0, 1);

DirichletSpace arithmetic() { return DirichletSpace(FrequencySequence::arithmetic(), WeightSequence::constant()); }
}  // namespace

TEST(Space, ConstantsAndDomain) {
  const auto s = arithmetic();
  EXPECT_EQ(s.L().value, 0);
  EXPECT_EQ(s.beta_star().value, 0);
  EXPECT_EQ(s.theta(), 0);
  EXPECT_TRUE(s.domain().contains(0.1));
  EXPECT_FALSE(s.domain().contains(0.0));
}

TEST(Space, HorizonFloor) { EXPECT_THROW(DirichletSpace(FrequencySequence::arithmetic(), WeightSequence::constant(), {.horizon = 4}), Error); }

TEST(InnerProduct, BasisIsOrthonormal) {
  const DirichletSpace s(FrequencySequence::arithmetic(), WeightSequence::exp_linear(0.3));
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_NEAR(std::abs(inner_product(DirichletElement::basis(s, n), DirichletElement::basis(s, n)) - 1.0), 0, 1e-14);
    EXPECT_EQ(inner_product(DirichletElement::basis(s, n), DirichletElement::basis(s, n + 1)), Complex(0));
  }
}

TEST(InnerProduct, TwoTermSum) {
  const auto s = arithmetic();
  const auto f = DirichletElement::monomial(s, 1) + DirichletElement::monomial(s, 2);
  EXPECT_EQ(inner_product(f, DirichletElement::monomial(s, 2)), Complex(1));
}

TEST(InnerProduct, RejectsMixedSpaces) {
  const auto a = arithmetic();
  const auto b = arithmetic();
  try {
    (void)inner_product(DirichletElement::monomial(a, 1), DirichletElement::monomial(b, 1));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::MismatchedSpace);
  }
}

TEST(Evaluate, Examples) {
  const auto s = arithmetic();
  EXPECT_NEAR(std::abs(evaluate(DirichletElement::monomial(s, 1), 0.5).value - std::exp(-0.5)), 0, 1e-16);
  const auto f = DirichletElement::monomial(s, 1) + DirichletElement::monomial(s, 2);
  EXPECT_NEAR(evaluate(f, 0.1).value.real(), 1.723568171, 1e-9);
  EXPECT_EQ(evaluate(DirichletElement(s), 0.3).value, Complex(0));
}

TEST(Evaluate, OutsideDomain) {
  const auto s = arithmetic();
  try {
    (void)evaluate(DirichletElement::monomial(s, 1), Complex(0, 2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::OutsideDomain);
  }
}

TEST(Kernel, ClosedForms) {
  const auto s = arithmetic();
  EXPECT_NEAR(std::abs(kernel_eval(s, 1.0, 1.0).value - 1 / (e * e - 1)), 0, 1e-10);
  EXPECT_NEAR(std::abs(kernel_eval(s, 1.0, 1.0 + std::numbers::pi * I).value + 1 / (e * e + 1)), 0, 1e-10);
  EXPECT_NEAR(kernel_norm(s, 1.0), std::sqrt(1 / (e * e - 1)), 1e-10);
  EXPECT_NEAR(kernel_norm(s, 0.5), std::sqrt(1 / (e - 1)), 1e-10);
}

TEST(Kernel, DiagonalIsPositiveAndDecreasing) {
  const auto s = arithmetic();
  double prev = INFINITY;
  for (double x : {0.3, 0.6, 1.0, 2.0, 4.0}) {
    const auto k = kernel_eval(s, Complex(x, 0.7), Complex(x, 0.7));
    EXPECT_NEAR(k.value.imag(), 0, 1e-15);
    EXPECT_GT(k.value.real(), 0);
    EXPECT_LT(k.value.real(), prev);
    prev = k.value.real();
  }
}

TEST(Kernel, TailIsCertified) {
  const auto s = arithmetic();
  const auto k = kernel_eval(s, 1.0, 1.0, 1e-12);
  EXPECT_LE(k.tail_bound, 1e-12);
  EXPECT_GT(k.terms, 0u);
}

TEST(Kernel, ReproducingProperty) {
  const auto s = arithmetic();
  const auto k = kernel_truncated(s, Complex(1.0, 0.4), std::size_t{64});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_element(s, rng, 16);
    const double err = std::abs(inner_product(f, k.element) - evaluate(f, Complex(1.0, 0.4)).value);
    EXPECT_LE(err, norm(f) * std::sqrt(k.tail_norm_sq) + 1e-14);
  }
}

TEST(Abscissa, FinitelySupported) {
  const auto s = arithmetic();
  const auto r1 = coefficient_abscissa(DirichletElement::monomial(s, 1));
  EXPECT_EQ(r1.D, -INFINITY);
  EXPECT_EQ(r1.window_max, 0);
  EXPECT_NEAR(coefficient_abscissa(DirichletElement::monomial(s, 1, e * e)).window_max, 2, 1e-15);
  EXPECT_THROW((void)coefficient_abscissa(DirichletElement(s)), Error);
}
