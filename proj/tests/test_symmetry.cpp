#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dirop/symmetry.hpp"

using namespace dirop;

namespace {
const Complex I(0, 1);
const double pi = std::numbers::pi;
DirichletSpace arithmetic() { return DirichletSpace(FrequencySequence::arithmetic(), WeightSequence::constant()); }
}  // namespace

TEST(Conjugation, PlainConjugationAtZero) {
  const auto s = arithmetic();
  const Conjugation J(s, 0);
  EXPECT_EQ(J.apply(DirichletElement::monomial(s, 1, I)).coefficient(1), -I);
}

TEST(Conjugation, PhaseAtPi) {
  const auto s = arithmetic();
  const auto g = Conjugation(s, pi).apply(DirichletElement::monomial(s, 1));
  EXPECT_NEAR(std::abs(g.coefficient(1) + 1.0), 0, 1e-15);
}

TEST(Conjugation, InvolutionOnBasis) {
  const DirichletSpace s(FrequencySequence::logarithmic(), WeightSequence::exp_linear(0.4));
  const Conjugation J(s, 1.7);
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto q = DirichletElement::basis(s, n);
    EXPECT_NEAR(std::abs(J.apply(J.apply(q)).coefficient(n) - q.coefficient(n)), 0, 1e-15 * std::abs(q.coefficient(n)));
  }
}

TEST(Conjugation, AntilinearIsometry) {
  const auto s = arithmetic();
  const Conjugation J(s, 0.6);
  std::mt19937_64 rng(5);
  const auto f = random_element(s, rng);
  const auto Jf = J.apply(f);
  EXPECT_NEAR(norm(Jf), norm(f), 1e-14 * norm(f));
  auto two_f = f;
  two_f *= 2.0;
  auto i_f = f;
  i_f *= I;
  for (const auto& [n, c] : Jf.coefficients()) {
    EXPECT_NEAR(std::abs(J.apply(two_f).coefficient(n) - 2.0 * c), 0, 1e-15 * std::abs(c) * 4);
    EXPECT_NEAR(std::abs(J.apply(i_f).coefficient(n) + I * c), 0, 1e-15 * std::abs(c) * 4);
  }
}

TEST(Conjugation, SeededDefects) {
  for (double c : {0.0, 1.0, pi}) {
    const auto d = verify_conjugation(Conjugation(arithmetic(), c), 100, 42);
    EXPECT_EQ(d.samples, 100u);
    EXPECT_LE(d.isometry, 1e-12);
    EXPECT_LE(d.involution, 1e-12);
    EXPECT_LE(d.antilinearity, 1e-12);
  }
}

TEST(Symmetry, TranslationsAreSymmetric) {
  const auto s = arithmetic();
  for (double c : {0.0, 1.0, pi}) EXPECT_LE(symmetry_defect(AffineSymbol::make(s, 1, 0.3), Conjugation(s, c), 64), 1e-12);
  const auto rep = complex_symmetry_verdict(AffineSymbol::make(s, 1, Complex(0.3, 2)), 32, {0, 1});
  EXPECT_EQ(rep.verdict, SymmetryVerdict::ComplexSymmetric);
}

TEST(Symmetry, DilationKernelWitness) {
  const auto rep = complex_symmetry_verdict(AffineSymbol::make(arithmetic(), 2, 1.0), 16);
  EXPECT_EQ(rep.verdict, SymmetryVerdict::NeverComplexSymmetric);
  ASSERT_TRUE(rep.kernel_dim_adjoint && rep.kernel_dim_operator);
  EXPECT_EQ(*rep.kernel_dim_operator, 0u);
  EXPECT_GE(*rep.kernel_dim_adjoint, 1u);
  EXPECT_EQ(rep.witness_index, 1u);
}

TEST(Symmetry, ConstantSymbol) {
  const DirichletSpace s(FrequencySequence::arithmetic().with_leading_zero(), WeightSequence::constant());
  EXPECT_EQ(complex_symmetry_verdict(AffineSymbol::make(s, 0, 1.0), 16).verdict, SymmetryVerdict::ComplexSymmetric);
}
