#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "dirop/dynamics.hpp"
#include "dirop/oracle.hpp"

using namespace dirop;

namespace {
const Complex I(0, 1);
DirichletSpace zero_start() {
  return DirichletSpace(FrequencySequence::geometric(1.0, 2.0).with_leading_zero(), WeightSequence::constant());
}
DirichletSpace arithmetic() { return DirichletSpace(FrequencySequence::arithmetic(), WeightSequence::constant()); }

// Frozen from an mpmath run of sqrt(Σ_{j<=s} j^{-1.1}) / Σ_{j<=s} j^{-0.55}.
constexpr std::size_t kDegree = 42499;
constexpr double kResidual = 0.009999970995995592719;
constexpr double kResidualAt4096 = 0.027087655475443505399;
}  // namespace

TEST(ShiftModel, FromSpace) {
  const auto s = zero_start();
  const auto flat = shift_from_space(AffineSymbol::make(s, 2, 0.0));
  for (std::size_t j = 1; j <= 30; ++j) EXPECT_EQ(flat.alpha(j), 1);
  const auto decaying = shift_from_space(AffineSymbol::make(s, 2, 1.0));
  for (std::size_t j = 1; j <= 8; ++j) EXPECT_NEAR(decaying.alpha(j), std::exp(-std::ldexp(1.0, static_cast<int>(j) - 1)), 1e-300);
}

TEST(ShiftModel, WrongCensus) {
  try {
    (void)shift_from_space(AffineSymbol::make(arithmetic(), 2, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongInitialPointCensus);
  }
}

TEST(Approx, MatchesOracleDegree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto poly = build_approx_polynomial(ShiftModel::constant(), 1.0, 1e-2);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5);
  EXPECT_EQ(poly.s, kDegree);
  EXPECT_NEAR(poly.measured_residual, kResidual, 1e-13);
  EXPECT_NEAR(poly.predicted_residual, poly.measured_residual, 1e-12);
  EXPECT_EQ(exact_coefficient_sum(poly.u), Complex(1));
  EXPECT_EQ(poly.value_at_one(), Complex(1));
}

TEST(Approx, TraceIsMonotone) {
  const auto model = ShiftModel::constant();
  const auto trace = doubling_trace(model, 1.0, kDegree);
  ASSERT_GE(trace.size(), 2u);
  EXPECT_EQ(trace.back().degree, kDegree);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i].measured_residual, trace[i - 1].measured_residual);
  for (const auto& row : trace) {
    if (row.degree == 4096) {
      EXPECT_NEAR(row.measured_residual, kResidualAt4096, 1e-13);
    }
  }
  std::ostringstream os;
  write_trace_csv(os, trace);
  EXPECT_EQ(os.str().rfind("degree,predicted_residual,measured_residual\n1,1,1\n", 0), 0u);
}

TEST(Approx, ComplexNuKeepsValueExactly) {
  const Complex nu(0.3, -1.25);
  const auto poly = build_approx_polynomial(ShiftModel::constant(), nu, 5e-2);
  EXPECT_EQ(exact_coefficient_sum(poly.u), nu);
  EXPECT_LE(poly.measured_residual, 5e-2);
}

TEST(Approx, ZeroNuScalesEpsilon) {
  const auto model = ShiftModel::from_weights(std::vector<double>(64, 0.9));
  const auto poly = build_approx_polynomial(model, 0.0, 1e-6);
  EXPECT_LE(poly.measured_residual, 1e-6);
  EXPECT_EQ(exact_coefficient_sum(poly.u), Complex(0));
}

TEST(Approx, SummableInverseWeightsFail) {
  // ω_j = 2^j makes Σ ω_j^{-2} converge.
  try {
    (void)build_approx_polynomial(ShiftModel::constant(2.0), 1.0, 1e-2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergenceNotEvidenced);
  }
}

TEST(Approx, DegreeCap) {
  ApproxOptions opt;
  opt.degree_cap = 1000;
  try {
    (void)build_approx_polynomial(ShiftModel::constant(), 1.0, 1e-2, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeCapExceeded);
  }
}

TEST(Approx, MeasuredByShiftApplication) {
  const auto model = ShiftModel::constant();
  const auto poly = build_approx_polynomial(model, 1.0, 0.1);
  const auto image = apply_polynomial_to_e1(model, poly.u);
  double sq = 0;
  for (const auto& c : image) sq += std::norm(c);
  EXPECT_NEAR(std::sqrt(sq), poly.measured_residual, 1e-14);
}

TEST(CyclicApprox, HitsSecondBasisVector) {
  const auto model = ShiftModel::constant();
  const auto approx = cyclic_approximation(model, 1.0, 0.0, {0.0, 1.0}, 0.05);
  EXPECT_LT(approx.residual, 0.05);
  EXPECT_EQ(exact_coefficient_sum(approx.p), Complex(0));
  EXPECT_EQ(approx.value_error, 0);
}

TEST(CyclicApprox, ZeroTargetReducesToConstruction) {
  const auto model = ShiftModel::constant();
  const auto approx = cyclic_approximation(model, 1.0, 1.0, {}, 0.05);
  EXPECT_TRUE(approx.p_tilde.empty());
  EXPECT_EQ(exact_coefficient_sum(approx.p), Complex(1));
  EXPECT_LT(approx.residual, 0.05);
}

TEST(CyclicApprox, InterpolationOffset) {
  const double eps = 0.36;
  const auto model = ShiftModel::from_weights(std::vector<double>(4096, 1.0));
  const std::vector<Complex> y = {Complex(0.5), Complex(0, 1), Complex(-0.25)};
  const auto approx = cyclic_approximation(model, 2.0, Complex(1, 1), y, eps, std::sqrt(eps) / 2);
  const auto image = apply_polynomial_to_e1(model, approx.p_tilde);
  double sq = 0;
  for (std::size_t k = 0; k < y.size(); ++k) sq += std::norm(image[k] - y[k]);
  EXPECT_NEAR(std::sqrt(sq), std::sqrt(eps) / 2, 1e-15);
  EXPECT_EQ(approx.value_error, 0);
}

TEST(Krylov, Examples) {
  const DirichletSpace geo(FrequencySequence::geometric(1.0, 2.0), WeightSequence::constant());
  std::vector<Complex> e1(8, 0.0);
  e1[0] = 1;
  EXPECT_EQ(krylov_density_oracle(truncate(AffineSymbol::make(geo, 2, 0.0), 8).M, e1, 7).rank, 8u);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Complex> f(8);
  for (auto& x : f) x = Complex(g(rng), g(rng));
  const auto ar = krylov_density_oracle(truncate(AffineSymbol::make(arithmetic(), 2, 1.0), 8).M, f, 7);
  EXPECT_LT(ar.rank, 8u);
  EXPECT_EQ(krylov_density_oracle(Matrix::identity(8), f, 7).rank, 1u);
}

TEST(Cyclicity, Verdicts) {
  const DirichletSpace geo(FrequencySequence::geometric(1.0, 2.0), WeightSequence::constant());
  for (Complex b : {Complex(0), Complex(1, 2)}) {
    const auto v = classify_cyclicity(AffineSymbol::make(geo, 2, b));
    EXPECT_EQ(v.kind, Cyclicity::Cyclic);
    EXPECT_EQ(v.supercyclic, false);
  }
  EXPECT_EQ(classify_cyclicity(AffineSymbol::make(arithmetic(), 2, 1.0)).kind, Cyclicity::NotCyclic);
  EXPECT_EQ(classify_cyclicity(AffineSymbol::make(arithmetic(), 1, 1.0)).kind, Cyclicity::Cyclic);
  EXPECT_EQ(classify_cyclicity(AffineSymbol::make(zero_start(), 2, 0.0)).kind, Cyclicity::Cyclic);
}
