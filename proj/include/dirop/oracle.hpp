#pragma once

// Dense finite sections of composition operators and an in-house one-sided
// Jacobi SVD used to cross-check the closed forms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dirop/errors.hpp"
#include "dirop/operator.hpp"
#include "dirop/space.hpp"

namespace dirop {

/// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    require(x.cols_ == y.rows_, ErrorCode::InvalidArgument, "matrix dimensions do not match");
    Matrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Complex xik = x(i, k);
        if (xik == Complex(0)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend Matrix operator-(Matrix x, const Matrix& y) {
    require(x.rows_ == y.rows_ && x.cols_ == y.cols_, ErrorCode::InvalidArgument, "matrix dimensions do not match");
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] -= y.data_[i];
    return x;
  }

  double frobenius() const {
    double s = 0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

struct TruncationMatrix {
  Matrix M;  // M(i, j) = ⟨C q_{j+1}, q_{i+1}⟩
  std::string provenance;
  std::vector<std::size_t> lost_columns;  // 1-based columns whose image lies outside the section

  std::size_t dimension() const { return M.rows(); }
};

inline TruncationMatrix truncate(const AffineSymbol& sym, std::size_t N) {
  require(N >= 1, ErrorCode::InvalidArgument, "truncation dimension must be positive");
  require_bounded(sym);
  const auto& space = sym.space();
  TruncationMatrix t{Matrix(N, N), sym.describe() + " on " + space.frequencies().describe() + " / " +
                                       space.weights().describe() + ", N = " + std::to_string(N),
                     {}};
  if (sym.a() == 0) {
    // C q_j = q_j(b) e_1 = β_1 β_j^{-1} e^{-λ_j b} q_1
    for (std::size_t j = 1; j <= N; ++j)
      t.M(0, j - 1) = std::exp(space.log_weight(1) - space.log_weight(j) - space.lambda(j) * sym.b());
    return t;
  }
  for (std::size_t j = 1; j <= N; ++j) {
    const auto m = sym.m(j);
    if (!m) fail(ErrorCode::RatioIndexMissing, "no m_n for n = " + std::to_string(j));
    if (*m > N) {
      t.lost_columns.push_back(j);
      continue;
    }
    const double phase = -space.lambda(j) * sym.b().imag();
    t.M(*m - 1, j - 1) = std::polar(r_value(sym, j), phase);
  }
  return t;
}

inline void write_csv(std::ostream& os, const Matrix& M) {
  os << "row,col,re,im\n";
  os.precision(17);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (M(i, j) != Complex(0)) os << i + 1 << ',' << j + 1 << ',' << M(i, j).real() + 0.0 << ',' << M(i, j).imag() + 0.0 << '\n';
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD

inline constexpr double kJacobiTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 30;

struct SVDResult {
  std::vector<double> sigma;  // descending
  Matrix U;                   // rows x cols, columns are left singular vectors (zero where σ = 0)
  Matrix V;                   // cols x cols, unitary
  int sweeps = 0;
};

namespace detail {

struct JacobiRotation {
  double c;
  double s;
  Complex phase;  // e^{-i arg γ}
};

// Rotation that makes the (p, q) Gram entry vanish; γ = a_p^H a_q.
inline JacobiRotation jacobi_rotation(double alpha, double beta, Complex gamma) {
  const double g = std::abs(gamma);
  const double zeta = (beta - alpha) / (2 * g);
  const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
  const double c = 1 / std::sqrt(1 + t * t);
  return {c, c * t, std::conj(gamma) / g};
}

// Columns p, q of X become (c x_p - s e x_q, s x_p + c e x_q), e = phase.
inline void rotate_columns(Matrix& X, std::size_t p, std::size_t q, const JacobiRotation& r) {
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const Complex xp = X(i, p);
    const Complex xq = X(i, q) * r.phase;
    X(i, p) = r.c * xp - r.s * xq;
    X(i, q) = r.s * xp + r.c * xq;
  }
}

}  // namespace detail

inline SVDResult singular_value_decomposition(const Matrix& M) {
  require(M.rows() >= 1 && M.cols() >= 1, ErrorCode::InvalidArgument, "empty matrix");
  const std::size_t n = M.cols();
  Matrix A = M;
  Matrix V = Matrix::identity(n);
  SVDResult out;
  bool rotated = true;
  while (rotated) {
    if (out.sweeps == kJacobiMaxSweeps) {
      double off = 0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          Complex gamma = 0;
          for (std::size_t i = 0; i < A.rows(); ++i) gamma += std::conj(A(i, p)) * A(i, q);
          off = std::max(off, std::abs(gamma));
        }
      fail(ErrorCode::NoConvergence, "Jacobi SVD did not converge in " + std::to_string(kJacobiMaxSweeps) +
                                         " sweeps (largest off-diagonal Gram entry " + std::to_string(off) + ")");
    }
    rotated = false;
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0;
        double beta = 0;
        Complex gamma = 0;
        for (std::size_t i = 0; i < A.rows(); ++i) {
          alpha += std::norm(A(i, p));
          beta += std::norm(A(i, q));
          gamma += std::conj(A(i, p)) * A(i, q);
        }
        if (alpha == 0 || beta == 0) continue;
        if (std::abs(gamma) <= kJacobiTol * std::sqrt(alpha * beta)) continue;
        const auto r = detail::jacobi_rotation(alpha, beta, gamma);
        detail::rotate_columns(A, p, q, r);
        detail::rotate_columns(V, p, q, r);
        rotated = true;
      }
    }
  }
  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) s += std::norm(A(i, j));
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
  out.U = Matrix(A.rows(), n);
  out.V = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma.push_back(norms[j]);
    for (std::size_t i = 0; i < A.rows(); ++i) out.U(i, k) = norms[j] > 0 ? A(i, j) / norms[j] : Complex(0);
    for (std::size_t i = 0; i < n; ++i) out.V(i, k) = V(i, j);
  }
  return out;
}

inline std::vector<double> singular_values(const Matrix& M) { return singular_value_decomposition(M).sigma; }
inline std::vector<double> singular_values(const TruncationMatrix& t) { return singular_values(t.M); }

/// ‖M - U Σ V*‖_F
inline double reconstruction_error(const Matrix& M, const SVDResult& svd) {
  Matrix US = svd.U;
  for (std::size_t i = 0; i < US.rows(); ++i)
    for (std::size_t k = 0; k < US.cols(); ++k) US(i, k) *= svd.sigma[k];
  return (M - US * svd.V.adjoint()).frobenius();
}

/// Eigenvalues (descending) of a Hermitian matrix by cyclic Jacobi rotations.
inline std::vector<double> hermitian_eigenvalues(Matrix H) {
  require(H.rows() == H.cols(), ErrorCode::InvalidArgument, "matrix must be square");
  const std::size_t n = H.rows();
  const double scale = H.frobenius();
  for (int sweep = 0;; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2 * std::norm(H(p, q));
    if (std::sqrt(off) <= kJacobiTol * scale || scale == 0) break;
    if (sweep == kJacobiMaxSweeps)
      fail(ErrorCode::NoConvergence, "Hermitian Jacobi did not converge (off-diagonal norm " + std::to_string(std::sqrt(off)) + ")");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = H(p, q);
        if (std::abs(g) <= kJacobiTol * scale / static_cast<double>(n)) continue;
        // Same rotation as for the Gram matrix: its columns play the role of a_p, a_q.
        const auto r = detail::jacobi_rotation(H(p, p).real(), H(q, q).real(), g);
        detail::rotate_columns(H, p, q, r);
        for (std::size_t j = 0; j < n; ++j) {
          const Complex hp = H(p, j);
          const Complex hq = H(q, j) * std::conj(r.phase);
          H(p, j) = r.c * hp - r.s * hq;
          H(q, j) = r.s * hp + r.c * hq;
        }
        H(p, q) = 0;
        H(q, p) = 0;
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = H(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// ---------------------------------------------------------------------------
// Side-by-side comparison

inline constexpr double kZeroEntryTol = 1e-12;

struct KernelDimensions {
  std::size_t zero_rows = 0;     // lower bound on dim ker M*
  std::size_t zero_columns = 0;  // lower bound on dim ker M (includes truncation losses)
  std::size_t zero_columns_kept = 0;  // zero columns that are not truncation losses
};

inline KernelDimensions kernel_dimensions(const TruncationMatrix& t, double tol = kZeroEntryTol) {
  KernelDimensions k;
  const std::size_t N = t.dimension();
  for (std::size_t i = 0; i < N; ++i) {
    bool row_zero = true;
    bool col_zero = true;
    for (std::size_t j = 0; j < N; ++j) {
      row_zero = row_zero && std::abs(t.M(i, j)) <= tol;
      col_zero = col_zero && std::abs(t.M(j, i)) <= tol;
    }
    k.zero_rows += row_zero;
    if (col_zero) {
      ++k.zero_columns;
      if (!std::binary_search(t.lost_columns.begin(), t.lost_columns.end(), i + 1)) ++k.zero_columns_kept;
    }
  }
  return k;
}

namespace detail {
inline std::string schatten_label(double p) {
  std::ostringstream os;
  os << "schatten_sum_p=" << p;
  return os.str();
}
}  // namespace detail

struct ComparisonRow {
  std::string quantity;
  double closed_form;
  double oracle;
  double deviation;
  double tail_bound;  // explains the gap attributable to the finite section
};

struct ComparisonReport {
  std::size_t N = 0;
  std::vector<std::size_t> lost_columns;
  std::vector<double> singular_values;
  std::vector<ComparisonRow> rows;
  KernelDimensions kernels;
};

inline ComparisonReport compare(const AffineSymbol& sym, std::size_t N, const std::vector<double>& schatten_p = {1.0, 2.0}) {
  const TruncationMatrix t = truncate(sym, N);
  ComparisonReport rep;
  rep.N = N;
  rep.lost_columns = t.lost_columns;
  rep.singular_values = singular_values(t);
  rep.kernels = kernel_dimensions(t);
  auto row = [&](std::string q, double closed, double oracle, double tail) {
    rep.rows.push_back({std::move(q), closed, oracle, std::abs(closed - oracle), tail});
  };

  const auto bounded = check_bounded(sym);
  const double sigma_max = rep.singular_values.front();
  const double sigma_min = rep.singular_values.back();
  const double frob = t.M.frobenius();

  if (sym.a() == 0) {
    // Only the first N columns of the rank-one operator are present.
    const double norm = bounded.operator_norm.value_or(Estimate{std::numeric_limits<double>::quiet_NaN(), false, false}).value;
    const double kept = frob;
    const double tail = std::sqrt(std::max(0.0, norm * norm - kept * kept));
    row("operator_norm", norm, sigma_max, tail);
    row("hilbert_schmidt", norm, frob, tail);
    for (double p : schatten_p) row(detail::schatten_label(p), std::pow(norm, p), std::pow(sigma_max, p), std::pow(tail, p));
    return rep;
  }

  std::vector<double> r(N);
  for (std::size_t k = 1; k <= N; ++k) r[k - 1] = r_value(sym, k);
  double lost_sq = 0;
  double lost_max = 0;
  for (std::size_t j : t.lost_columns) {
    lost_sq += r[j - 1] * r[j - 1];
    lost_max = std::max(lost_max, r[j - 1]);
  }
  const double beyond_sq = detail::r_power_tail(sym, 2, N);
  row("operator_norm", bounded.operator_norm.value_or(Estimate{std::numeric_limits<double>::quiet_NaN(), false, false}).value, sigma_max, lost_max);

  const auto hs = hilbert_schmidt(sym);
  double closed_hs = 0;
  for (double v : r) closed_hs += v * v;
  if (std::isfinite(beyond_sq)) closed_hs += beyond_sq;
  closed_hs = hs.finite == Summability::Converges ? std::sqrt(closed_hs) : std::numeric_limits<double>::infinity();
  row("hilbert_schmidt", closed_hs, frob, std::sqrt(lost_sq + (std::isfinite(beyond_sq) ? beyond_sq : 0)));

  for (double p : schatten_p) {
    double oracle = 0;
    for (double s : rep.singular_values) oracle += std::pow(s, p);
    double closed = 0;
    double lost = 0;
    for (double v : r) closed += std::pow(v, p);
    for (std::size_t j : t.lost_columns) lost += std::pow(r[j - 1], p);
    const double beyond = detail::r_power_tail(sym, p, N);
    if (std::isfinite(beyond)) closed += beyond;
    row(detail::schatten_label(p), closed, oracle, lost + (std::isfinite(beyond) ? beyond : 0));
  }

  // The section only sees r_1..r_N, and a lost column contributes a zero singular value.
  const auto cr = closed_range(sym);
  double seen_min = t.lost_columns.empty() ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t k = 1; k <= N; ++k)
    if (std::find(t.lost_columns.begin(), t.lost_columns.end(), k) == t.lost_columns.end()) seen_min = std::min(seen_min, r[k - 1]);
  row("closed_range_inf", cr.infimum.value, sigma_min, std::abs(seen_min - cr.infimum.value));
  return rep;
}

}  // namespace dirop
