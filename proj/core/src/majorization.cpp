#include "sherman/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sherman/errors.hpp"

namespace sherman {

namespace {

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Indices ordering v decreasingly; ties keep the smaller index first.
std::vector<std::size_t> decreasing_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DomainError(Errc::dimension_mismatch, "empty matrix");
  }
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw DomainError(Errc::dimension_mismatch,
                        "row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(m.cols()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw DomainError(Errc::dimension_mismatch,
                      dims(rows_, cols_) + " * " + dims(rhs.rows_, rhs.cols_));
  }
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out(i, j) += (*this)(i, k) * rhs(k, j);
  return out;
}

std::string_view to_string(StochasticKind k) noexcept {
  switch (k) {
    case StochasticKind::row: return "row";
    case StochasticKind::column: return "column";
    case StochasticKind::doubly: return "doubly";
  }
  return "row";
}

StochasticMatrix::StochasticMatrix(Matrix entries, StochasticKind kind)
    : m_(std::move(entries)), kind_(kind) {
  if (m_.rows() == 0 || m_.cols() == 0) {
    throw DomainError(Errc::dimension_mismatch, "empty stochastic matrix");
  }
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = 0; j < m_.cols(); ++j) {
      double& v = m_(i, j);
      if (!std::isfinite(v) || v < -kClampTol) {
        throw DomainError(Errc::not_stochastic,
                          "entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") = " + std::to_string(v) + " is negative");
      }
      if (v < 0.0) v = 0.0;
    }
  }
  const bool need_rows = kind != StochasticKind::column;
  const bool need_cols = kind != StochasticKind::row;
  if (need_rows && !is_row_stochastic()) {
    throw DomainError(Errc::not_stochastic, "row sums differ from 1");
  }
  if (need_cols && !is_column_stochastic()) {
    throw DomainError(Errc::not_stochastic, "column sums differ from 1");
  }
}

bool StochasticMatrix::is_row_stochastic(double tol) const {
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m_.cols(); ++j) s += m_(i, j);
    if (std::abs(s - 1.0) > tol) return false;
  }
  return true;
}

bool StochasticMatrix::is_column_stochastic(double tol) const {
  for (std::size_t j = 0; j < m_.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m_.rows(); ++i) s += m_(i, j);
    if (std::abs(s - 1.0) > tol) return false;
  }
  return true;
}

WeightedVector::WeightedVector(std::vector<double> points,
                               std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size()) {
    throw DomainError(Errc::length_mismatch,
                      std::to_string(points_.size()) + " points vs " +
                          std::to_string(weights_.size()) + " weights");
  }
  for (double p : points_) {
    if (!std::isfinite(p)) {
      throw DomainError(Errc::invalid_argument, "non-finite point");
    }
  }
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError(Errc::invalid_argument, "weights nonnegative");
    }
  }
}

WeightedVector WeightedVector::uniform(std::vector<double> points, double weight) {
  std::vector<double> w(points.size(), weight);
  return WeightedVector(std::move(points), std::move(w));
}

double WeightedVector::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double WeightedVector::weighted_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += weights_[i] * points_[i];
  return s;
}

MajorizationCert majorizes(std::span<const double> x, std::span<const double> y,
                           double tol) {
  if (x.size() != y.size() || x.empty()) {
    throw DomainError(Errc::length_mismatch,
                      "majorization needs equal nonzero lengths, got " +
                          std::to_string(x.size()) + " and " +
                          std::to_string(y.size()));
  }
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());

  MajorizationCert cert;
  double sx = 0.0;
  double sy = 0.0;
  const std::size_t m = xs.size();
  for (std::size_t k = 0; k < m; ++k) {
    sx += xs[k];
    sy += ys[k];
    const bool last = k + 1 == m;
    const bool ok = last ? std::abs(sx - sy) <= tol : sy <= sx + tol;
    if (!ok) {
      cert.relation = Relation::fails;
      cert.witness_k = k + 1;
      return cert;
    }
  }
  cert.relation = Relation::holds;
  return cert;
}

StochasticMatrix construct_doubly_stochastic(std::span<const double> x,
                                             std::span<const double> y,
                                             double tol) {
  const MajorizationCert cert = majorizes(x, y, tol);
  if (!cert.holds()) {
    throw DomainError(Errc::not_majorized,
                      "partial sum " + std::to_string(*cert.witness_k) +
                          " of y exceeds that of x");
  }

  const std::size_t m = x.size();
  const auto px = decreasing_order(x);
  const auto py = decreasing_order(y);
  std::vector<double> z(m);
  std::vector<double> target(m);
  double scale = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    z[k] = x[px[k]];
    target[k] = y[py[k]];
    scale = std::max(scale, std::abs(z[k]));
  }
  const double eps = 1e-14 * scale;

  // Invariant: z = sorted_d * x_sorted. Each pass moves mass from a
  // coordinate above its target to the nearest one below it.
  Matrix sorted_d = Matrix::identity(m);
  for (std::size_t iter = 0; iter < 2 * m; ++iter) {
    std::size_t j = m;
    for (std::size_t i = m; i-- > 0;) {
      if (z[i] - target[i] > eps) {
        j = i;
        break;
      }
    }
    if (j == m) break;
    std::size_t k = m;
    for (std::size_t i = j + 1; i < m; ++i) {
      if (target[i] - z[i] > eps) {
        k = i;
        break;
      }
    }
    if (k == m) break;

    const double up = z[j] - target[j];
    const double down = target[k] - z[k];
    const double delta = std::min(up, down);
    const double mix = delta / (z[j] - z[k]);  // 1 - lambda
    for (std::size_t c = 0; c < m; ++c) {
      const double rj = sorted_d(j, c);
      const double rk = sorted_d(k, c);
      sorted_d(j, c) = (1.0 - mix) * rj + mix * rk;
      sorted_d(k, c) = mix * rj + (1.0 - mix) * rk;
    }
    if (up <= down) {
      z[j] = target[j];
      z[k] += delta;
    } else {
      z[k] = target[k];
      z[j] -= delta;
    }
  }

  Matrix d(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) d(py[r], px[c]) = sorted_d(r, c);
  return StochasticMatrix(std::move(d), StochasticKind::doubly);
}

MajorizationCert certify_majorization(std::span<const double> x,
                                      std::span<const double> y, double tol) {
  MajorizationCert cert = majorizes(x, y, tol);
  if (cert.holds()) cert.matrix = construct_doubly_stochastic(x, y, tol);
  return cert;
}

std::vector<double> apply_transpose(const StochasticMatrix& A,
                                    std::span<const double> x) {
  if (x.size() != A.cols()) {
    throw DomainError(Errc::dimension_mismatch,
                      "x has " + std::to_string(x.size()) + " entries, A is " +
                          dims(A.rows(), A.cols()));
  }
  std::vector<double> y(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) y[i] += A(i, j) * x[j];
  return y;
}

namespace {

// a = bA
std::vector<double> left_multiply(std::span<const double> b,
                                  const StochasticMatrix& A) {
  if (b.size() != A.rows()) {
    throw DomainError(Errc::dimension_mismatch,
                      "b has " + std::to_string(b.size()) + " entries, A is " +
                          dims(A.rows(), A.cols()));
  }
  std::vector<double> a(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) a[j] += b[i] * A(i, j);
  return a;
}

void require_row_stochastic(const StochasticMatrix& A) {
  if (!A.is_row_stochastic()) {
    throw DomainError(Errc::not_stochastic,
                      "weighted majorization needs a row-stochastic matrix");
  }
}

}  // namespace

WeightedCheck verify_weighted_majorization(const WeightedVector& x,
                                           const WeightedVector& y,
                                           const StochasticMatrix& A,
                                           double tol) {
  if (A.rows() != y.size() || A.cols() != x.size()) {
    throw DomainError(Errc::dimension_mismatch,
                      "A is " + dims(A.rows(), A.cols()) + ", expected " +
                          dims(y.size(), x.size()));
  }
  require_row_stochastic(A);

  const auto a = left_multiply(y.weights(), A);
  const auto yy = apply_transpose(A, x.points());
  WeightedCheck check;
  for (std::size_t j = 0; j < a.size(); ++j) {
    check.weight_residual =
        std::max(check.weight_residual, std::abs(x.weight(j) - a[j]));
  }
  for (std::size_t i = 0; i < yy.size(); ++i) {
    check.point_residual =
        std::max(check.point_residual, std::abs(y.point(i) - yy[i]));
  }
  check.passed = check.weight_residual <= tol && check.point_residual <= tol;
  return check;
}

std::pair<WeightedVector, WeightedVector> generate_weighted_pair(
    std::span<const double> x, std::span<const double> b,
    const StochasticMatrix& A) {
  if (A.cols() != x.size()) {
    throw DomainError(Errc::dimension_mismatch,
                      "x has " + std::to_string(x.size()) + " entries, A is " +
                          dims(A.rows(), A.cols()));
  }
  require_row_stochastic(A);
  auto a = left_multiply(b, A);
  auto y = apply_transpose(A, x);
  return {WeightedVector(std::vector<double>(x.begin(), x.end()), std::move(a)),
          WeightedVector(std::move(y), std::vector<double>(b.begin(), b.end()))};
}

}  // namespace sherman
