#pragma once

// Classical and weighted (Sherman) majorization.
//
// Shapes follow the weighted setup: x has l entries with weights a, y has m
// entries with weights b, and A is an m x l row-stochastic matrix with
//   a = b A        (a_j = sum_i b_i A_ij)
//   y = x A^T      (y_i = sum_j A_ij x_j).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace sherman {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Throws DimensionMismatch on ragged input or an empty matrix.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<std::vector<double>> to_rows() const;

  Matrix operator*(const Matrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class StochasticKind { row, column, doubly };

std::string_view to_string(StochasticKind k) noexcept;

/// Nonnegative matrix with unit row and/or column sums.
///
/// On construction entries in [-1e-14, 0) are clamped to 0, more negative
/// entries are rejected, and the sums required by `kind` are checked to
/// 1e-12. Throws DomainError(not_stochastic).
class StochasticMatrix {
 public:
  static constexpr double kClampTol = 1e-14;
  static constexpr double kSumTol = 1e-12;

  StochasticMatrix(Matrix entries, StochasticKind kind);

  const Matrix& entries() const noexcept { return m_; }
  StochasticKind kind() const noexcept { return kind_; }
  std::size_t rows() const noexcept { return m_.rows(); }
  std::size_t cols() const noexcept { return m_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  bool is_row_stochastic(double tol = kSumTol) const;
  bool is_column_stochastic(double tol = kSumTol) const;

 private:
  Matrix m_;
  StochasticKind kind_;
};

/// Points paired with nonnegative weights of the same length.
class WeightedVector {
 public:
  /// Throws LengthMismatch or InvalidArgument (negative/non-finite entries).
  WeightedVector(std::vector<double> points, std::vector<double> weights);

  /// Unit weights.
  static WeightedVector uniform(std::vector<double> points, double weight = 1.0);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Sum of weights (A_m / B_m).
  double total_weight() const;
  /// Sum of weight * point.
  double weighted_sum() const;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

enum class Relation { holds, fails };

struct MajorizationCert {
  Relation relation = Relation::fails;
  /// 1-based prefix length of the first violated partial sum; m when only the
  /// totals disagree.
  std::optional<std::size_t> witness_k;
  /// Doubly stochastic D with y = x D^T, when one was constructed.
  std::optional<StochasticMatrix> matrix;

  bool holds() const noexcept { return relation == Relation::holds; }
};

struct WeightedCheck {
  bool passed = false;
  /// ||a - bA||_inf
  double weight_residual = 0.0;
  /// ||y - xA^T||_inf
  double point_residual = 0.0;
};

inline constexpr double kMajorizationTol = 1e-12;

/// y ≺ x: decreasing rearrangements satisfy sum_{i<=k} y_(i) <= sum_{i<=k}
/// x_(i) + tol for every k < m, and the totals agree to tol.
MajorizationCert majorizes(std::span<const double> x, std::span<const double> y,
                           double tol = kMajorizationTol);

/// Doubly stochastic D with y = x D^T, built as a product of at most m-1
/// T-transforms. Throws NotMajorized unless y ≺ x.
StochasticMatrix construct_doubly_stochastic(std::span<const double> x,
                                             std::span<const double> y,
                                             double tol = kMajorizationTol);

/// majorizes() plus, when the relation holds, the constructed matrix.
MajorizationCert certify_majorization(std::span<const double> x,
                                      std::span<const double> y,
                                      double tol = kMajorizationTol);

/// Checks a = bA and y = xA^T. Throws DimensionMismatch when the shapes do
/// not line up (A must be m x l for |y| = m, |x| = l).
WeightedCheck verify_weighted_majorization(const WeightedVector& x,
                                           const WeightedVector& y,
                                           const StochasticMatrix& A,
                                           double tol);

/// Returns (y, a) with a = bA and y = xA^T, packaged as the pair ((x, a),
/// (y, b)).
std::pair<WeightedVector, WeightedVector> generate_weighted_pair(
    std::span<const double> x, std::span<const double> b,
    const StochasticMatrix& A);

/// y = x A^T
std::vector<double> apply_transpose(const StochasticMatrix& A,
                                    std::span<const double> x);

}  // namespace sherman
