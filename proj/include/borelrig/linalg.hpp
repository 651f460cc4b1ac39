#pragma once

#include <complex>

#include <Eigen/Dense>

namespace borelrig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankTolerance = 1e-9;

/// Orthonormal basis of the column span of `cols` (thin left singular
/// vectors above the relative rank tolerance).
Matrix orthonormal_span(const Matrix& cols, double rel_tol = kRankTolerance);

/// Numerical rank with a relative singular-value threshold.
int numerical_rank(const Matrix& cols, double rel_tol = kRankTolerance);

/// Ratio smallest/largest singular value; 0 for an empty or zero matrix.
double inverse_condition(const Matrix& m);

/// Sine of the largest principal angle between two subspaces given by
/// orthonormal bases of equal dimension.
double subspace_distance(const Matrix& q_a, const Matrix& q_b);

/// Incremental orthonormal basis with rank-revealing insertion
/// (classical Gram-Schmidt with one reorthogonalization pass).
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index ambient);

  /// Appends the component of v orthogonal to the current span when its norm
  /// exceeds rel_tol * |v|. Returns the relative residual norm.
  double add(const Vector& v, double rel_tol = kRankTolerance);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index ambient() const { return basis_.rows(); }
  auto basis() const { return basis_.leftCols(dim_); }

  /// Component of v orthogonal to the current span.
  Vector residual(const Vector& v) const;

 private:
  Matrix basis_;
  Eigen::Index dim_ = 0;
};

}  // namespace borelrig
