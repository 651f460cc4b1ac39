#include "borelrig/linalg.hpp"

#include <algorithm>

namespace borelrig {

Matrix orthonormal_span(const Matrix& cols, double rel_tol) {
  if (cols.cols() == 0 || cols.rows() == 0) return Matrix(cols.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Matrix(cols.rows(), 0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

int numerical_rank(const Matrix& cols, double rel_tol) {
  if (cols.cols() == 0 || cols.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(cols);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return r;
}

double inverse_condition(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

double subspace_distance(const Matrix& q_a, const Matrix& q_b) {
  if (q_a.cols() == 0 && q_b.cols() == 0) return 0.0;
  Matrix diff = q_b - q_a * (q_a.adjoint() * q_b);
  Eigen::JacobiSVD<Matrix> svd(diff);
  return std::min(1.0, svd.singularValues()(0));
}

SpanBuilder::SpanBuilder(Eigen::Index ambient) : basis_(Matrix::Zero(ambient, ambient)) {}

Vector SpanBuilder::residual(const Vector& v) const {
  Vector w = v;
  if (dim_ == 0) return w;
  const auto q = basis();
  for (int pass = 0; pass < 2; ++pass) w -= q * (q.adjoint() * w);
  return w;
}

double SpanBuilder::add(const Vector& v, double rel_tol) {
  const double scale = v.norm();
  if (scale == 0.0) return 0.0;
  if (dim_ == basis_.rows()) return 0.0;
  Vector w = residual(v);
  const double rel = w.norm() / scale;
  if (rel > rel_tol) {
    basis_.col(dim_) = w / w.norm();
    ++dim_;
  }
  return rel;
}

}  // namespace borelrig
