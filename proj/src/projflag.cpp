#include "borelrig/projflag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "borelrig/errors.hpp"

namespace borelrig {

// ---- ProjPoint ----

ProjPoint::ProjPoint(Complex x, Complex y) : x_(x), y_(y) {
  if (!std::isfinite(std::abs(x)) || !std::isfinite(std::abs(y))) {
    throw DomainError("ProjPoint: non-finite coordinates");
  }
  if (x == Complex(0.0) && y == Complex(0.0)) {
    throw DomainError("ProjPoint: both homogeneous coordinates are zero");
  }
}

ProjPoint ProjPoint::normalized() const {
  const double scale = std::max(std::abs(x_), std::abs(y_));
  return ProjPoint(x_ / scale, y_ / scale);
}

bool ProjPoint::is_infinity(double tol) const {
  const auto p = normalized();
  return std::abs(p.y()) <= tol;
}

std::complex<double> bracket(const ProjPoint& p, const ProjPoint& q) {
  return p.x() * q.y() - p.y() * q.x();
}

double chordal_distance(const ProjPoint& p, const ProjPoint& q) {
  const double np = std::hypot(std::abs(p.x()), std::abs(p.y()));
  const double nq = std::hypot(std::abs(q.x()), std::abs(q.y()));
  return std::min(1.0, std::abs(bracket(p, q)) / (np * nq));
}

bool same_point(const ProjPoint& p, const ProjPoint& q, double tol) {
  return chordal_distance(p, q) <= tol;
}

// ---- GroupElement ----

GroupElement::GroupElement(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DomainError("GroupElement: matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) throw DomainError("GroupElement: non-finite entries");
  determinant_ = entries_.determinant();
  const double scale = entries_.cwiseAbs().maxCoeff();
  if (scale == 0.0 || inverse_condition(entries_) < 1e-13) {
    throw DomainError("GroupElement: singular matrix");
  }
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (dim() != other.dim()) throw InputError("GroupElement: dimension mismatch in product");
  return GroupElement(entries_ * other.entries_);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(entries_.partialPivLu().inverse());
}

GroupElement GroupElement::normalized() const {
  const Complex root = std::pow(determinant_, 1.0 / static_cast<double>(dim()));
  return GroupElement(entries_ / root);
}

ProjPoint GroupElement::apply(const ProjPoint& p) const {
  if (dim() != 2) throw InputError("GroupElement::apply: Mobius action needs a 2x2 matrix");
  const auto q = p.normalized();
  return ProjPoint(entries_(0, 0) * q.x() + entries_(0, 1) * q.y(),
                   entries_(1, 0) * q.x() + entries_(1, 1) * q.y());
}

namespace {

double one_sided_distance(const Matrix& a, const Matrix& b) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  const Complex pivot_b = b(r, c);
  if (std::abs(pivot_b) <= 1e-300) return std::numeric_limits<double>::infinity();
  return (a / a(r, c) - b / pivot_b).cwiseAbs().maxCoeff();
}

}  // namespace

double projective_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("projective_distance: shape mismatch");
  }
  return std::max(one_sided_distance(a, b), one_sided_distance(b, a));
}

double projective_distance(const GroupElement& a, const GroupElement& b) {
  return projective_distance(a.matrix(), b.matrix());
}

bool projectively_equal(const GroupElement& a, const GroupElement& b, double tol) {
  return projective_distance(a, b) <= tol;
}

// ---- CompleteFlag ----

CompleteFlag::CompleteFlag(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() == 0) {
    throw InputError("CompleteFlag: basis must be a non-empty square matrix");
  }
  if (!basis_.allFinite()) throw InputError("CompleteFlag: non-finite basis entries");
  if (inverse_condition(basis_) <= kRankTolerance) {
    throw InputError("CompleteFlag: basis is rank deficient");
  }
  // Householder QR keeps the leading-column spans.
  Eigen::HouseholderQR<Matrix> qr(basis_);
  orthonormal_ = qr.householderQ() * Matrix::Identity(basis_.rows(), basis_.cols());
}

CompleteFlag operator*(const GroupElement& g, const CompleteFlag& f) {
  if (g.dim() != f.dim()) throw InputError("flag action: dimension mismatch");
  return CompleteFlag(g.matrix() * f.basis());
}

double flag_distance(const CompleteFlag& a, const CompleteFlag& b) {
  if (a.dim() != b.dim()) throw InputError("flag_distance: dimension mismatch");
  double worst = 0.0;
  for (Eigen::Index i = 1; i < a.dim(); ++i) {
    worst = std::max(worst, subspace_distance(a.subspace(i), b.subspace(i)));
  }
  return worst;
}

bool same_flag(const CompleteFlag& a, const CompleteFlag& b, double rel_tol) {
  if (a.dim() != b.dim()) return false;
  for (Eigen::Index i = 1; i < a.dim(); ++i) {
    Matrix both(a.dim(), 2 * i);
    both << a.subspace(i), b.subspace(i);
    if (numerical_rank(both, rel_tol) != i) return false;
  }
  return true;
}

// ---- Mobius normalization ----

GroupElement mobius_normalize(const ProjPoint& xi0, const ProjPoint& xi1, const ProjPoint& xi3) {
  const ProjPoint p0 = xi0.normalized();
  const ProjPoint p1 = xi1.normalized();
  const ProjPoint p3 = xi3.normalized();
  constexpr double kCoincident = 1e-14;
  if (std::abs(bracket(p0, p1)) <= kCoincident || std::abs(bracket(p0, p3)) <= kCoincident ||
      std::abs(bracket(p1, p3)) <= kCoincident) {
    throw DegenerateConfiguration("mobius_normalize: coincident points");
  }
  // z -> [z, xi0][xi1, xi3] / ([z, xi3][xi1, xi0]); [z, p] = z.x p.y - z.y p.x.
  const Complex top = bracket(p1, p3);
  const Complex bottom = bracket(p1, p0);
  Matrix g(2, 2);
  g << top * p0.y(), -top * p0.x(), bottom * p3.y(), -bottom * p3.x();
  return GroupElement(g).normalized();
}

// ---- Veronese and symmetric powers ----

namespace {

// Coefficients of a binary form in the basis s^{d-k} t^k, k = 0..d.
using Form = std::vector<Complex>;

Form multiply(const Form& p, const Form& q) {
  Form r(p.size() + q.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

Form power_product(const Form& a, int ea, const Form& b, int eb) {
  Form r{Complex(1.0)};
  for (int i = 0; i < ea; ++i) r = multiply(r, a);
  for (int i = 0; i < eb; ++i) r = multiply(r, b);
  return r;
}

}  // namespace

Vector veronese_point(const ProjPoint& xi, int n) {
  if (n < 1) throw InputError("veronese: n must be positive");
  const auto p = xi.normalized();
  const Form line{p.x(), p.y()};
  const Form coeffs = power_product(line, n - 1, line, 0);
  return Eigen::Map<const Vector>(coeffs.data(), n);
}

CompleteFlag veronese(const ProjPoint& xi, int n) {
  if (n < 1) throw InputError("veronese: n must be positive");
  const auto p = xi.normalized();
  const Form line{p.x(), p.y()};
  const Form transverse{-std::conj(p.y()), std::conj(p.x())};
  Matrix basis(n, n);
  for (int j = 1; j <= n; ++j) {
    const Form v = power_product(line, n - j, transverse, j - 1);
    for (int k = 0; k < n; ++k) basis(k, j - 1) = v[k];
  }
  return CompleteFlag(std::move(basis));
}

GroupElement sym_power(const GroupElement& g, int n) {
  if (n < 1) throw InputError("sym_power: n must be positive");
  if (g.dim() != 2) throw InputError("sym_power: expects a 2x2 matrix");
  const Matrix& m = g.matrix();
  // Substitution (s, t) -> (a s + c t, b s + d t) on forms of degree n - 1.
  const Form first{m(0, 0), m(1, 0)};
  const Form second{m(0, 1), m(1, 1)};
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    const Form column = power_product(first, n - 1 - k, second, k);
    for (int i = 0; i < n; ++i) out(i, k) = column[i];
  }
  return GroupElement(std::move(out));
}

}  // namespace borelrig
