#pragma once

#include <complex>

namespace borelrig {

/// Point of P^1(C) in homogeneous coordinates [x : y]. The point at infinity
/// is [1 : 0]; the affine point z is [z : 1].
class ProjPoint {
 public:
  using Complex = std::complex<double>;

  /// Throws DomainError when both coordinates vanish or are non-finite.
  ProjPoint(Complex x, Complex y);

  static ProjPoint affine(Complex z) { return ProjPoint(z, 1.0); }
  static ProjPoint infinity() { return ProjPoint(1.0, 0.0); }

  Complex x() const { return x_; }
  Complex y() const { return y_; }

  /// Representative scaled so that max(|x|, |y|) = 1.
  ProjPoint normalized() const;

  ProjPoint conjugate() const { return ProjPoint(std::conj(x_), std::conj(y_)); }

  bool is_infinity(double tol = 1e-14) const;

  /// Affine coordinate x/y; only meaningful away from infinity.
  Complex affine_coordinate() const { return x_ / y_; }

 private:
  Complex x_;
  Complex y_;
};

/// Determinant [p, q] = p.x q.y - p.y q.x of the homogeneous coordinates.
std::complex<double> bracket(const ProjPoint& p, const ProjPoint& q);

/// Chordal (Fubini-Study sine) distance in [0, 1].
double chordal_distance(const ProjPoint& p, const ProjPoint& q);

/// Projective equality up to chordal tolerance.
bool same_point(const ProjPoint& p, const ProjPoint& q, double tol = 1e-12);

}  // namespace borelrig
