#pragma once

#include <span>
#include <vector>

#include "borelrig/linalg.hpp"
#include "borelrig/proj_point.hpp"

namespace borelrig {

/// Tolerance for projective equality of matrices after max-entry scaling.
inline constexpr double kProjectiveTolerance = 1e-8;

/// Invertible n x n complex matrix, read as an element of PGL(n, C) = PSL(n, C).
class GroupElement {
 public:
  /// Throws DomainError when the matrix is not square, not finite or singular.
  explicit GroupElement(Matrix entries);

  static GroupElement identity(Eigen::Index n) { return GroupElement(Matrix::Identity(n, n)); }

  const Matrix& matrix() const { return entries_; }
  Complex determinant() const { return determinant_; }
  Eigen::Index dim() const { return entries_.rows(); }

  GroupElement operator*(const GroupElement& other) const;
  GroupElement inverse() const;
  GroupElement conjugate() const { return GroupElement(entries_.conjugate()); }

  /// Representative with determinant 1 (defined up to an n-th root of unity).
  GroupElement normalized() const;

  /// Mobius action; requires dim() == 2.
  ProjPoint apply(const ProjPoint& p) const;

 private:
  Matrix entries_;
  Complex determinant_;
};

/// Projective distance: both matrices are divided by the entry of `a` of
/// largest modulus (and `b` by its entry at the same position), then the
/// largest entrywise difference is taken. Symmetrized over (a, b).
double projective_distance(const Matrix& a, const Matrix& b);
double projective_distance(const GroupElement& a, const GroupElement& b);
bool projectively_equal(const GroupElement& a, const GroupElement& b,
                        double tol = kProjectiveTolerance);

/// Complete flag F^1 ⊂ ... ⊂ F^n of C^n, stored as an adapted basis: F^i is
/// the span of the first i columns. The basis doubles as the decoration.
class CompleteFlag {
 public:
  /// Throws InputError when the basis is not square or is rank deficient
  /// (inverse condition number below kRankTolerance).
  explicit CompleteFlag(Matrix basis);

  Eigen::Index dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }

  /// Orthonormal basis adapted to the same flag (first i columns span F^i).
  const Matrix& orthonormal() const { return orthonormal_; }

  /// Orthonormal basis of F^i.
  Matrix subspace(Eigen::Index i) const { return orthonormal_.leftCols(i); }

  CompleteFlag conjugate() const { return CompleteFlag(basis_.conjugate()); }

  /// Standard coordinate flag <e1> ⊂ <e1, e2> ⊂ ...
  static CompleteFlag standard(Eigen::Index n) { return CompleteFlag(Matrix::Identity(n, n)); }

 private:
  Matrix basis_;
  Matrix orthonormal_;
};

CompleteFlag operator*(const GroupElement& g, const CompleteFlag& f);

/// Complete flag together with a decoration v^1..v^n, F^i = C v^i + F^{i-1}.
/// The decoration vectors are the columns of the basis.
class AffineFlag {
 public:
  explicit AffineFlag(CompleteFlag flag) : flag_(std::move(flag)) {}
  explicit AffineFlag(Matrix decoration) : flag_(std::move(decoration)) {}

  const CompleteFlag& flag() const { return flag_; }
  Eigen::Index dim() const { return flag_.dim(); }
  /// v^{i+1}, zero-based column i.
  auto decoration(Eigen::Index i) const { return flag_.basis().col(i); }

 private:
  CompleteFlag flag_;
};

/// Largest subspace distance over levels 1..n-1.
double flag_distance(const CompleteFlag& a, const CompleteFlag& b);

/// Whether every level of `a` equals the corresponding level of `b` within
/// the rank tolerance (rank of concatenated bases equals the dimension).
bool same_flag(const CompleteFlag& a, const CompleteFlag& b, double rel_tol = 1e-7);

/// Unique g in PSL(2, C) with g xi0 = 0, g xi1 = 1, g xi3 = infinity.
/// Throws DegenerateConfiguration when two inputs coincide.
GroupElement mobius_normalize(const ProjPoint& xi0, const ProjPoint& xi1, const ProjPoint& xi3);

/// Osculating flag of the rational normal curve at xi = [x : y].
///
/// Level j is spanned by the shifted binomial vectors of degree n - j, i.e.
/// in the binary-form picture by the multiples of l^{n-j} with
/// l = x s + y t. The j-th adapted basis vector is l^{n-j} m^{j-1} with
/// m = -conj(y) s + conj(x) t, which stays well conditioned at every xi.
CompleteFlag veronese(const ProjPoint& xi, int n);

/// Line V_n^1(xi) = (x^{n-1}, C(n-1,1) x^{n-2} y, ..., y^{n-1}).
Vector veronese_point(const ProjPoint& xi, int n);

/// The irreducible representation pi_n: PSL(2, C) -> PSL(n, C) on binary
/// forms of degree n - 1; satisfies pi_n(g) veronese(xi) = veronese(g xi).
GroupElement sym_power(const GroupElement& g, int n);

}  // namespace borelrig
