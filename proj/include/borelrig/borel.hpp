#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "borelrig/projflag.hpp"

namespace borelrig {

/// J = (j0, j1, j2, j3), each in {0, ..., n-1}.
using MultiIndex = std::array<int, 4>;

template <typename Flag>
using Quadruple = std::array<Flag, 4>;

/// Threshold below which a projected decoration counts as zero, relative to
/// the norm of the decoration vector.
inline constexpr double kZeroProjection = 1e-9;

/// Strat class Q(F, J): the quotient W+/W- of
/// W+ = <F_i^{j_i+1}> by W- = <F_i^{j_i}> with the projected decorations.
struct StratClass {
  /// dim W+ - dim W-.
  int ambient_dim = 0;
  /// Projected decorations in an orthonormal basis of the complement of W- in
  /// W+; present only when ambient_dim == 2.
  std::optional<std::array<ProjPoint, 4>> points;
  /// Smallest relative norm of a projected decoration (1 when not computed).
  double min_projection = 1.0;
};

StratClass strat_class(const Quadruple<AffineFlag>& flags, const MultiIndex& j);

/// vol of the strat class: ideal_volume of the projected decorations when the
/// quotient is 2-dimensional and no decoration projects to zero, else 0.
double strat_value(const Quadruple<AffineFlag>& flags, const MultiIndex& j);

/// Diagnostics of a full Borel-cocycle evaluation.
struct BorelEvaluation {
  double value = 0.0;
  /// Number of multi-indices with a 2-dimensional quotient.
  int active_classes = 0;
  /// Among active classes, the smallest relative norm of a projected
  /// decoration. Small values flag ill-conditioned quotients.
  double min_projection = 1.0;
};

/// Sum of strat_value over all n^4 multi-indices, with a precomputed table of
/// span dimensions so classes with ambient_dim != 2 are rejected in O(1).
BorelEvaluation borel_evaluate(const Quadruple<AffineFlag>& flags);

double borel_value(const Quadruple<AffineFlag>& flags);

/// B_n on complete flags, using the stored bases as decorations.
double borel_from_complete(const Quadruple<CompleteFlag>& flags);

/// Batch evaluation on `workers` threads; output order matches input order.
std::vector<double> borel_values(std::span<const Quadruple<CompleteFlag>> batch,
                                 unsigned workers = 1);

/// C(n+1, 3) * nu3, the supremum of |B_n|.
double borel_bound(int n);

/// +1 / -1 when B_n is within tol of +/- borel_bound(n), else 0.
int is_maximal(const Quadruple<CompleteFlag>& flags, double tol);
int maximal_sign(double borel, int n, double tol);

}  // namespace borelrig
