#include "borelrig/borel.hpp"

#include <algorithm>
#include <cmath>

#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"
#include "borelrig/parallel.hpp"

namespace borelrig {

namespace {

void check_dimensions(const Quadruple<AffineFlag>& flags) {
  for (const auto& f : flags) {
    if (f.dim() != flags[0].dim()) throw InputError("Borel cocycle: flags live in different C^n");
  }
}

SpanBuilder lower_span(const Quadruple<AffineFlag>& flags, const MultiIndex& j) {
  const Eigen::Index n = flags[0].dim();
  SpanBuilder span(n);
  for (int i = 0; i < 4; ++i) {
    const Matrix& q = flags[i].flag().orthonormal();
    for (int k = 0; k < j[i]; ++k) span.add(q.col(k));
  }
  return span;
}

StratClass quotient(const Quadruple<AffineFlag>& flags, const MultiIndex& j) {
  StratClass out;
  SpanBuilder span = lower_span(flags, j);
  const Eigen::Index lower = span.dim();
  for (int i = 0; i < 4; ++i) span.add(flags[i].flag().orthonormal().col(j[i]));
  out.ambient_dim = static_cast<int>(span.dim() - lower);
  if (out.ambient_dim != 2) return out;

  const Matrix complement = span.basis().middleCols(lower, 2);
  std::array<std::optional<ProjPoint>, 4> pts;
  for (int i = 0; i < 4; ++i) {
    const Vector v = flags[i].decoration(j[i]);
    const Vector c = complement.adjoint() * v;
    const double ratio = c.norm() / v.norm();
    out.min_projection = std::min(out.min_projection, ratio);
    if (ratio < kZeroProjection) return out;
    pts[i] = ProjPoint(c(0), c(1));
  }
  out.points = std::array<ProjPoint, 4>{*pts[0], *pts[1], *pts[2], *pts[3]};
  return out;
}

double volume_of(const StratClass& q) {
  if (q.ambient_dim != 2 || !q.points) return 0.0;
  const auto& p = *q.points;
  return ideal_volume(p[0], p[1], p[2], p[3]);
}

// dim <F_0^a, F_1^b, F_2^c, F_3^d> for a, b, c, d in 0..n, built by nested
// rank-revealing insertions.
class DimensionTable {
 public:
  explicit DimensionTable(const Quadruple<AffineFlag>& flags)
      : side_(static_cast<int>(flags[0].dim()) + 1), dims_(side_ * side_ * side_ * side_, 0) {
    const Eigen::Index n = flags[0].dim();
    SpanBuilder s0(n);
    for (int a = 0; a < side_; ++a) {
      if (a > 0) s0.add(flags[0].flag().orthonormal().col(a - 1));
      SpanBuilder s1 = s0;
      for (int b = 0; b < side_; ++b) {
        if (b > 0) s1.add(flags[1].flag().orthonormal().col(b - 1));
        SpanBuilder s2 = s1;
        for (int c = 0; c < side_; ++c) {
          if (c > 0) s2.add(flags[2].flag().orthonormal().col(c - 1));
          SpanBuilder s3 = s2;
          for (int d = 0; d < side_; ++d) {
            if (d > 0) s3.add(flags[3].flag().orthonormal().col(d - 1));
            dims_[index(a, b, c, d)] = static_cast<int>(s3.dim());
          }
        }
      }
    }
  }

  int at(int a, int b, int c, int d) const { return dims_[index(a, b, c, d)]; }

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * side_ + b) * side_ + c) * side_ + d;
  }

  int side_;
  std::vector<int> dims_;
};

}  // namespace

StratClass strat_class(const Quadruple<AffineFlag>& flags, const MultiIndex& j) {
  check_dimensions(flags);
  const int n = static_cast<int>(flags[0].dim());
  for (int v : j) {
    if (v < 0 || v >= n) throw InputError("strat_class: multi-index out of range");
  }
  return quotient(flags, j);
}

double strat_value(const Quadruple<AffineFlag>& flags, const MultiIndex& j) {
  return volume_of(strat_class(flags, j));
}

BorelEvaluation borel_evaluate(const Quadruple<AffineFlag>& flags) {
  check_dimensions(flags);
  const int n = static_cast<int>(flags[0].dim());
  BorelEvaluation out;
  if (n < 2) return out;
  const DimensionTable table(flags);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          if (table.at(a + 1, b + 1, c + 1, d + 1) - table.at(a, b, c, d) != 2) continue;
          const StratClass q = quotient(flags, {a, b, c, d});
          if (q.ambient_dim != 2) continue;
          ++out.active_classes;
          out.min_projection = std::min(out.min_projection, q.min_projection);
          out.value += volume_of(q);
        }
      }
    }
  }
  return out;
}

double borel_value(const Quadruple<AffineFlag>& flags) { return borel_evaluate(flags).value; }

double borel_from_complete(const Quadruple<CompleteFlag>& flags) {
  return borel_value({AffineFlag(flags[0]), AffineFlag(flags[1]), AffineFlag(flags[2]),
                      AffineFlag(flags[3])});
}

std::vector<double> borel_values(std::span<const Quadruple<CompleteFlag>> batch,
                                 unsigned workers) {
  std::vector<double> out(batch.size(), 0.0);
  parallel_chunks(batch.size(), workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = borel_from_complete(batch[i]);
  });
  return out;
}

double borel_bound(int n) { return static_cast<double>(binomial(n + 1, 3)) * nu3(); }

int maximal_sign(double borel, int n, double tol) {
  if (tol <= 0.0) throw InputError("is_maximal: tolerance must be positive");
  const double bound = borel_bound(n);
  if (n < 2) return 0;
  if (std::abs(borel - bound) <= tol) return 1;
  if (std::abs(borel + bound) <= tol) return -1;
  return 0;
}

int is_maximal(const Quadruple<CompleteFlag>& flags, double tol) {
  return maximal_sign(borel_from_complete(flags), static_cast<int>(flags[0].dim()), tol);
}

}  // namespace borelrig
