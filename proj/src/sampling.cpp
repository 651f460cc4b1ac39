#include "borelrig/sampling.hpp"

#include <cmath>

namespace borelrig {

Rng derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::complex<double> random_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ProjPoint random_point(Rng& rng) {
  for (;;) {
    const auto x = random_complex(rng);
    const auto y = random_complex(rng);
    const double norm = std::hypot(std::abs(x), std::abs(y));
    if (norm > 1e-12) return ProjPoint(x / norm, y / norm);
  }
}

GroupElement random_psl2(Rng& rng) {
  for (;;) {
    Matrix m(2, 2);
    for (Eigen::Index i = 0; i < 4; ++i) m(i) = random_complex(rng);
    const auto det = m.determinant();
    if (std::abs(det) < 1e-8) continue;
    return GroupElement(m / std::sqrt(det));
  }
}

GroupElement random_gl(Rng& rng, int n, double max_condition) {
  for (;;) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = random_complex(rng);
    if (inverse_condition(m) * max_condition >= 1.0) return GroupElement(std::move(m));
  }
}

CompleteFlag random_flag(Rng& rng, int n) {
  for (;;) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = random_complex(rng);
    if (inverse_condition(m) > 1e-6) return CompleteFlag(std::move(m));
  }
}

}  // namespace borelrig
