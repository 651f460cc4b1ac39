#include "borelrig/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "borelrig/errors.hpp"

namespace borelrig {

namespace {

using Complex = std::complex<double>;

// B_{2k} / (2k+1)!, k = 1..18.
constexpr std::array<double, 18> kBernoulliOverFactorial = {
    2.77777777777777762e-02,  -2.77777777777777778e-04, 4.72411186696900978e-06,
    -9.18577307466196408e-08, 1.89788699889710005e-09,  -4.06476164514422560e-11,
    8.92169102045645230e-13,  -1.99392958607210744e-14, 4.51898002961991825e-16,
    -1.03565176121812472e-17, 2.39521862102618698e-19,  -5.58178587432500898e-21,
    1.30915075541832125e-22,  -3.08741980242674029e-24, 7.31597565270220293e-26,
    -1.74084565723400088e-27, 4.15763564461389988e-29,  -9.96214848828462168e-31};

Complex li2_taylor(Complex w) {
  Complex sum = 0.0;
  Complex power = w;
  for (int k = 1; k < 200; ++k) {
    const Complex term = power / static_cast<double>(k * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    power *= w;
  }
  return sum;
}

// Li2(w) = u - u^2/4 + sum_k B_{2k} u^{2k+1} / (2k+1)!,  u = -log(1 - w).
Complex li2_bernoulli(Complex w) {
  const Complex u = -std::log(1.0 - w);
  const Complex u2 = u * u;
  Complex sum = u - 0.25 * u2;
  Complex power = u;
  for (double c : kBernoulliOverFactorial) {
    power *= u2;
    const Complex term = c * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bloch_wigner_reduced(Complex w) {
  if (std::abs(w) == 0.0) return 0.0;
  const Complex li2 = std::abs(w) < 0.5 ? li2_taylor(w) : li2_bernoulli(w);
  return li2.imag() + std::arg(1.0 - w) * std::log(std::abs(w));
}

}  // namespace

double bloch_wigner(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("bloch_wigner: non-finite argument");
  }
  if (z == Complex(0.0) || z == Complex(1.0)) return 0.0;
  if (z.imag() == 0.0) return 0.0;

  // D(z) = D(1 - 1/z) = D(1/(1 - z)) = -D(1/z) = -D(1 - z) = -D(z/(z - 1)).
  const std::array<Complex, 6> images = {z,       1.0 - 1.0 / z, 1.0 / (1.0 - z),
                                         1.0 / z, 1.0 - z,       z / (z - 1.0)};
  constexpr std::array<double, 6> signs = {1, 1, 1, -1, -1, -1};
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Complex w = images[i];
    if (std::abs(w) <= 1.0 && w.real() <= 0.5) return signs[i] * bloch_wigner_reduced(w);
  }
  // Boundary rounding can leave every image marginally outside the region.
  double best = 1e300;
  std::size_t pick = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const double excess = std::max(std::abs(images[i]) - 1.0, images[i].real() - 0.5);
    if (excess < best) {
      best = excess;
      pick = i;
    }
  }
  return signs[pick] * bloch_wigner_reduced(images[pick]);
}

double nu3() {
  static const double value = bloch_wigner(std::polar(1.0, std::numbers::pi / 3.0));
  return value;
}

Complex cross_ratio(const ProjPoint& xi0, const ProjPoint& xi1, const ProjPoint& xi2,
                    const ProjPoint& xi3) {
  return bracket(xi2, xi0) * bracket(xi1, xi3) / (bracket(xi2, xi3) * bracket(xi1, xi0));
}

double ideal_volume(const ProjPoint& xi0, const ProjPoint& xi1, const ProjPoint& xi2,
                    const ProjPoint& xi3) {
  const ProjPoint p[4] = {xi0.normalized(), xi1.normalized(), xi2.normalized(),
                          xi3.normalized()};
  constexpr double kCoincident = 1e-14;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(bracket(p[i], p[j])) <= kCoincident) return 0.0;
    }
  }
  return bloch_wigner(cross_ratio(p[0], p[1], p[2], p[3]));
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace borelrig
