#pragma once

#include <complex>
#include <cstdint>

#include "borelrig/proj_point.hpp"

namespace borelrig {

/// Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1 - z) log|z|.
///
/// Extended by 0 at z = 0 and z = 1. Throws DomainError for non-finite input.
/// The argument is first moved by one of the six anharmonic symmetries into
/// {|w| <= 1, Re w <= 1/2}; there Li2 is summed either as its Taylor series
/// (|w| < 1/2) or as the Bernoulli series in -log(1 - w).
double bloch_wigner(std::complex<double> z);

/// Volume of the positively oriented regular ideal tetrahedron, D(e^{i pi/3}).
double nu3();

/// Signed volume of the ideal tetrahedron with vertices xi0..xi3.
///
/// Equals D(lambda) where lambda is the image of xi2 under the Mobius map
/// taking (xi0, xi1, xi3) to (0, 1, infinity). Zero when two vertices coincide.
double ideal_volume(const ProjPoint& xi0, const ProjPoint& xi1, const ProjPoint& xi2,
                    const ProjPoint& xi3);

/// Cross ratio [xi2, xi0][xi1, xi3] / ([xi2, xi3][xi1, xi0]).
std::complex<double> cross_ratio(const ProjPoint& xi0, const ProjPoint& xi1,
                                 const ProjPoint& xi2, const ProjPoint& xi3);

/// Binomial coefficient C(n, k), zero outside 0 <= k <= n.
std::int64_t binomial(int n, int k);

}  // namespace borelrig
