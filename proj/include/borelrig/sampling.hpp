#pragma once

#include <cstdint>
#include <random>

#include "borelrig/projflag.hpp"

namespace borelrig {

using Rng = std::mt19937_64;

/// Generator for stream `stream` derived from a master seed.
Rng derived_rng(std::uint64_t seed, std::uint64_t stream);

/// Fubini-Study uniform point: a uniform unit vector of C^2.
ProjPoint random_point(Rng& rng);

/// Haar-sampling surrogate on PSL(2, C): complex Gaussian entries,
/// rescaled to determinant 1.
GroupElement random_psl2(Rng& rng);

/// Complex Gaussian n x n matrix, resampled until its condition number is at
/// most `max_condition`.
GroupElement random_gl(Rng& rng, int n, double max_condition = 10.0);

/// Complete flag with a Gaussian adapted basis.
CompleteFlag random_flag(Rng& rng, int n);

/// Standard complex Gaussian scalar (E|z|^2 = 1).
std::complex<double> random_complex(Rng& rng);

}  // namespace borelrig
