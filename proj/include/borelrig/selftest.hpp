#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace borelrig {

struct SelftestOptions {
  int n_min = 2;
  int n_max = 4;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct SelftestRow {
  std::string tag;
  std::string name;
  int n = 0;
  std::size_t trials = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Pullback identity (AC2), cocycle properties of B_n (AC3), the maximal
/// Borel invariant (AC4), twist invariance (AC5) and the rigidity round trip
/// (AC6), one row per check and n.
std::vector<SelftestRow> run_selftest(const SelftestOptions& options);

}  // namespace borelrig
