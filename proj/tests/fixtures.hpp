#pragma once

#include <memory>
#include <vector>

#include "borelrig/cocycle.hpp"

namespace borelrig::testing {

struct Setup {
  std::shared_ptr<const GroupPresentation> presentation;
  std::shared_ptr<const FiniteGammaSpace> space;
};

/// Figure-eight group acting on a union of cyclic orbits with unequal masses.
inline Setup figure_eight(std::vector<std::size_t> orbits = {5}) {
  auto presentation = std::make_shared<const GroupPresentation>(GroupPresentation::figure_eight());
  std::vector<double> mass;
  double total = 0.0;
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    mass.push_back(static_cast<double>(k + 1));
    total += static_cast<double>(k + 1);
  }
  for (auto& m : mass) m /= total;
  auto space = std::make_shared<const FiniteGammaSpace>(
      FiniteGammaSpace::cyclic(orbits, mass, *presentation));
  return {presentation, space};
}

inline Cocycle maximal_cocycle(const Setup& s, int n) {
  return cocycle_from_representation(s.presentation, s.space,
                                     irreducible_representation(*s.presentation, n));
}

inline Word random_word(Rng& rng, std::size_t generators, std::size_t length) {
  std::uniform_int_distribution<std::size_t> pick(0, 2 * generators - 1);
  Word w;
  for (std::size_t i = 0; i < length; ++i) {
    const auto k = pick(rng);
    w.push_back({k % generators, k >= generators});
  }
  return w;
}

}  // namespace borelrig::testing
