#include "borelrig/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "borelrig/borel.hpp"
#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"
#include "borelrig/invariant.hpp"
#include "borelrig/rigidity.hpp"

namespace borelrig {

namespace {

using Tuple = std::array<ProjPoint, 4>;

Tuple random_tuple(Rng& rng) {
  return {random_point(rng), random_point(rng), random_point(rng), random_point(rng)};
}

Quadruple<CompleteFlag> veronese_quad(const Tuple& xi, int n) {
  return {veronese(xi[0], n), veronese(xi[1], n), veronese(xi[2], n), veronese(xi[3], n)};
}

Quadruple<CompleteFlag> random_quad(Rng& rng, int n) {
  return {random_flag(rng, n), random_flag(rng, n), random_flag(rng, n), random_flag(rng, n)};
}

// Random invertible upper-triangular matrix: a change of decoration.
Matrix redecoration(Rng& rng, int n) {
  Matrix u = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) u(i, j) = random_complex(rng);
    u(i, i) = std::polar(1.0 + std::abs(u(i, i)), std::arg(u(i, i)));
  }
  return u;
}

SelftestRow row(std::string tag, std::string name, int n, std::size_t trials, double worst,
                double tol) {
  return {std::move(tag), std::move(name), n, trials, worst, tol, worst < tol};
}

struct Setup {
  std::shared_ptr<const GroupPresentation> presentation;
  std::shared_ptr<const FiniteGammaSpace> space;
};

Setup figure_eight_on(std::size_t points) {
  auto p = std::make_shared<const GroupPresentation>(GroupPresentation::figure_eight());
  auto s = std::make_shared<const FiniteGammaSpace>(FiniteGammaSpace::cyclic({points}, {1.0}, *p));
  return {p, s};
}

}  // namespace

std::vector<SelftestRow> run_selftest(const SelftestOptions& options) {
  if (options.n_min < 2 || options.n_max < options.n_min) {
    throw InputError("selftest: need 2 <= n_min <= n_max");
  }
  if (options.trials == 0) throw InputError("selftest: need at least one trial");
  std::vector<SelftestRow> rows;
  const std::size_t trials = options.trials;
  const std::size_t light = std::max<std::size_t>(1, trials / 10);

  for (int n = options.n_min; n <= options.n_max; ++n) {
    Rng rng = derived_rng(options.seed, static_cast<std::uint64_t>(n));
    const double c = binomial(n + 1, 3);

    std::vector<Tuple> tuples;
    std::vector<Quadruple<CompleteFlag>> quads;
    for (std::size_t k = 0; k < trials; ++k) {
      tuples.push_back(random_tuple(rng));
      quads.push_back(veronese_quad(tuples.back(), n));
    }
    const auto values = borel_values(quads, options.workers);
    double pullback = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
      const auto& t = tuples[k];
      pullback = std::max(pullback, std::abs(values[k] - c * ideal_volume(t[0], t[1], t[2], t[3])));
    }
    rows.push_back(row("AC2", "pullback identity", n, trials, pullback, 1e-6));

    double alternation = 0.0;
    double invariance = 0.0;
    double decoration = 0.0;
    for (std::size_t k = 0; k < light; ++k) {
      const auto q = random_quad(rng, n);
      const double b = borel_from_complete(q);
      std::array<int, 4> p = {0, 1, 2, 3};
      do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i) {
          for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
        }
        const double sign = inversions % 2 == 0 ? 1.0 : -1.0;
        const double permuted = borel_from_complete({q[p[0]], q[p[1]], q[p[2]], q[p[3]]});
        alternation = std::max(alternation, std::abs(permuted - sign * b));
      } while (std::next_permutation(p.begin(), p.end()));
      const GroupElement g = random_gl(rng, n);
      invariance = std::max(invariance,
                            std::abs(borel_from_complete({g * q[0], g * q[1], g * q[2], g * q[3]}) - b));
      Quadruple<CompleteFlag> redecorated = q;
      for (auto& f : redecorated) f = CompleteFlag(f.basis() * redecoration(rng, n));
      decoration = std::max(decoration, std::abs(borel_from_complete(redecorated) - b));
    }
    rows.push_back(row("AC3", "alternation", n, light, alternation, 1e-8));
    rows.push_back(row("AC3", "PSL invariance", n, light, invariance, 1e-7));
    rows.push_back(row("AC3", "decoration independence", n, light, decoration, 1e-8));

    std::vector<Quadruple<CompleteFlag>> generic;
    for (std::size_t k = 0; k < trials; ++k) generic.push_back(random_quad(rng, n));
    const auto generic_values = borel_values(generic, options.workers);
    double excess = -borel_bound(n);
    for (double v : generic_values) excess = std::max(excess, std::abs(v) - borel_bound(n));
    rows.push_back(row("AC3", "bound |B_n| <= C(n+1,3) nu3", n, trials, excess, 1e-6));

    const auto setup = figure_eight_on(5);
    const auto sigma = cocycle_from_representation(setup.presentation, setup.space,
                                                   irreducible_representation(*setup.presentation, n));
    EstimatorOptions est;
    est.samples = light;
    est.seed = options.seed;
    est.workers = options.workers;
    const auto report = empirical_borel_ratio(sigma, BoundaryMap::veronese(n), est);
    const double spread = report.sample_max - report.sample_min;
    rows.push_back(row("AC4", "maximal invariant lambda = C(n+1,3)", n, light,
                       std::max(std::abs(report.lambda - c), spread), 1e-7));

    const auto f = TwistMap::random(rng, n, setup.space->size());
    const auto twisted = twist(sigma, f);
    const auto phi = BoundaryMap::veronese(n);
    const auto phi_f = phi.twisted_by(f);
    const PullbackCochain base(phi);
    const PullbackCochain cochain(phi_f);
    double pointwise = 0.0;
    for (std::size_t k = 0; k < light; ++k) {
      const auto t = random_tuple(rng);
      for (std::size_t x = 0; x < setup.space->size(); ++x) {
        pointwise = std::max(pointwise, std::abs(cochain(t, x) - base(t, x)));
      }
    }
    const auto twisted_report = empirical_borel_ratio(twisted, phi_f, est);
    pointwise = std::max(pointwise, std::abs(twisted_report.lambda - report.lambda));
    rows.push_back(row("AC5", "twist invariance", n, light, pointwise, 1e-9));

    TrivializeOptions triv;
    triv.seed = options.seed;
    triv.workers = options.workers;
    double roundtrip = 0.0;
    try {
      roundtrip = trivialize(twisted, phi_f, triv).residual;
    } catch (const std::exception&) {
      roundtrip = std::numeric_limits<double>::infinity();
    }
    rows.push_back(row("AC6", "rigidity round trip", n, setup.space->size(), roundtrip, 1e-6));
  }
  return rows;
}

}  // namespace borelrig
