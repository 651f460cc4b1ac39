#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>

#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"
#include "borelrig/invariant.hpp"
#include "fixtures.hpp"
#include "oracle/dilog_oracle.hpp"

using namespace borelrig;
using namespace borelrig::testing;

namespace {

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("regular tetrahedron has volume nu3") {
  const auto t = regular_tetrahedron();
  CHECK(std::abs(ideal_volume(t[0], t[1], t[2], t[3]) - nu3()) < 1e-15);
  CHECK(std::abs(nu3() - static_cast<double>(oracle::bloch_wigner_angles({0.5L, std::sqrt(3.0L) / 2}))) < 1e-14);
}

TEST_CASE("integration over a finite space is the weighted sum") {
  const auto s = figure_eight({1, 2, 3});
  double expected = 0.0;
  for (std::size_t x = 0; x < s.space->size(); ++x) expected += s.space->weights()[x] * (x * x + 1.0);
  CHECK(std::abs(integrate_over_X(*s.space, [](std::size_t x) { return x * x + 1.0; }) - expected) <
        1e-14);
  CHECK(std::abs(integrate_over_X(*s.space, [](std::size_t) { return 2.5; }) - 2.5) < 1e-14);
}

TEST_CASE("pullback cochain of the Veronese map at the regular tetrahedron") {
  const auto s = figure_eight();
  for (int n = 2; n <= 5; ++n) {
    const auto phi = BoundaryMap::veronese(n);
    const PullbackCochain c(phi);
    CHECK(c.x_independent());
    const double v = integrate_over_X(c, *s.space, regular_tetrahedron());
    CHECK(std::abs(v - binomial(n + 1, 3) * nu3()) < 1e-9);
  }
}

TEST_CASE("maximal cocycle attains the bound") {
  const auto s = figure_eight();
  for (int n = 2; n <= 4; ++n) {
    EstimatorOptions opt;
    opt.samples = 100;
    const auto r = empirical_borel_ratio(maximal_cocycle(s, n), BoundaryMap::veronese(n), opt);
    CHECK(r.n == n);
    CHECK(r.bound == binomial(n + 1, 3));
    CHECK(std::abs(r.lambda - r.bound) < 1e-7);
    CHECK(r.sample_max - r.sample_min < 1e-7);
    CHECK(r.maximal);
    CHECK_FALSE(r.heuristic);
    CHECK(r.integrand.size() == 100);
    CHECK(r.equivariance_residual < 1e-8);
  }
}

TEST_CASE("twisting leaves the estimate unchanged") {
  const auto s = figure_eight({2, 3});
  Rng rng(11);
  EstimatorOptions opt;
  opt.samples = 50;
  for (int n = 2; n <= 4; ++n) {
    const auto sigma = maximal_cocycle(s, n);
    const auto phi = BoundaryMap::veronese(n);
    const auto base = empirical_borel_ratio(sigma, phi, opt);
    for (int t = 0; t < 3; ++t) {
      const auto f = TwistMap::random(rng, n, s.space->size());
      const auto phi_f = phi.twisted_by(f);
      const auto r = empirical_borel_ratio(twist(sigma, f), phi_f, opt);
      CHECK(std::abs(r.lambda - base.lambda) < 1e-9);
      const PullbackCochain c(phi), cf(phi_f);
      CHECK_FALSE(cf.x_independent());
      for (int k = 0; k < 5; ++k) {
        const std::array<ProjPoint, 4> xi = {random_point(rng), random_point(rng),
                                             random_point(rng), random_point(rng)};
        for (std::size_t x = 0; x < s.space->size(); ++x) CHECK(std::abs(cf(xi, x) - c(xi, x)) < 1e-9);
      }
    }
  }
}

TEST_CASE("representation estimator matches the cocycle estimator bitwise") {
  const auto s = figure_eight();
  for (int n = 2; n <= 4; ++n) {
    EstimatorOptions opt;
    opt.samples = 40;
    opt.seed = 7;
    const auto a = empirical_borel_ratio(maximal_cocycle(s, n), BoundaryMap::veronese(n), opt);
    const auto b = representation_borel_ratio(n, opt);
    CHECK(bitwise_equal(a.lambda, b.lambda));
  }
}

TEST_CASE("estimator is reproducible for a fixed seed and worker count") {
  const auto s = figure_eight({4});
  Rng rng(12);
  const auto f = TwistMap::random(rng, 3, s.space->size());
  const auto sigma = twist(maximal_cocycle(s, 3), f);
  const auto phi = BoundaryMap::veronese(3).twisted_by(f);
  EstimatorOptions opt;
  opt.samples = 64;
  opt.workers = 4;
  const auto a = empirical_borel_ratio(sigma, phi, opt);
  const auto b = empirical_borel_ratio(sigma, phi, opt);
  CHECK(bitwise_equal(a.lambda, b.lambda));
  CHECK(a.integrand == b.integrand);
  opt.workers = 1;
  const auto c = empirical_borel_ratio(sigma, phi, opt);
  CHECK(std::abs(c.lambda - a.lambda) < 1e-7);
}

TEST_CASE("estimator refusals") {
  const auto s = figure_eight();
  Rng rng(13);
  const auto sigma = maximal_cocycle(s, 3);
  EstimatorOptions opt;
  opt.samples = 10;
  CHECK_THROWS_AS(empirical_borel_ratio(sigma, BoundaryMap::veronese(3).with_corrupted_point(1, random_gl(rng, 3)), opt),
                  Refusal);
  CHECK_THROWS_AS(empirical_borel_ratio(sigma, BoundaryMap::veronese(3).conjugate(), opt), Refusal);
  CHECK_THROWS_AS(empirical_borel_ratio(sigma, BoundaryMap::veronese(4), opt), InputError);
  const auto xi = random_point(rng);
  const auto table = BoundaryMap::table(3, {{0, xi, veronese(xi, 3)}});
  CHECK_THROWS_AS(empirical_borel_ratio(sigma, table, opt), InputError);
}

TEST_CASE("conjugate cocycle gives the negated estimate") {
  const auto s = figure_eight();
  EstimatorOptions opt;
  opt.samples = 30;
  const auto r = empirical_borel_ratio(maximal_cocycle(s, 3).conjugate(), BoundaryMap::veronese(3).conjugate(), opt);
  CHECK(std::abs(r.lambda + 4.0) < 1e-7);
  CHECK_FALSE(r.maximal);
}

TEST_CASE("partitions") {
  CHECK_THROWS_AS(Partition({}), InputError);
  CHECK_THROWS_AS(Partition({2, 0}), InputError);
  const Partition p({2, 1});
  CHECK(p.total() == 3);
  CHECK(p.blocks() == 2);
  CHECK(parabolic_bound(p) == 1.0);
  CHECK(parabolic_bound(Partition({3, 2})) == 5.0);
  CHECK(parabolic_bound(Partition({1, 1, 1})) == 0.0);
}

TEST_CASE("block diagonal helpers") {
  Rng rng(14);
  const auto a = random_gl(rng, 2);
  const auto b = random_gl(rng, 1);
  const auto m = block_diagonal({a, b});
  CHECK(m.dim() == 3);
  CHECK(m.matrix()(2, 2) == b.matrix()(0, 0));
  CHECK(m.matrix()(0, 2) == Complex(0.0));
  CHECK(m.matrix()(2, 1) == Complex(0.0));
  const auto xi = random_point(rng);
  const auto f = block_flag({veronese(xi, 2), veronese(xi, 1)});
  CHECK(f.dim() == 3);
  CHECK(subspace_distance(f.subspace(2), Matrix::Identity(3, 2)) < 1e-12);
}

TEST_CASE("block diagonal cocycles stay within the parabolic bound") {
  const auto s = figure_eight();
  EstimatorOptions opt;
  opt.samples = 30;
  for (const auto& parts : std::vector<std::vector<int>>{{2, 1}, {1, 2}, {1, 1, 1}, {2, 2}, {3, 1}}) {
    const Partition p(parts);
    const auto sigma = block_diagonal_cocycle(s.presentation, s.space, p);
    const auto phi = block_boundary(p);
    CHECK(check_equivariance(phi, sigma, 10, 1) < 1e-8);
    const auto r = empirical_borel_ratio(sigma, phi, opt);
    CHECK_FALSE(r.maximal);
    CHECK(std::abs(r.lambda) <= parabolic_bound(p) + 1e-6);
  }
  const Partition p({2, 1});
  const auto r = empirical_borel_ratio(block_diagonal_cocycle(s.presentation, s.space, p), block_boundary(p), opt);
  CHECK(std::abs(r.lambda - 1.0) < 1e-7);
}
