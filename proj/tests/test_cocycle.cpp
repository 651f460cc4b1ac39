#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "borelrig/cocycle.hpp"
#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"
#include "fixtures.hpp"
#include "test_support.hpp"

using namespace borelrig;
using namespace borelrig::testing;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("figure-eight holonomy satisfies its relator") {
  const auto p = GroupPresentation::figure_eight();
  REQUIRE(p.size() == 2);
  REQUIRE(p.relators().size() == 1);
  CHECK(projective_distance(p.evaluate(p.relators()[0]), GroupElement::identity(2)) < 1e-12);
  CHECK(std::abs(figure_eight_volume() - 2.0 * bloch_wigner(omega6())) < 1e-15);
}

TEST_CASE("a presentation with a false relator is rejected by name") {
  const auto p = GroupPresentation::figure_eight();
  std::vector<GroupElement> gens = {p.generator(0), p.generator(1)};
  const auto msg = message_of([&] { GroupPresentation({"a", "b"}, gens, {"a b a^-1 b^-1"}); });
  CHECK(msg.find("a b a^-1 b^-1") != std::string::npos);
}

TEST_CASE("word parsing") {
  const auto p = GroupPresentation::figure_eight();
  const Word w = p.parse_word("a b^-1 a");
  REQUIRE(w.size() == 3);
  CHECK(w[1].generator == 1);
  CHECK(w[1].inverse);
  const Word compact = p.parse_word("aBa");
  CHECK(p.format_word(compact) == "a b^-1 a");
  CHECK(p.parse_word("").empty());
  CHECK_THROWS_AS(p.parse_word("a c"), InputError);
  CHECK_THROWS_AS(p.parse_word("c^-1"), InputError);
}

TEST_CASE("finite space validation") {
  const auto p = GroupPresentation::figure_eight();
  CHECK_NOTHROW(FiniteGammaSpace({0.5, 0.5}, {{1, 0}, {1, 0}}, p));
  CHECK_THROWS_AS(FiniteGammaSpace({0.5, 0.6}, {{1, 0}, {1, 0}}, p), InputError);
  CHECK_THROWS_AS(FiniteGammaSpace({0.5, 0.5}, {{0, 0}, {1, 0}}, p), InputError);
  CHECK_THROWS_AS(FiniteGammaSpace({0.25, 0.75}, {{1, 0}, {1, 0}}, p), InputError);
  // The relator has exponent sum +1 in both generators, so a and b must act
  // by opposite shifts.
  CHECK_NOTHROW(FiniteGammaSpace({1 / 3., 1 / 3., 1 / 3.}, {{1, 2, 0}, {2, 0, 1}}, p));
  const auto msg = message_of([&] { FiniteGammaSpace({1 / 3., 1 / 3., 1 / 3.}, {{1, 2, 0}, {1, 2, 0}}, p); });
  CHECK(msg.find("relator") != std::string::npos);
  CHECK_THROWS_AS(FiniteGammaSpace::cyclic({3}, {1.0}, p, {1, 1}), InputError);
  CHECK_NOTHROW(FiniteGammaSpace::cyclic({3}, {1.0}, p, {2, -2}));
  const auto auto_steps = FiniteGammaSpace::cyclic({4}, {1.0}, p);
  CHECK(auto_steps.apply(Letter{0, false}, 0) == 3);
  CHECK(auto_steps.apply(Letter{1, false}, 0) == 1);
}

TEST_CASE("relators act as the identity permutation") {
  const auto s = figure_eight({3, 5, 8});
  CHECK(s.space->size() == 16);
  for (const auto& r : s.presentation->relators()) {
    for (std::size_t x = 0; x < s.space->size(); ++x) CHECK(s.space->apply(r, x) == x);
  }
  double total = 0.0;
  for (double w : s.space->weights()) total += w;
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("evaluate_word basics") {
  const auto s = figure_eight();
  Rng rng(1);
  const auto sigma = twist(maximal_cocycle(s, 3), TwistMap::random(rng, 3, s.space->size()));
  for (std::size_t x = 0; x < s.space->size(); ++x) {
    CHECK(projective_distance(evaluate_word(sigma, {}, x), GroupElement::identity(3)) == 0.0);
    CHECK(projective_distance(evaluate_word(sigma, {{1, false}}, x), sigma.at(1, x)) == 0.0);
    CHECK(projective_distance(evaluate_word(sigma, s.presentation->relators()[0], x),
                              GroupElement::identity(3)) < 1e-8);
  }
  CHECK_THROWS_AS(evaluate_word(sigma, {{7, false}}, 0), InputError);
}

TEST_CASE("cocycle rule holds for products of random words") {
  const auto s = figure_eight({2, 3});
  Rng rng(2);
  const auto sigma = twist(maximal_cocycle(s, 4), TwistMap::random(rng, 4, s.space->size()));
  for (int t = 0; t < 100; ++t) {
    const Word u = random_word(rng, 2, 1 + t % 6);
    const Word v = random_word(rng, 2, 1 + t % 5);
    for (std::size_t x = 0; x < s.space->size(); ++x) {
      const auto lhs = evaluate_word(sigma, concatenate(u, v), x);
      const auto rhs = evaluate_word(sigma, u, s.space->apply(v, x)) * evaluate_word(sigma, v, x);
      CHECK(projective_distance(lhs, rhs) < 1e-8);
      const auto inv = evaluate_word(sigma, inverse_word(u), s.space->apply(u, x));
      CHECK(projective_distance(inv * evaluate_word(sigma, u, x), GroupElement::identity(4)) < 1e-8);
    }
  }
}

TEST_CASE("representation cocycles") {
  const auto s = figure_eight();
  for (int n = 1; n <= 5; ++n) CHECK_NOTHROW(maximal_cocycle(s, n));
  const std::vector<GroupElement> trivial(2, GroupElement::identity(3));
  const auto sigma = cocycle_from_representation(s.presentation, s.space, trivial);
  for (std::size_t x = 0; x < s.space->size(); ++x) {
    CHECK(projective_distance(sigma.at(0, x), GroupElement::identity(3)) == 0.0);
  }
  const auto rho = maximal_cocycle(s, 3);
  Rng rng(3);
  const Word w = random_word(rng, 2, 9);
  for (std::size_t x = 1; x < s.space->size(); ++x) {
    CHECK(projective_distance(evaluate_word(rho, w, x), evaluate_word(rho, w, 0)) < 1e-12);
  }
  auto bad = irreducible_representation(*s.presentation, 3);
  bad[1] = random_gl(rng, 3);
  const auto msg = message_of([&] { cocycle_from_representation(s.presentation, s.space, bad); });
  CHECK(msg.find("invalid representation") != std::string::npos);
}

TEST_CASE("a table violating the cocycle identity names the point") {
  const auto s = figure_eight();
  auto table = maximal_cocycle(s, 2).table();
  Rng rng(4);
  table[0][2] = random_gl(rng, 2);
  const auto msg = message_of([&] { Cocycle(s.presentation, s.space, table); });
  CHECK(msg.find("relator") != std::string::npos);
  CHECK(msg.find("point") != std::string::npos);
}

TEST_CASE("twisting") {
  const auto s = figure_eight();
  const auto sigma = maximal_cocycle(s, 3);
  const auto same = twist(sigma, TwistMap::identity(3, s.space->size()));
  Rng rng(5);
  const auto f = TwistMap::random(rng, 3, s.space->size());
  const auto twisted = twist(sigma, f);
  const auto back = twist(twisted, f.pointwise_inverse());
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t x = 0; x < s.space->size(); ++x) {
      CHECK(projective_distance(same.at(g, x), sigma.at(g, x)) < 1e-14);
      CHECK(projective_distance(back.at(g, x), sigma.at(g, x)) < 1e-9);
    }
  }
  for (int t = 0; t < 50; ++t) {
    const Word w = random_word(rng, 2, 1 + t % 7);
    for (std::size_t x = 0; x < s.space->size(); ++x) {
      const auto lhs = evaluate_word(twisted, w, x);
      const auto rhs = f.at(s.space->apply(w, x)).inverse() * evaluate_word(sigma, w, x) * f.at(x);
      CHECK(projective_distance(lhs, rhs) < 1e-8);
    }
  }
  CHECK_THROWS_AS(twist(sigma, TwistMap::identity(3, 2)), InputError);
}

TEST_CASE("equivariance residuals") {
  const auto s = figure_eight();
  Rng rng(6);
  for (int n = 2; n <= 4; ++n) {
    const auto sigma = maximal_cocycle(s, n);
    const auto phi = BoundaryMap::veronese(n);
    CHECK(check_equivariance(phi, sigma, 20, 1) < 1e-8);
    const auto f = TwistMap::random(rng, n, s.space->size());
    CHECK(check_equivariance(phi.twisted_by(f), twist(sigma, f), 20, 2) < 1e-8);
    CHECK(check_equivariance(phi.conjugate().twisted_by(f), twist(sigma, f), 20, 2) >
          0.1);
    const auto corrupted = phi.with_corrupted_point(3, random_gl(rng, n));
    CHECK(check_equivariance(corrupted, sigma, 20, 3) > 0.1);
  }
}

TEST_CASE("conjugate cocycle pairs with the conjugate boundary map") {
  const auto s = figure_eight();
  Rng rng(7);
  const auto f = TwistMap::random(rng, 3, s.space->size());
  const auto sigma = twist(maximal_cocycle(s, 3), f);
  const auto phi = BoundaryMap::veronese(3).twisted_by(f);
  CHECK(check_equivariance(phi.conjugate(), sigma.conjugate(), 20, 4) < 1e-8);
  // Twisting after conjugation commutes with conjugating after twisting.
  const auto f2 = TwistMap::random(rng, 3, s.space->size());
  CHECK(check_equivariance(phi.conjugate().twisted_by(f2), twist(sigma.conjugate(), f2), 20, 5) <
        1e-8);
}

TEST_CASE("tabulated boundary maps") {
  const auto s = figure_eight({1});
  const auto sigma = maximal_cocycle(s, 3);
  const auto& a = s.presentation->generator(0);
  Rng rng(8);
  std::vector<BoundaryMap::Sample> entries;
  for (int k = 0; k < 4; ++k) {
    const auto xi = random_point(rng);
    entries.push_back({0, xi, veronese(xi, 3)});
    entries.push_back({0, a.apply(xi), veronese(a.apply(xi), 3)});
  }
  const auto table = BoundaryMap::table(3, entries);
  CHECK(table.is_table());
  CHECK(check_equivariance(table, sigma, 1, 1) < 1e-8);
  CHECK_THROWS_AS(table(random_point(rng), 0), InputError);
  entries[1].flag = random_flag(rng, 3);
  CHECK(check_equivariance(BoundaryMap::table(3, entries), sigma, 1, 1) > 0.1);
}
