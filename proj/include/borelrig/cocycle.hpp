#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "borelrig/projflag.hpp"
#include "borelrig/sampling.hpp"

namespace borelrig {

struct Letter {
  std::size_t generator = 0;
  bool inverse = false;
};

/// Word g_1 g_2 ... g_k in generators and inverses; acts right to left.
using Word = std::vector<Letter>;

Word inverse_word(const Word& w);
Word concatenate(const Word& u, const Word& v);

/// Finitely presented subgroup of PSL(2, C): named generator matrices and
/// relators that must evaluate to the identity projectively.
class GroupPresentation {
 public:
  /// Relators are parsed with parse_word. Throws InputError naming the first
  /// relator that fails to evaluate to the identity within `tol`.
  GroupPresentation(std::vector<std::string> names, std::vector<GroupElement> generators,
                    const std::vector<std::string>& relators, double tol = 1e-9);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t index(const std::string& name) const;
  const GroupElement& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<Word>& relators() const { return relators_; }
  const std::vector<std::string>& relator_text() const { return relator_text_; }

  /// Whitespace-separated tokens `name` or `name^-1`. A token without
  /// whitespace that is not a generator name is read letter by letter, an
  /// uppercase letter meaning the inverse of its lowercase generator.
  Word parse_word(const std::string& text) const;
  std::string format_word(const Word& w) const;

  /// Matrix product of the word in the given generators.
  GroupElement evaluate(const Word& w) const;

  /// Figure-eight knot group with its discrete faithful holonomy:
  /// a = [[1, 1], [0, 1]], b = [[1, 0], [-w, 1]], w = e^{i pi / 3},
  /// relator b (a b a^-1 b^-1) a (a b a^-1 b^-1)^-1.
  static GroupPresentation figure_eight();

 private:
  std::vector<std::string> names_;
  std::vector<GroupElement> generators_;
  std::vector<Word> relators_;
  std::vector<std::string> relator_text_;
};

/// Hyperbolic volume of the figure-eight knot complement, 2 D(e^{i pi/3}).
double figure_eight_volume();

/// Finite probability Gamma-space: weights and one permutation per generator.
class FiniteGammaSpace {
 public:
  /// actions[g][x] = g . x. Throws InputError unless the weights are positive
  /// and sum to 1, every action is a weight-preserving permutation and every
  /// relator acts trivially.
  FiniteGammaSpace(std::vector<double> weights, std::vector<std::vector<std::size_t>> actions,
                   const GroupPresentation& presentation);

  /// Disjoint union of cyclic orbits Z/size_k with total orbit mass
  /// orbit_mass[k]; generator g acts by +steps[g] on every orbit. Without
  /// steps, the first choice of signs +-1 (starting from all +1) under which
  /// every relator has zero net shift is used.
  static FiniteGammaSpace cyclic(const std::vector<std::size_t>& orbit_sizes,
                                 const std::vector<double>& orbit_mass,
                                 const GroupPresentation& presentation,
                                 std::vector<long> steps = {});

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t x) const { return weights_.at(x); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<std::size_t>>& actions() const { return actions_; }

  std::size_t apply(const Letter& l, std::size_t x) const;
  std::size_t apply(const Word& w, std::size_t x) const;

 private:
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> actions_;
  std::vector<std::vector<std::size_t>> inverse_actions_;
};

/// Pointwise map f: X -> GL(n, C).
class TwistMap {
 public:
  explicit TwistMap(std::vector<GroupElement> values);

  static TwistMap identity(int n, std::size_t points);
  static TwistMap random(Rng& rng, int n, std::size_t points, double max_condition = 10.0);

  std::size_t size() const { return values_.size(); }
  int dim() const { return static_cast<int>(values_.front().dim()); }
  const GroupElement& at(std::size_t x) const { return values_.at(x); }
  const std::vector<GroupElement>& values() const { return values_; }
  TwistMap pointwise_inverse() const;

 private:
  std::vector<GroupElement> values_;
};

/// Measurable cocycle sigma: Gamma x X -> PSL(n, C) given on generators.
class Cocycle {
 public:
  /// table[g][x] = sigma(g, x). Throws InputError naming the relator and
  /// point where the cocycle identity fails beyond `tol`.
  Cocycle(std::shared_ptr<const GroupPresentation> presentation,
          std::shared_ptr<const FiniteGammaSpace> space,
          std::vector<std::vector<GroupElement>> table, double tol = kProjectiveTolerance);

  int dim() const { return dim_; }
  const GroupPresentation& presentation() const { return *presentation_; }
  const FiniteGammaSpace& space() const { return *space_; }
  std::shared_ptr<const GroupPresentation> presentation_ptr() const { return presentation_; }
  std::shared_ptr<const FiniteGammaSpace> space_ptr() const { return space_; }
  const GroupElement& at(std::size_t generator, std::size_t x) const {
    return table_.at(generator).at(x);
  }
  const std::vector<std::vector<GroupElement>>& table() const { return table_; }

  /// Entrywise complex conjugate cocycle.
  Cocycle conjugate() const;

 private:
  std::shared_ptr<const GroupPresentation> presentation_;
  std::shared_ptr<const FiniteGammaSpace> space_;
  std::vector<std::vector<GroupElement>> table_;
  int dim_ = 0;
};

/// sigma(w, x) by the cocycle rule, right to left:
/// sigma(g1 g2, x) = sigma(g1, g2 x) sigma(g2, x),
/// sigma(g^-1, x) = sigma(g, g^-1 x)^-1.
GroupElement evaluate_word(const Cocycle& sigma, const Word& w, std::size_t x);

/// Constant-in-x cocycle sigma_rho(g, x) = rho(g). Throws InputError
/// ("invalid representation") when a relator fails beyond 1e-7.
Cocycle cocycle_from_representation(std::shared_ptr<const GroupPresentation> presentation,
                                    std::shared_ptr<const FiniteGammaSpace> space,
                                    const std::vector<GroupElement>& rho);

/// pi_n applied to the generators of the presentation.
std::vector<GroupElement> irreducible_representation(const GroupPresentation& presentation, int n);

/// sigma^f(g, x) = f(g x)^-1 sigma(g, x) f(x).
Cocycle twist(const Cocycle& sigma, const TwistMap& f);

/// Equivariant measurable map phi: P^1(C) x X -> F(n, C).
///
/// Closed forms evaluate phi(xi, x) = T(x) base(xi, x), optionally followed by
/// entrywise conjugation; tables store phi on finitely many (xi, x).
class BoundaryMap {
 public:
  using Base = std::function<CompleteFlag(const ProjPoint&, std::size_t)>;

  struct Sample {
    std::size_t point = 0;
    ProjPoint xi;
    CompleteFlag flag;
  };

  /// xi -> V_n(xi) for every x.
  static BoundaryMap veronese(int n);
  /// xi -> F for every xi and x.
  static BoundaryMap constant(const CompleteFlag& flag);
  /// Pseudo-random flag depending only on xi (negative control).
  static BoundaryMap random(int n, std::uint64_t seed);
  /// Closed form with a custom base; `depends_on_point` declares whether base
  /// reads its second argument.
  static BoundaryMap custom(std::string kind, int n, Base base, bool depends_on_point);
  static BoundaryMap table(int n, std::vector<Sample> samples);

  const std::string& kind() const { return kind_; }
  int dim() const { return n_; }
  bool is_table() const { return !samples_.empty(); }
  bool depends_on_point() const { return depends_on_point_ || !transforms_.empty(); }
  bool conjugated_output() const { return conjugate_; }

  /// Throws InputError for a table missing (xi, x).
  CompleteFlag operator()(const ProjPoint& xi, std::size_t x) const;

  /// phi^f(xi, x) = f(x)^-1 phi(xi, x).
  BoundaryMap twisted_by(const TwistMap& f) const;
  /// Entrywise complex conjugate of every flag.
  BoundaryMap conjugate() const;
  /// Replaces phi(., x) by g phi(., x) at a single point.
  BoundaryMap with_corrupted_point(std::size_t x, const GroupElement& g) const;

  /// Table entries at point x (empty for closed forms).
  std::vector<Sample> samples_at(std::size_t x) const;
  const std::vector<Sample>& samples() const { return samples_; }

 private:
  BoundaryMap(std::string kind, int n, Base base, bool depends_on_point);

  std::string kind_;
  int n_ = 0;
  Base base_;
  bool depends_on_point_ = false;
  bool conjugate_ = false;
  std::vector<std::optional<Matrix>> transforms_;
  std::vector<Sample> samples_;
};

/// Largest flag distance between phi(g xi, g x) and sigma(g, x) phi(xi, x)
/// over `samples` random xi, every generator g and every point x. Tables
/// are checked on their own entries whose images are also tabulated.
double check_equivariance(const BoundaryMap& phi, const Cocycle& sigma, std::size_t samples,
                          std::uint64_t seed);

}  // namespace borelrig
