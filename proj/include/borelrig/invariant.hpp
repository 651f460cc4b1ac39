#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "borelrig/borel.hpp"
#include "borelrig/cocycle.hpp"

namespace borelrig {

/// Vertices (0, 1, e^{i pi/3}, infinity) of the positively oriented regular
/// ideal tetrahedron.
std::array<ProjPoint, 4> regular_tetrahedron();

/// c(xi_0..xi_3; x) = B_n(phi(xi_0, x), ..., phi(xi_3, x)).
class PullbackCochain {
 public:
  explicit PullbackCochain(const BoundaryMap& phi) : phi_(&phi) {}

  double operator()(const std::array<ProjPoint, 4>& xi, std::size_t x) const;
  bool x_independent() const { return !phi_->depends_on_point(); }
  int dim() const { return phi_->dim(); }

 private:
  const BoundaryMap* phi_;
};

/// sum_x mu(x) values(x), the exact integral over a finite space.
double integrate_over_X(const FiniteGammaSpace& space,
                        const std::function<double(std::size_t)>& values);

/// Integral of the cochain over X at fixed vertices. A cochain that does not
/// read x is evaluated once.
double integrate_over_X(const PullbackCochain& c, const FiniteGammaSpace& space,
                        const std::array<ProjPoint, 4>& xi);

struct EstimatorOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Refusal threshold for the equivariance residual of phi.
  double equivariance_tol = 1e-6;
  std::size_t equivariance_samples = 8;
  /// Slack in the maximality verdict lambda >= C(n+1, 3) - tol.
  double maximal_tol = 1e-6;
};

struct EstimatorReport {
  int n = 0;
  /// Estimate of beta_n(sigma) / Vol(M).
  double lambda = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Per-sample extremes of the integrand (already divided by nu3).
  double sample_min = 0.0;
  double sample_max = 0.0;
  double equivariance_residual = 0.0;
  /// C(n+1, 3).
  double bound = 0.0;
  bool maximal = false;
  /// Set unless every integrand sample was identical, i.e. unless the
  /// surrogate Haar distribution is immaterial.
  bool heuristic = false;
  std::vector<double> integrand;
};

/// lambda = (1/N) sum_g integrate_over_X(c, g xi) / nu3 at the regular
/// tetrahedron, g drawn from random_psl2. Throws Refusal when phi is not
/// sigma-equivariant within options.equivariance_tol.
EstimatorReport empirical_borel_ratio(const Cocycle& sigma, const BoundaryMap& phi,
                                      const EstimatorOptions& options);

/// Same estimator for a representation rho composed with pi_n, evaluated
/// directly on V_n without a cocycle.
EstimatorReport representation_borel_ratio(int n, const EstimatorOptions& options);

/// Block sizes (n_1, ..., n_r) of a parabolic subgroup.
class Partition {
 public:
  /// Throws InputError unless non-empty with positive parts.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int total() const;
  std::size_t blocks() const { return parts_.size(); }

 private:
  std::vector<int> parts_;
};

/// sum_i C(n_i + 1, 3).
double parabolic_bound(const Partition& p);

/// Flag of C^n refining C^{n_1} ⊂ C^{n_1} ⊕ C^{n_2} ⊂ ... by the component
/// flags, block by block.
CompleteFlag block_flag(const std::vector<CompleteFlag>& components);

/// Block-diagonal sum of matrices.
GroupElement block_diagonal(const std::vector<GroupElement>& blocks);

/// sigma(g, x) = diag(pi_{n_1}(g), ..., pi_{n_r}(g)).
Cocycle block_diagonal_cocycle(std::shared_ptr<const GroupPresentation> presentation,
                               std::shared_ptr<const FiniteGammaSpace> space,
                               const Partition& p);

/// phi(xi, x) = block_flag(V_{n_1}(xi), ..., V_{n_r}(xi)).
BoundaryMap block_boundary(const Partition& p);

}  // namespace borelrig
