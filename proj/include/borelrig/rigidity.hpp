#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borelrig/cocycle.hpp"

namespace borelrig {

struct SliceCertificate {
  std::size_t point = 0;
  std::size_t samples = 0;
  std::size_t maximal = 0;
  /// Common sign of the maximal samples (+1 / -1), 0 when none or mixed.
  int sign = 0;
  /// Fraction of sampled regular tetrahedra whose image is maximal.
  double fraction = 0.0;
  /// Largest |B_n| / (C(n+1, 3) nu3) seen on the slice.
  double best_ratio = 0.0;
  bool certified() const { return samples > 0 && maximal == samples && sign != 0; }
};

struct CertificateReport {
  std::vector<SliceCertificate> slices;
  bool all_certified() const;
  /// Sign shared by every certified slice, 0 if they disagree or any fails.
  int sign() const;
};

/// For every point x, the fraction of N random regular ideal tetrahedra
/// g (0, 1, e^{i pi/3}, infinity) whose phi_x images are maximal within tol.
CertificateReport maximality_certificate(const Cocycle& sigma, const BoundaryMap& phi,
                                         std::size_t samples, double tol, std::uint64_t seed,
                                         unsigned workers = 1);

enum class AlignmentStatus { success, no_solution, ambiguous };

std::string to_string(AlignmentStatus s);

struct AlignmentResult {
  GroupElement g = GroupElement::identity(1);
  /// Largest flag distance between g F_k and V_n(xi_k).
  double residual = 0.0;
  AlignmentStatus status = AlignmentStatus::no_solution;
  /// Smallest and second-smallest singular values of the linear system.
  double smallest_singular = 0.0;
  double second_singular = 0.0;
  std::string diagnostic;
};

struct FlagSample {
  ProjPoint xi;
  CompleteFlag flag;
};

/// g with g F_k = V_n(xi_k) for all samples. Each containment g F_k^j ⊆ V_n^j
/// is imposed as w^T g f = 0 for w in the annihilator of V_n^j and f in F_k^j;
/// the stacked homogeneous system is solved by its smallest right singular
/// vector.
AlignmentResult align_to_veronese(const std::vector<FlagSample>& samples, double tol);

struct TrivializeOptions {
  std::size_t samples_per_slice = 0;  ///< 0 means 2 n^2
  std::size_t certificate_samples = 16;
  double certificate_tol = 1e-5;
  double alignment_tol = 1e-7;
  double verification_tol = 1e-6;
  /// Refusal threshold for the equivariance residual of phi.
  double equivariance_tol = 1e-6;
  std::size_t equivariance_samples = 8;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

enum class Branch { plain, conjugated };

std::string to_string(Branch b);

struct Trivialization {
  /// f(x), normalized to determinant 1.
  std::vector<GroupElement> f;
  /// max over (g, x) of the projective distance between the target
  /// pi_n(g) (or its conjugate) and f(g x)^-1 sigma(g, x) f(x).
  double residual = 0.0;
  /// residual < options.verification_tol.
  bool verified = false;
  Branch branch = Branch::plain;
  std::vector<double> slice_residuals;
  /// verification[g][x].
  std::vector<std::vector<double>> verification;
  CertificateReport certificate;
};

/// Recovers f with pi_n(g) = f(g x)^-1 sigma(g, x) f(x), or its complex
/// conjugate when the slices are negatively maximal.
///
/// Throws Refusal when phi is not sigma-equivariant or the certificate fails
/// on a slice, and NumericalFailure when an alignment misses its tolerance;
/// the messages name the offending slice. The final check is reported in
/// `verified`.
Trivialization trivialize(const Cocycle& sigma, const BoundaryMap& phi,
                          const TrivializeOptions& options);

}  // namespace borelrig
