#include "borelrig/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "borelrig/borel.hpp"
#include "borelrig/errors.hpp"
#include "borelrig/invariant.hpp"
#include "borelrig/parallel.hpp"

namespace borelrig {

namespace {

// Seed streams, kept apart from the estimator's worker streams.
constexpr std::uint64_t kCertificateStream = 1u << 20;
constexpr std::uint64_t kAlignmentStream = 1u << 21;

constexpr double kMinSampleSeparation = 1e-3;

}  // namespace

bool CertificateReport::all_certified() const {
  return !slices.empty() &&
         std::all_of(slices.begin(), slices.end(), [](const auto& s) { return s.certified(); });
}

int CertificateReport::sign() const {
  if (!all_certified()) return 0;
  const int first = slices.front().sign;
  for (const auto& s : slices) {
    if (s.sign != first) return 0;
  }
  return first;
}

CertificateReport maximality_certificate(const Cocycle& sigma, const BoundaryMap& phi,
                                         std::size_t samples, double tol, std::uint64_t seed,
                                         unsigned workers) {
  if (samples == 0) throw InputError("maximality_certificate: need at least one sample");
  if (phi.dim() != sigma.dim()) throw InputError("maximality_certificate: dimension mismatch");
  if (phi.is_table()) {
    throw InputError("maximality_certificate: needs a boundary map defined on all of P^1");
  }
  const int n = sigma.dim();
  const double bound = borel_bound(n);
  const auto tetra = regular_tetrahedron();
  CertificateReport report;
  report.slices.resize(sigma.space().size());
  parallel_chunks(report.slices.size(), workers,
                  [&](unsigned, std::size_t begin, std::size_t end) {
                    for (std::size_t x = begin; x < end; ++x) {
                      Rng rng = derived_rng(seed, kCertificateStream + x);
                      SliceCertificate slice;
                      slice.point = x;
                      slice.samples = samples;
                      int plus = 0;
                      int minus = 0;
                      for (std::size_t k = 0; k < samples; ++k) {
                        const GroupElement g = random_psl2(rng);
                        const double b = borel_from_complete(
                            {phi(g.apply(tetra[0]), x), phi(g.apply(tetra[1]), x),
                             phi(g.apply(tetra[2]), x), phi(g.apply(tetra[3]), x)});
                        if (bound > 0.0) slice.best_ratio = std::max(slice.best_ratio, std::abs(b) / bound);
                        const int s = maximal_sign(b, n, tol);
                        if (s > 0) ++plus;
                        if (s < 0) ++minus;
                      }
                      slice.maximal = static_cast<std::size_t>(plus + minus);
                      slice.fraction = static_cast<double>(slice.maximal) / static_cast<double>(samples);
                      if (plus > 0 && minus == 0) slice.sign = 1;
                      if (minus > 0 && plus == 0) slice.sign = -1;
                      report.slices[x] = slice;
                    }
                  });
  return report;
}

std::string to_string(AlignmentStatus s) {
  switch (s) {
    case AlignmentStatus::success: return "success";
    case AlignmentStatus::no_solution: return "no-solution";
    case AlignmentStatus::ambiguous: return "ambiguous";
  }
  return "unknown";
}

std::string to_string(Branch b) { return b == Branch::plain ? "plain" : "conjugated"; }

AlignmentResult align_to_veronese(const std::vector<FlagSample>& samples, double tol) {
  AlignmentResult out;
  if (samples.empty()) {
    out.diagnostic = "no samples";
    return out;
  }
  const Eigen::Index n = samples.front().flag.dim();
  for (const auto& s : samples) {
    if (s.flag.dim() != n) throw InputError("align_to_veronese: flags of different dimensions");
  }
  out.g = GroupElement::identity(n);
  const auto unknowns = static_cast<std::size_t>(n * n);
  if (samples.size() < unknowns) {
    out.diagnostic = "insufficient samples: " + std::to_string(samples.size()) + " < n^2 = " +
                     std::to_string(unknowns);
    return out;
  }
  for (std::size_t a = 0; a < samples.size(); ++a) {
    for (std::size_t b = a + 1; b < samples.size(); ++b) {
      if (chordal_distance(samples[a].xi, samples[b].xi) < kMinSampleSeparation) {
        out.diagnostic = "degenerate samples: points " + std::to_string(a) + " and " +
                         std::to_string(b) + " nearly coincide";
        return out;
      }
    }
  }
  if (n == 1) {
    out.status = AlignmentStatus::success;
    return out;
  }

  const Eigen::Index per_sample = (n - 1) * n * (n + 1) / 6;
  Matrix system(per_sample * static_cast<Eigen::Index>(samples.size()), n * n);
  Eigen::Index row = 0;
  for (const auto& s : samples) {
    const Matrix target = veronese(s.xi, static_cast<int>(n)).orthonormal();
    const Matrix& source = s.flag.orthonormal();
    for (Eigen::Index j = 1; j < n; ++j) {
      for (Eigen::Index a = j; a < n; ++a) {
        // w^T y = 0 for y in V^j  <=>  conj(w) is orthogonal to V^j.
        const Vector w = target.col(a).conjugate();
        for (Eigen::Index b = 0; b < j; ++b) {
          const auto f = source.col(b);
          // Column-major vec(g): coefficient of g(p, q) is w(p) f(q).
          for (Eigen::Index q = 0; q < n; ++q) {
            system.row(row).segment(q * n, n) = (w * f(q)).transpose();
          }
          ++row;
        }
      }
    }
  }

  Eigen::BDCSVD<Matrix> svd(system, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::Index k = sv.size();
  out.smallest_singular = sv(k - 1);
  out.second_singular = sv(k - 2);
  const Vector null = svd.matrixV().col(k - 1);
  const Matrix g = Eigen::Map<const Matrix>(null.data(), n, n);
  if (inverse_condition(g) < 1e-12) {
    out.diagnostic = "best candidate is singular";
    return out;
  }
  out.g = GroupElement(g).normalized();
  for (const auto& s : samples) {
    out.residual = std::max(out.residual, flag_distance(out.g * s.flag,
                                                        veronese(s.xi, static_cast<int>(n))));
  }
  std::ostringstream msg;
  msg << "residual " << out.residual << ", singular values " << out.smallest_singular << " / "
      << out.second_singular;
  out.diagnostic = msg.str();
  if (!(out.residual < tol)) {
    out.status = AlignmentStatus::no_solution;
  } else if (out.second_singular < 10.0 * tol) {
    out.status = AlignmentStatus::ambiguous;
  } else {
    out.status = AlignmentStatus::success;
  }
  return out;
}

Trivialization trivialize(const Cocycle& sigma, const BoundaryMap& phi,
                          const TrivializeOptions& options) {
  const int n = sigma.dim();
  if (phi.dim() != n) throw InputError("trivialize: boundary map dimension mismatch");
  const auto& space = sigma.space();
  const auto& presentation = sigma.presentation();

  const double equivariance =
      check_equivariance(phi, sigma, options.equivariance_samples, options.seed);
  if (!(equivariance <= options.equivariance_tol)) {
    std::ostringstream msg;
    msg << "trivialize: boundary map is not equivariant (residual " << equivariance << ")";
    throw Refusal(msg.str());
  }

  Trivialization out;
  if (phi.is_table()) {
    // Tables cannot be sampled at random tetrahedra; certify through the
    // alignment alone.
    out.certificate.slices.clear();
  } else {
    out.certificate = maximality_certificate(sigma, phi, options.certificate_samples,
                                             options.certificate_tol, options.seed,
                                             options.workers);
    for (const auto& s : out.certificate.slices) {
      if (!s.certified()) {
        std::ostringstream msg;
        msg << "trivialize: maximality certificate fails on slice " << s.point << " (fraction "
            << s.fraction << ", best |B_n|/bound " << s.best_ratio << ")";
        throw Refusal(msg.str());
      }
    }
    if (out.certificate.sign() == 0) {
      throw Refusal("trivialize: slices are maximal with opposite signs");
    }
  }
  out.branch = (!phi.is_table() && out.certificate.sign() < 0) ? Branch::conjugated : Branch::plain;
  const bool conj = out.branch == Branch::conjugated;

  const std::size_t per_slice = options.samples_per_slice > 0
                                    ? options.samples_per_slice
                                    : static_cast<std::size_t>(2 * n * n);
  std::vector<std::optional<GroupElement>> f(space.size());
  out.slice_residuals.assign(space.size(), 0.0);
  std::vector<std::string> failures(space.size());
  parallel_chunks(space.size(), options.workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      std::vector<FlagSample> samples;
      if (phi.is_table()) {
        for (const auto& s : phi.samples_at(x)) samples.push_back({s.xi, s.flag});
      } else {
        Rng rng = derived_rng(options.seed, kAlignmentStream + x);
        while (samples.size() < per_slice) {
          const ProjPoint xi = random_point(rng);
          const bool crowded = std::any_of(samples.begin(), samples.end(), [&](const auto& s) {
            return chordal_distance(s.xi, xi) < kMinSampleSeparation;
          });
          if (!crowded) samples.push_back({xi, phi(xi, x)});
        }
      }
      if (conj) {
        for (auto& s : samples) s.flag = s.flag.conjugate();
      }
      const AlignmentResult aligned = align_to_veronese(samples, options.alignment_tol);
      out.slice_residuals[x] = aligned.residual;
      if (aligned.status != AlignmentStatus::success) {
        failures[x] = "trivialize: alignment on slice " + std::to_string(x) + " returned " +
                      to_string(aligned.status) + " (" + aligned.diagnostic + ")";
        continue;
      }
      const GroupElement g = conj ? aligned.g.conjugate() : aligned.g;
      f[x] = g.inverse().normalized();
    }
  });
  for (const auto& msg : failures) {
    if (!msg.empty()) throw NumericalFailure(msg);
  }
  for (auto& v : f) out.f.push_back(*v);

  out.verification.assign(presentation.size(), std::vector<double>(space.size(), 0.0));
  for (std::size_t g = 0; g < presentation.size(); ++g) {
    GroupElement target = sym_power(presentation.generator(g), n);
    if (conj) target = target.conjugate();
    for (std::size_t x = 0; x < space.size(); ++x) {
      const std::size_t gx = space.apply(Letter{g, false}, x);
      const GroupElement recovered = out.f[gx].inverse() * sigma.at(g, x) * out.f[x];
      const double d = projective_distance(target, recovered);
      out.verification[g][x] = d;
      out.residual = std::max(out.residual, d);
    }
  }
  out.verified = out.residual < options.verification_tol;
  return out;
}

}  // namespace borelrig
