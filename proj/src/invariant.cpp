#include "borelrig/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"
#include "borelrig/parallel.hpp"

namespace borelrig {

namespace {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double d : v) s += d;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

using Integrand = std::function<double(const std::array<ProjPoint, 4>&)>;

EstimatorReport run_estimator(int n, const Integrand& integrand, const EstimatorOptions& options) {
  if (options.samples == 0) throw InputError("estimator: need at least one sample");
  EstimatorReport report;
  report.n = n;
  report.samples = options.samples;
  report.seed = options.seed;
  report.workers = std::max(1u, options.workers);
  report.bound = static_cast<double>(binomial(n + 1, 3));
  report.integrand.assign(options.samples, 0.0);

  const auto tetra = regular_tetrahedron();
  const double volume = nu3();
  parallel_chunks(options.samples, report.workers,
                  [&](unsigned worker, std::size_t begin, std::size_t end) {
                    Rng rng = derived_rng(options.seed, worker + 1);
                    for (std::size_t i = begin; i < end; ++i) {
                      const GroupElement g = random_psl2(rng);
                      const std::array<ProjPoint, 4> moved = {g.apply(tetra[0]), g.apply(tetra[1]),
                                                              g.apply(tetra[2]), g.apply(tetra[3])};
                      report.integrand[i] = integrand(moved) / volume;
                    }
                  });

  const auto& values = report.integrand;
  const double count = static_cast<double>(values.size());
  report.lambda = pairwise_sum(values) / count;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  report.sample_min = *lo;
  report.sample_max = *hi;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - report.lambda;
      sq[i] = d * d;
    }
    report.standard_error = std::sqrt(pairwise_sum(sq) / (count - 1.0) / count);
  }
  report.heuristic = (report.sample_max - report.sample_min) > 1e-7;
  report.maximal = report.lambda >= report.bound - options.maximal_tol;
  return report;
}

}  // namespace

std::array<ProjPoint, 4> regular_tetrahedron() {
  return {ProjPoint::affine(0.0), ProjPoint::affine(1.0),
          ProjPoint::affine(std::polar(1.0, std::numbers::pi / 3.0)), ProjPoint::infinity()};
}

double PullbackCochain::operator()(const std::array<ProjPoint, 4>& xi, std::size_t x) const {
  const auto& phi = *phi_;
  return borel_from_complete({phi(xi[0], x), phi(xi[1], x), phi(xi[2], x), phi(xi[3], x)});
}

double integrate_over_X(const FiniteGammaSpace& space,
                        const std::function<double(std::size_t)>& values) {
  double total = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) total += space.weight(x) * values(x);
  return total;
}

double integrate_over_X(const PullbackCochain& c, const FiniteGammaSpace& space,
                        const std::array<ProjPoint, 4>& xi) {
  if (c.x_independent()) return c(xi, 0);
  return integrate_over_X(space, [&](std::size_t x) { return c(xi, x); });
}

EstimatorReport empirical_borel_ratio(const Cocycle& sigma, const BoundaryMap& phi,
                                      const EstimatorOptions& options) {
  if (phi.dim() != sigma.dim()) throw InputError("estimator: boundary map dimension mismatch");
  if (phi.is_table()) {
    throw InputError("estimator: a tabulated boundary map cannot be evaluated at sampled vertices");
  }
  const double residual =
      check_equivariance(phi, sigma, options.equivariance_samples, options.seed);
  if (!(residual <= options.equivariance_tol)) {
    throw Refusal("estimator: boundary map is not equivariant (residual " +
                  std::to_string(residual) + ")");
  }
  const PullbackCochain cochain(phi);
  const auto& space = sigma.space();
  auto report = run_estimator(
      sigma.dim(),
      [&](const std::array<ProjPoint, 4>& xi) { return integrate_over_X(cochain, space, xi); },
      options);
  report.equivariance_residual = residual;
  return report;
}

EstimatorReport representation_borel_ratio(int n, const EstimatorOptions& options) {
  return run_estimator(
      n,
      [n](const std::array<ProjPoint, 4>& xi) {
        return borel_from_complete(
            {veronese(xi[0], n), veronese(xi[1], n), veronese(xi[2], n), veronese(xi[3], n)});
      },
      options);
}

// ---- Partitions and block flags ----

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InputError("partition: no parts");
  for (int p : parts_) {
    if (p <= 0) throw InputError("partition: parts must be positive");
  }
}

int Partition::total() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

double parabolic_bound(const Partition& p) {
  double total = 0.0;
  for (int part : p.parts()) total += static_cast<double>(binomial(part + 1, 3));
  return total;
}

CompleteFlag block_flag(const std::vector<CompleteFlag>& components) {
  if (components.empty()) throw InputError("block_flag: no components");
  Eigen::Index n = 0;
  for (const auto& c : components) n += c.dim();
  Matrix basis = Matrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& c : components) {
    basis.block(offset, offset, c.dim(), c.dim()) = c.basis();
    offset += c.dim();
  }
  return CompleteFlag(std::move(basis));
}

GroupElement block_diagonal(const std::vector<GroupElement>& blocks) {
  if (blocks.empty()) throw InputError("block_diagonal: no blocks");
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.dim();
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    m.block(offset, offset, b.dim(), b.dim()) = b.matrix();
    offset += b.dim();
  }
  return GroupElement(std::move(m));
}

Cocycle block_diagonal_cocycle(std::shared_ptr<const GroupPresentation> presentation,
                               std::shared_ptr<const FiniteGammaSpace> space,
                               const Partition& p) {
  std::vector<GroupElement> rho;
  for (std::size_t g = 0; g < presentation->size(); ++g) {
    std::vector<GroupElement> blocks;
    for (int part : p.parts()) blocks.push_back(sym_power(presentation->generator(g), part));
    rho.push_back(block_diagonal(blocks));
  }
  return cocycle_from_representation(std::move(presentation), std::move(space), rho);
}

BoundaryMap block_boundary(const Partition& p) {
  const auto parts = p.parts();
  return BoundaryMap::custom(
      "block", p.total(),
      [parts](const ProjPoint& xi, std::size_t) {
        std::vector<CompleteFlag> components;
        for (int part : parts) components.push_back(veronese(xi, part));
        return block_flag(components);
      },
      false);
}

}  // namespace borelrig
