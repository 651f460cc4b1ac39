#include "borelrig/cocycle.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"

namespace borelrig {

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.inverse = !l.inverse;
  return out;
}

Word concatenate(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

// ---- GroupPresentation ----

GroupPresentation::GroupPresentation(std::vector<std::string> names,
                                     std::vector<GroupElement> generators,
                                     const std::vector<std::string>& relators, double tol)
    : names_(std::move(names)), generators_(std::move(generators)) {
  if (names_.size() != generators_.size() || names_.empty()) {
    throw InputError("presentation: need one matrix per generator name");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (generators_[i].dim() != 2) {
      throw InputError("presentation: generator '" + names_[i] + "' is not 2x2");
    }
    if (std::count(names_.begin(), names_.end(), names_[i]) != 1) {
      throw InputError("presentation: duplicate generator '" + names_[i] + "'");
    }
  }
  for (const auto& text : relators) {
    Word w = parse_word(text);
    const double err = projective_distance(evaluate(w), GroupElement::identity(2));
    if (!(err <= tol)) {
      std::ostringstream msg;
      msg << "presentation: relator '" << text << "' is not the identity (deviation " << err
          << ")";
      throw InputError(msg.str());
    }
    relators_.push_back(std::move(w));
    relator_text_.push_back(text);
  }
}

std::size_t GroupPresentation::index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("unknown generator '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

Word GroupPresentation::parse_word(const std::string& text) const {
  Word out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const bool inverse = token.size() > 3 && token.ends_with("^-1");
    const std::string base = inverse ? token.substr(0, token.size() - 3) : token;
    if (std::find(names_.begin(), names_.end(), base) != names_.end()) {
      out.push_back({index(base), inverse});
      continue;
    }
    if (inverse) throw InputError("unknown generator '" + base + "' in word '" + text + "'");
    for (char c : token) {
      const std::string lower(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
      if (std::find(names_.begin(), names_.end(), lower) == names_.end()) {
        throw InputError("unknown generator '" + std::string(1, c) + "' in word '" + text + "'");
      }
      out.push_back({index(lower), upper});
    }
  }
  return out;
}

std::string GroupPresentation::format_word(const Word& w) const {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += names_.at(l.generator);
    if (l.inverse) out += "^-1";
  }
  return out;
}

GroupElement GroupPresentation::evaluate(const Word& w) const {
  Matrix m = Matrix::Identity(2, 2);
  for (const auto& l : w) {
    const auto& g = generators_.at(l.generator);
    m = m * (l.inverse ? g.inverse().matrix() : g.matrix());
  }
  return GroupElement(std::move(m));
}

GroupPresentation GroupPresentation::figure_eight() {
  const Complex omega = std::polar(1.0, std::numbers::pi / 3.0);
  Matrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  Matrix b(2, 2);
  b << 1.0, 0.0, -omega, 1.0;
  return GroupPresentation({"a", "b"}, {GroupElement(a), GroupElement(b)}, {"babABabaBA"});
}

double figure_eight_volume() { return 2.0 * nu3(); }

// ---- FiniteGammaSpace ----

FiniteGammaSpace::FiniteGammaSpace(std::vector<double> weights,
                                   std::vector<std::vector<std::size_t>> actions,
                                   const GroupPresentation& presentation)
    : weights_(std::move(weights)), actions_(std::move(actions)) {
  const std::size_t size = weights_.size();
  if (size == 0) throw InputError("space: no points");
  double total = 0.0;
  for (std::size_t x = 0; x < size; ++x) {
    if (!(weights_[x] > 0.0)) {
      throw InputError("space: weight of point " + std::to_string(x) + " is not positive");
    }
    total += weights_[x];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("space: weights do not sum to 1");
  if (actions_.size() != presentation.size()) {
    throw InputError("space: need one permutation per generator");
  }
  inverse_actions_.assign(actions_.size(), std::vector<std::size_t>(size, size));
  for (std::size_t g = 0; g < actions_.size(); ++g) {
    const auto& perm = actions_[g];
    if (perm.size() != size) {
      throw InputError("space: action of '" + presentation.name(g) + "' has wrong length");
    }
    for (std::size_t x = 0; x < size; ++x) {
      const std::size_t y = perm[x];
      if (y >= size || inverse_actions_[g][y] != size) {
        throw InputError("space: action of '" + presentation.name(g) + "' is not a permutation");
      }
      inverse_actions_[g][y] = x;
      if (std::abs(weights_[y] - weights_[x]) > 1e-12) {
        throw InputError("space: action of '" + presentation.name(g) +
                         "' does not preserve the measure at point " + std::to_string(x));
      }
    }
  }
  for (std::size_t r = 0; r < presentation.relators().size(); ++r) {
    for (std::size_t x = 0; x < size; ++x) {
      if (apply(presentation.relators()[r], x) != x) {
        throw InputError("space: relator '" + presentation.relator_text()[r] +
                         "' moves point " + std::to_string(x));
      }
    }
  }
}

FiniteGammaSpace FiniteGammaSpace::cyclic(const std::vector<std::size_t>& orbit_sizes,
                                          const std::vector<double>& orbit_mass,
                                          const GroupPresentation& presentation,
                                          std::vector<long> steps) {
  if (orbit_sizes.size() != orbit_mass.size() || orbit_sizes.empty()) {
    throw InputError("space: one mass per orbit required");
  }
  const std::size_t gens = presentation.size();
  if (steps.empty()) {
    steps.assign(gens, 1);
    // First sign pattern, starting from all +1, with zero net shift on every relator.
    if (gens < 20) {
      for (std::uint32_t mask = 0; mask < (1u << gens); ++mask) {
        std::vector<long> trial(gens);
        for (std::size_t g = 0; g < gens; ++g) trial[g] = (mask >> g) & 1u ? -1 : 1;
        const bool balanced = std::all_of(
            presentation.relators().begin(), presentation.relators().end(), [&](const Word& r) {
              long total = 0;
              for (const auto& l : r) total += l.inverse ? -trial[l.generator] : trial[l.generator];
              return total == 0;
            });
        if (balanced) {
          steps = std::move(trial);
          break;
        }
      }
    }
  }
  if (steps.size() != gens) throw InputError("space: need one step per generator");
  std::vector<double> weights;
  std::vector<std::vector<std::size_t>> actions(gens);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < orbit_sizes.size(); ++k) {
    const auto size = static_cast<long>(orbit_sizes[k]);
    if (size == 0) throw InputError("space: empty orbit");
    for (long i = 0; i < size; ++i) {
      weights.push_back(orbit_mass[k] / static_cast<double>(size));
      for (std::size_t g = 0; g < gens; ++g) {
        actions[g].push_back(offset + static_cast<std::size_t>(((i + steps[g]) % size + size) % size));
      }
    }
    offset += orbit_sizes[k];
  }
  return FiniteGammaSpace(std::move(weights), std::move(actions), presentation);
}

std::size_t FiniteGammaSpace::apply(const Letter& l, std::size_t x) const {
  return l.inverse ? inverse_actions_.at(l.generator).at(x) : actions_.at(l.generator).at(x);
}

std::size_t FiniteGammaSpace::apply(const Word& w, std::size_t x) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = apply(*it, x);
  return x;
}

// ---- TwistMap ----

TwistMap::TwistMap(std::vector<GroupElement> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("twist: empty map");
  for (const auto& v : values_) {
    if (v.dim() != values_.front().dim()) throw InputError("twist: mixed dimensions");
  }
}

TwistMap TwistMap::identity(int n, std::size_t points) {
  return TwistMap(std::vector<GroupElement>(points, GroupElement::identity(n)));
}

TwistMap TwistMap::random(Rng& rng, int n, std::size_t points, double max_condition) {
  std::vector<GroupElement> values;
  values.reserve(points);
  for (std::size_t x = 0; x < points; ++x) values.push_back(random_gl(rng, n, max_condition));
  return TwistMap(std::move(values));
}

TwistMap TwistMap::pointwise_inverse() const {
  std::vector<GroupElement> inv;
  inv.reserve(values_.size());
  for (const auto& v : values_) inv.push_back(v.inverse());
  return TwistMap(std::move(inv));
}

// ---- Cocycle ----

Cocycle::Cocycle(std::shared_ptr<const GroupPresentation> presentation,
                 std::shared_ptr<const FiniteGammaSpace> space,
                 std::vector<std::vector<GroupElement>> table, double tol)
    : presentation_(std::move(presentation)), space_(std::move(space)), table_(std::move(table)) {
  if (!presentation_ || !space_) throw InputError("cocycle: missing presentation or space");
  if (table_.size() != presentation_->size()) {
    throw InputError("cocycle: need one row per generator");
  }
  for (std::size_t g = 0; g < table_.size(); ++g) {
    if (table_[g].size() != space_->size()) {
      throw InputError("cocycle: row of '" + presentation_->name(g) + "' has wrong length");
    }
    for (const auto& m : table_[g]) {
      if (dim_ == 0) dim_ = static_cast<int>(m.dim());
      if (m.dim() != dim_) throw InputError("cocycle: mixed matrix dimensions");
    }
  }
  for (std::size_t r = 0; r < presentation_->relators().size(); ++r) {
    for (std::size_t x = 0; x < space_->size(); ++x) {
      const auto value = evaluate_word(*this, presentation_->relators()[r], x);
      const double err = projective_distance(value, GroupElement::identity(dim_));
      if (!(err <= tol)) {
        std::ostringstream msg;
        msg << "cocycle: relator '" << presentation_->relator_text()[r]
            << "' fails at point " << x << " (deviation " << err << ")";
        throw InputError(msg.str());
      }
    }
  }
}

Cocycle Cocycle::conjugate() const {
  auto table = table_;
  for (auto& row : table) {
    for (auto& m : row) m = m.conjugate();
  }
  return Cocycle(presentation_, space_, std::move(table));
}

GroupElement evaluate_word(const Cocycle& sigma, const Word& w, std::size_t x) {
  const auto& space = sigma.space();
  if (x >= space.size()) throw InputError("evaluate_word: point out of range");
  Matrix acc = Matrix::Identity(sigma.dim(), sigma.dim());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->generator >= sigma.presentation().size()) {
      throw InputError("evaluate_word: unknown generator index");
    }
    if (it->inverse) {
      const std::size_t y = space.apply(*it, x);
      acc = sigma.at(it->generator, y).inverse().matrix() * acc;
      x = y;
    } else {
      acc = sigma.at(it->generator, x).matrix() * acc;
      x = space.apply(*it, x);
    }
  }
  return GroupElement(std::move(acc));
}

Cocycle cocycle_from_representation(std::shared_ptr<const GroupPresentation> presentation,
                                    std::shared_ptr<const FiniteGammaSpace> space,
                                    const std::vector<GroupElement>& rho) {
  if (!presentation || !space) throw InputError("representation: missing presentation or space");
  if (rho.size() != presentation->size()) {
    throw InputError("representation: need one matrix per generator");
  }
  for (std::size_t r = 0; r < presentation->relators().size(); ++r) {
    Matrix m = Matrix::Identity(rho[0].dim(), rho[0].dim());
    for (const auto& l : presentation->relators()[r]) {
      const auto& g = rho.at(l.generator);
      m = m * (l.inverse ? g.inverse().matrix() : g.matrix());
    }
    const double err = projective_distance(m, Matrix::Identity(m.rows(), m.cols()));
    if (!(err <= 1e-7)) {
      std::ostringstream msg;
      msg << "invalid representation: relator '" << presentation->relator_text()[r]
          << "' deviates by " << err;
      throw InputError(msg.str());
    }
  }
  std::vector<std::vector<GroupElement>> table;
  for (const auto& g : rho) table.emplace_back(space->size(), g);
  return Cocycle(std::move(presentation), std::move(space), std::move(table), 1e-7);
}

std::vector<GroupElement> irreducible_representation(const GroupPresentation& presentation,
                                                     int n) {
  std::vector<GroupElement> out;
  for (std::size_t g = 0; g < presentation.size(); ++g) {
    out.push_back(sym_power(presentation.generator(g), n));
  }
  return out;
}

Cocycle twist(const Cocycle& sigma, const TwistMap& f) {
  const auto& space = sigma.space();
  if (f.size() != space.size()) throw InputError("twist: map must be defined on every point");
  if (f.dim() != sigma.dim()) throw InputError("twist: dimension mismatch");
  std::vector<std::vector<GroupElement>> table;
  for (std::size_t g = 0; g < sigma.presentation().size(); ++g) {
    std::vector<GroupElement> row;
    for (std::size_t x = 0; x < space.size(); ++x) {
      const std::size_t gx = space.apply(Letter{g, false}, x);
      row.push_back(f.at(gx).inverse() * sigma.at(g, x) * f.at(x));
    }
    table.push_back(std::move(row));
  }
  return Cocycle(sigma.presentation_ptr(), sigma.space_ptr(), std::move(table));
}

// ---- BoundaryMap ----

BoundaryMap::BoundaryMap(std::string kind, int n, Base base, bool depends_on_point)
    : kind_(std::move(kind)), n_(n), base_(std::move(base)), depends_on_point_(depends_on_point) {
  if (n_ < 1) throw InputError("boundary map: dimension must be positive");
}

BoundaryMap BoundaryMap::veronese(int n) {
  return BoundaryMap(
      "veronese", n, [n](const ProjPoint& xi, std::size_t) { return borelrig::veronese(xi, n); },
      false);
}

BoundaryMap BoundaryMap::constant(const CompleteFlag& flag) {
  return BoundaryMap(
      "constant", static_cast<int>(flag.dim()),
      [flag](const ProjPoint&, std::size_t) { return flag; }, false);
}

BoundaryMap BoundaryMap::random(int n, std::uint64_t seed) {
  return BoundaryMap(
      "random", n,
      [n, seed](const ProjPoint& xi, std::size_t) {
        const auto p = xi.normalized();
        // Phase-fix the representative so the hash is a function of the point.
        const Complex phase = std::abs(p.x()) >= std::abs(p.y()) ? p.x() : p.y();
        const Complex u = p.x() * std::conj(phase) / std::abs(phase);
        const Complex v = p.y() * std::conj(phase) / std::abs(phase);
        std::uint64_t h = seed;
        for (double d : {u.real(), u.imag(), v.real(), v.imag()}) {
          const auto bits = std::bit_cast<std::uint64_t>(std::round(d * 1e9) / 1e9);
          h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        Rng rng(h);
        return random_flag(rng, n);
      },
      false);
}

BoundaryMap BoundaryMap::custom(std::string kind, int n, Base base, bool depends_on_point) {
  return BoundaryMap(std::move(kind), n, std::move(base), depends_on_point);
}

BoundaryMap BoundaryMap::table(int n, std::vector<Sample> samples) {
  if (samples.empty()) throw InputError("boundary table: no entries");
  for (const auto& s : samples) {
    if (s.flag.dim() != n) throw InputError("boundary table: flag dimension mismatch");
  }
  auto shared = std::make_shared<const std::vector<Sample>>(samples);
  BoundaryMap out(
      "table", n,
      [shared](const ProjPoint& xi, std::size_t x) {
        for (const auto& s : *shared) {
          if (s.point == x && same_point(s.xi, xi, 1e-9)) return s.flag;
        }
        throw InputError("boundary table: no entry at point " + std::to_string(x));
      },
      true);
  out.samples_ = std::move(samples);
  return out;
}

CompleteFlag BoundaryMap::operator()(const ProjPoint& xi, std::size_t x) const {
  CompleteFlag flag = base_(xi, x);
  if (x < transforms_.size() && transforms_[x]) flag = CompleteFlag(*transforms_[x] * flag.basis());
  return conjugate_ ? flag.conjugate() : flag;
}

BoundaryMap BoundaryMap::twisted_by(const TwistMap& f) const {
  if (f.dim() != n_) throw InputError("boundary twist: dimension mismatch");
  BoundaryMap out = *this;
  if (out.transforms_.size() < f.size()) out.transforms_.resize(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    Matrix inv = f.at(x).inverse().matrix();
    if (conjugate_) inv = inv.conjugate().eval();
    const auto& t = out.transforms_[x];
    out.transforms_[x] = t ? Matrix(inv * *t) : inv;
  }
  if (out.kind_ == "veronese") out.kind_ = "twisted-veronese";
  return out;
}

BoundaryMap BoundaryMap::conjugate() const {
  BoundaryMap out = *this;
  out.conjugate_ = !conjugate_;
  return out;
}

BoundaryMap BoundaryMap::with_corrupted_point(std::size_t x, const GroupElement& g) const {
  if (g.dim() != n_) throw InputError("boundary corruption: dimension mismatch");
  BoundaryMap out = *this;
  if (out.transforms_.size() <= x) out.transforms_.resize(x + 1);
  Matrix m = conjugate_ ? Matrix(g.matrix().conjugate()) : g.matrix();
  const auto& t = out.transforms_[x];
  out.transforms_[x] = t ? Matrix(m * *t) : m;
  return out;
}

std::vector<BoundaryMap::Sample> BoundaryMap::samples_at(std::size_t x) const {
  std::vector<Sample> out;
  for (const auto& s : samples_) {
    if (s.point == x) out.push_back({s.point, s.xi, (*this)(s.xi, x)});
  }
  return out;
}

double check_equivariance(const BoundaryMap& phi, const Cocycle& sigma, std::size_t samples,
                          std::uint64_t seed) {
  if (samples == 0) throw InputError("check_equivariance: need at least one sample");
  if (phi.dim() != sigma.dim()) throw InputError("check_equivariance: dimension mismatch");
  const auto& presentation = sigma.presentation();
  const auto& space = sigma.space();
  double worst = 0.0;
  auto check = [&](const ProjPoint& xi, std::size_t g, std::size_t x) {
    const ProjPoint gxi = presentation.generator(g).apply(xi);
    const std::size_t gx = space.apply(Letter{g, false}, x);
    const CompleteFlag lhs = phi(gxi, gx);
    const CompleteFlag rhs = sigma.at(g, x) * phi(xi, x);
    worst = std::max(worst, flag_distance(lhs, rhs));
  };
  if (phi.is_table()) {
    for (const auto& s : phi.samples()) {
      if (s.point >= space.size()) throw InputError("boundary table: point out of range");
      for (std::size_t g = 0; g < presentation.size(); ++g) {
        const ProjPoint gxi = presentation.generator(g).apply(s.xi);
        const std::size_t gx = space.apply(Letter{g, false}, s.point);
        const bool tabulated = std::any_of(
            phi.samples().begin(), phi.samples().end(),
            [&](const auto& t) { return t.point == gx && same_point(t.xi, gxi, 1e-9); });
        if (tabulated) check(s.xi, g, s.point);
      }
    }
    return worst;
  }
  Rng rng = derived_rng(seed, 0);
  for (std::size_t k = 0; k < samples; ++k) {
    const ProjPoint xi = random_point(rng);
    for (std::size_t g = 0; g < presentation.size(); ++g) {
      for (std::size_t x = 0; x < space.size(); ++x) check(xi, g, x);
    }
  }
  return worst;
}

}  // namespace borelrig
