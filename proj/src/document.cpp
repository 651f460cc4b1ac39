#include "borelrig/document.hpp"

#include <fstream>
#include <sstream>

#include "borelrig/dilog.hpp"
#include "borelrig/errors.hpp"

namespace borelrig {

namespace {

class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const { throw InputError(path_ + ": " + msg); }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Node operator[](const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    if (!j_->contains(key)) fail("missing field '" + key + "'");
    return Node(j_->at(key), path_ + "." + key);
  }

  std::optional<Node> optional(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return (*this)[key];
  }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  Node at(std::size_t i) const {
    size();
    return Node(j_->at(i), path_ + "[" + std::to_string(i) + "]");
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("non-finite number");
    return v;
  }

  std::int64_t integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<std::int64_t>();
  }

  std::size_t count(std::int64_t min = 0) const {
    const auto v = integer();
    if (v < min) fail("expected an integer >= " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  Complex complex() const {
    if (j_->is_number()) return number();
    if (!j_->is_array() || j_->size() != 2) fail("expected a number or an [re, im] pair");
    return {at(0).number(), at(1).number()};
  }

  Vector vector(std::optional<int> n = std::nullopt) const {
    const auto len = size();
    if (n && static_cast<int>(len) != *n) {
      fail("expected " + std::to_string(*n) + " entries, got " + std::to_string(len));
    }
    Vector v(static_cast<Eigen::Index>(len));
    for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i)) = at(i).complex();
    return v;
  }

  Matrix matrix(std::optional<int> n = std::nullopt) const {
    const auto rows = size();
    if (rows == 0) fail("empty matrix");
    const int cols = n ? *n : static_cast<int>(rows);
    if (n && static_cast<int>(rows) != *n) {
      fail("expected " + std::to_string(*n) + " rows, got " + std::to_string(rows));
    }
    Matrix m(static_cast<Eigen::Index>(rows), cols);
    for (std::size_t r = 0; r < rows; ++r) {
      m.row(static_cast<Eigen::Index>(r)) = at(r).vector(cols).transpose();
    }
    return m;
  }

  GroupElement group_element(int n) const {
    return guard([&] { return GroupElement(matrix(n)); });
  }

  ProjPoint point() const {
    if (j_->is_string()) {
      const auto s = string();
      if (s == "inf" || s == "infinity") return ProjPoint::infinity();
      fail("unknown point '" + s + "'");
    }
    if (j_->is_array() && j_->size() == 2 && (*j_)[0].is_array()) {
      return guard([&] { return ProjPoint(at(0).complex(), at(1).complex()); });
    }
    return ProjPoint::affine(complex());
  }

  CompleteFlag flag(int n) const {
    if (has("veronese")) return veronese((*this)["veronese"].point(), n);
    const Node vectors = (*this)["vectors"];
    if (static_cast<int>(vectors.size()) != n) {
      vectors.fail("expected " + std::to_string(n) + " vectors, got " +
                   std::to_string(vectors.size()));
    }
    Matrix basis(n, n);
    for (int i = 0; i < n; ++i) basis.col(i) = vectors.at(static_cast<std::size_t>(i)).vector(n);
    return guard([&] { return CompleteFlag(basis); });
  }

  // Rewraps validation errors raised by library constructors with this path.
  template <class F>
  auto guard(F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const InputError& e) {
      fail(e.what());
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }

 private:
  const Json* j_;
  std::string path_;
};

std::shared_ptr<const GroupPresentation> load_presentation(const Node& node, std::string& name) {
  if (node.json().is_string()) {
    name = node.string();
    if (name != "figure-eight") node.fail("unknown presentation '" + name + "'");
    return std::make_shared<const GroupPresentation>(GroupPresentation::figure_eight());
  }
  name = "custom";
  const Node gens = node["generators"];
  std::vector<std::string> names;
  std::vector<GroupElement> matrices;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Node g = gens.at(i);
    names.push_back(g["name"].string());
    matrices.push_back(g["matrix"].group_element(2));
  }
  std::vector<std::string> relators;
  const Node rel = node["relators"];
  for (std::size_t i = 0; i < rel.size(); ++i) relators.push_back(rel.at(i).string());
  return node.guard([&] {
    return std::make_shared<const GroupPresentation>(std::move(names), std::move(matrices),
                                                     relators);
  });
}

std::shared_ptr<const FiniteGammaSpace> load_space(const Node& node, const GroupPresentation& p) {
  if (node.has("orbits")) {
    const Node orbits = node["orbits"];
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < orbits.size(); ++i) sizes.push_back(orbits.at(i).count(1));
    std::vector<double> mass;
    if (auto m = node.optional("mass")) {
      if (m->size() != sizes.size()) m->fail("one mass per orbit required");
      for (std::size_t i = 0; i < m->size(); ++i) mass.push_back(m->at(i).number());
    } else {
      double total = 0.0;
      for (auto s : sizes) total += static_cast<double>(s);
      for (auto s : sizes) mass.push_back(static_cast<double>(s) / total);
    }
    std::vector<long> steps;
    if (auto st = node.optional("steps")) {
      for (std::size_t g = 0; g < p.size(); ++g) steps.push_back(static_cast<long>((*st)[p.name(g)].integer()));
    }
    return node.guard([&] {
      return std::make_shared<const FiniteGammaSpace>(FiniteGammaSpace::cyclic(sizes, mass, p, steps));
    });
  }
  const Node weights = node["weights"];
  std::vector<double> w;
  for (std::size_t i = 0; i < weights.size(); ++i) w.push_back(weights.at(i).number());
  const Node actions = node["actions"];
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t g = 0; g < p.size(); ++g) {
    const Node a = actions[p.name(g)];
    std::vector<std::size_t> perm;
    for (std::size_t x = 0; x < a.size(); ++x) {
      const auto target = a.at(x).count();
      if (target >= w.size()) a.at(x).fail("point " + std::to_string(target) + " does not exist");
      perm.push_back(target);
    }
    perms.push_back(std::move(perm));
  }
  return node.guard(
      [&] { return std::make_shared<const FiniteGammaSpace>(std::move(w), std::move(perms), p); });
}

std::optional<TwistMap> load_twist(const Node& node, int n, std::size_t points) {
  if (node.json().is_object()) {
    const auto seed = static_cast<std::uint64_t>(node["random_seed"].integer());
    const double cond = node.has("max_condition") ? node["max_condition"].number() : 10.0;
    if (!(cond > 1.0)) node["max_condition"].fail("must exceed 1");
    Rng rng = derived_rng(seed, 0);
    return TwistMap::random(rng, n, points, cond);
  }
  if (node.size() != points) {
    node.fail("expected one matrix per point (" + std::to_string(points) + ")");
  }
  std::vector<GroupElement> values;
  for (std::size_t x = 0; x < points; ++x) values.push_back(node.at(x).group_element(n));
  return TwistMap(std::move(values));
}

void load_estimator(const Node& node, EstimatorOptions& opt) {
  if (auto v = node.optional("samples")) opt.samples = v->count(1);
  if (auto v = node.optional("seed")) opt.seed = static_cast<std::uint64_t>(v->count());
  if (auto v = node.optional("workers")) opt.workers = static_cast<unsigned>(v->count(1));
  if (auto v = node.optional("tol")) opt.maximal_tol = v->number();
  if (auto v = node.optional("equivariance_tol")) opt.equivariance_tol = v->number();
  if (auto v = node.optional("equivariance_samples")) opt.equivariance_samples = v->count(1);
}

void load_trivialize(const Node& node, TrivializeOptions& opt) {
  if (auto v = node.optional("samples_per_slice")) opt.samples_per_slice = v->count(1);
  if (auto v = node.optional("certificate_samples")) opt.certificate_samples = v->count(1);
  if (auto v = node.optional("certificate_tol")) opt.certificate_tol = v->number();
  if (auto v = node.optional("alignment_tol")) opt.alignment_tol = v->number();
  if (auto v = node.optional("verification_tol")) opt.verification_tol = v->number();
}

}  // namespace

Experiment load_experiment(const Json& doc, std::optional<int> n_override) {
  const Node root(doc, "$");
  if (!doc.is_object()) root.fail("expected an object");
  Experiment e;
  e.presentation = load_presentation(root["presentation"], e.presentation_name);
  const auto& p = *e.presentation;
  e.space = load_space(root["space"], p);
  const std::size_t points = e.space->size();

  const Node cocycle = root["cocycle"];
  e.cocycle_kind = cocycle["kind"].string();
  if (auto part = cocycle.optional("partition")) {
    std::vector<int> parts;
    for (std::size_t i = 0; i < part->size(); ++i) parts.push_back(static_cast<int>(part->at(i).count(1)));
    e.partition = part->guard([&] { return Partition(parts); });
  }

  std::optional<int> n;
  if (auto v = root.optional("n")) n = static_cast<int>(v->count(1));
  if (n_override) n = n_override;
  if (e.partition) {
    if (n && *n != e.partition->total()) {
      cocycle["partition"].fail("partition sums to " + std::to_string(e.partition->total()) +
                                " but n = " + std::to_string(*n));
    }
    n = e.partition->total();
  }
  if (!n) root.fail("missing field 'n'");
  if (*n < 1 || *n > 12) root.fail("n must lie in 1..12");
  e.n = *n;

  Cocycle sigma = [&]() -> Cocycle {
    if (e.cocycle_kind == "representation") {
      std::vector<GroupElement> rho;
      if (auto m = cocycle.optional("matrices")) {
        for (std::size_t g = 0; g < p.size(); ++g) rho.push_back((*m)[p.name(g)].group_element(e.n));
      } else {
        rho = irreducible_representation(p, e.n);
      }
      return cocycle.guard([&] { return cocycle_from_representation(e.presentation, e.space, rho); });
    }
    if (e.cocycle_kind == "block") {
      if (!e.partition) cocycle.fail("block cocycle needs a partition");
      return cocycle.guard(
          [&] { return block_diagonal_cocycle(e.presentation, e.space, *e.partition); });
    }
    if (e.cocycle_kind == "table") {
      const Node table = cocycle["table"];
      std::vector<std::vector<GroupElement>> entries;
      for (std::size_t g = 0; g < p.size(); ++g) {
        const Node row = table[p.name(g)];
        if (row.size() != points) row.fail("expected one matrix per point (" + std::to_string(points) + ")");
        std::vector<GroupElement> values;
        for (std::size_t x = 0; x < points; ++x) values.push_back(row.at(x).group_element(e.n));
        entries.push_back(std::move(values));
      }
      return cocycle.guard([&] { return Cocycle(e.presentation, e.space, std::move(entries)); });
    }
    cocycle["kind"].fail("unknown cocycle kind '" + e.cocycle_kind + "'");
  }();

  std::optional<TwistMap> twist_map;
  if (auto t = root.optional("twist")) twist_map = load_twist(*t, e.n, points);
  e.twisted = twist_map.has_value();
  if (auto c = root.optional("conjugate")) e.conjugated = c->boolean();

  if (!root.has("boundary")) root.fail("missing boundary map (field 'boundary')");
  const Node boundary = root["boundary"];
  e.boundary_kind = boundary["kind"].string();
  bool twist_boundary = boundary.has("twisted") && boundary["twisted"].boolean();
  BoundaryMap phi = [&]() -> BoundaryMap {
    const auto& kind = e.boundary_kind;
    if (kind == "veronese") return BoundaryMap::veronese(e.n);
    if (kind == "twisted-veronese") {
      twist_boundary = true;
      return BoundaryMap::veronese(e.n);
    }
    if (kind == "block") {
      if (!e.partition) boundary.fail("block boundary map needs a partition on the cocycle");
      return block_boundary(*e.partition);
    }
    if (kind == "random") {
      return BoundaryMap::random(e.n, static_cast<std::uint64_t>(boundary["seed"].count()));
    }
    if (kind == "constant") return BoundaryMap::constant(boundary["flag"].flag(e.n));
    if (kind == "table") {
      const Node samples = boundary["samples"];
      std::vector<BoundaryMap::Sample> entries;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const Node s = samples.at(i);
        const auto x = s["point"].count();
        if (x >= points) s["point"].fail("point " + std::to_string(x) + " does not exist");
        entries.push_back({x, s["xi"].point(), s["flag"].flag(e.n)});
      }
      return boundary.guard([&] { return BoundaryMap::table(e.n, std::move(entries)); });
    }
    boundary["kind"].fail("unknown boundary kind '" + kind + "'");
  }();
  if (twist_boundary) {
    if (!twist_map) boundary.fail("twisted boundary map but the document has no twist");
    if (phi.is_table()) boundary.fail("tables are stored already twisted");
    phi = phi.twisted_by(*twist_map);
  }
  if (auto c = boundary.optional("corrupt")) {
    const auto x = (*c)["point"].count();
    if (x >= points) (*c)["point"].fail("point " + std::to_string(x) + " does not exist");
    GroupElement g = GroupElement::identity(e.n);
    if (c->has("matrix")) {
      g = (*c)["matrix"].group_element(e.n);
    } else {
      Rng rng = derived_rng(static_cast<std::uint64_t>((*c)["seed"].count()), 0);
      g = random_gl(rng, e.n);
    }
    phi = c->guard([&] { return phi.with_corrupted_point(x, g); });
  }

  if (twist_map) sigma = cocycle.guard([&] { return twist(sigma, *twist_map); });
  if (e.conjugated) {
    sigma = sigma.conjugate();
    phi = phi.conjugate();
  }
  if (phi.dim() != e.n) boundary.fail("boundary map dimension does not match n");
  e.cocycle = std::make_shared<const Cocycle>(std::move(sigma));
  e.boundary = std::make_shared<const BoundaryMap>(std::move(phi));

  if (auto v = root.optional("volume")) {
    e.volume = v->number();
    if (!(*e.volume > 0.0)) v->fail("volume must be positive");
  } else if (e.presentation_name == "figure-eight") {
    e.volume = figure_eight_volume();
  }
  if (auto est = root.optional("estimator")) load_estimator(*est, e.estimator);
  e.trivialize.seed = e.estimator.seed;
  e.trivialize.workers = e.estimator.workers;
  if (auto t = root.optional("trivialize")) load_trivialize(*t, e.trivialize);
  return e;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    std::ostringstream msg;
    msg << path.string() << ": invalid JSON at byte " << err.byte << ": " << err.what();
    throw InputError(msg.str());
  }
}

Quadruple<CompleteFlag> load_flags(const Json& doc, std::optional<int> n_override) {
  const Node root(doc, "$");
  std::optional<int> n;
  if (auto v = root.optional("n")) n = static_cast<int>(v->count(1));
  if (n_override) {
    if (n && *n != *n_override) {
      root["n"].fail("document has n = " + std::to_string(*n) + " but --n is " +
                     std::to_string(*n_override));
    }
    n = n_override;
  }
  if (!n) root.fail("missing field 'n'");
  const Node flags = root["flags"];
  if (flags.size() != 4) flags.fail("expected four flags");
  return {flags.at(0).flag(*n), flags.at(1).flag(*n), flags.at(2).flag(*n), flags.at(3).flag(*n)};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json point_to_json(const ProjPoint& p) {
  const auto q = p.normalized();
  return Json::array({complex_to_json(q.x()), complex_to_json(q.y())});
}

Json report_to_json(const EstimatorReport& r, std::optional<double> volume) {
  Json j = {{"n", r.n},
            {"lambda", r.lambda},
            {"standard_error", r.standard_error},
            {"samples", r.samples},
            {"seed", r.seed},
            {"workers", r.workers},
            {"sample_min", r.sample_min},
            {"sample_max", r.sample_max},
            {"equivariance_residual", r.equivariance_residual},
            {"bound", r.bound},
            {"maximal", r.maximal},
            {"heuristic", r.heuristic},
            {"nu3", nu3()}};
  if (volume) {
    j["volume"] = *volume;
    j["beta"] = r.lambda * *volume;
  }
  return j;
}

Json trivialization_to_json(const Trivialization& t, const Experiment& e) {
  Json f = Json::array();
  for (const auto& g : t.f) f.push_back(matrix_to_json(g.matrix()));
  Json verification = Json::object();
  for (std::size_t g = 0; g < t.verification.size(); ++g) {
    verification[e.presentation->name(g)] = t.verification[g];
  }
  Json certificate = Json::array();
  for (const auto& s : t.certificate.slices) {
    certificate.push_back({{"point", s.point},
                           {"samples", s.samples},
                           {"fraction", s.fraction},
                           {"sign", s.sign},
                           {"best_ratio", s.best_ratio}});
  }
  return {{"n", e.n},
          {"branch", to_string(t.branch)},
          {"residual", t.residual},
          {"verified", t.verified},
          {"slice_residuals", t.slice_residuals},
          {"verification", verification},
          {"certificate", certificate},
          {"f", f}};
}

}  // namespace borelrig
