#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "borelrig/dilog.hpp"
#include "borelrig/document.hpp"
#include "borelrig/errors.hpp"

using namespace borelrig;

namespace {

Json base_document() {
  return Json::parse(R"({
    "n": 3,
    "presentation": "figure-eight",
    "space": {"orbits": [2, 3], "mass": [0.25, 0.75]},
    "cocycle": {"kind": "representation"},
    "boundary": {"kind": "veronese"}
  })");
}

std::string error_of(const Json& doc) {
  try {
    load_experiment(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal document") {
  const auto e = load_experiment(base_document());
  CHECK(e.n == 3);
  CHECK(e.space->size() == 5);
  CHECK(std::abs(e.space->weight(0) - 0.125) < 1e-15);
  CHECK(e.cocycle->dim() == 3);
  CHECK(e.boundary->kind() == "veronese");
  REQUIRE(e.volume.has_value());
  CHECK(std::abs(*e.volume - 2.0 * nu3()) < 1e-15);
  CHECK(check_equivariance(*e.boundary, *e.cocycle, 4, 1) < 1e-8);
}

TEST_CASE("n override and partitions") {
  CHECK(load_experiment(base_document(), 4).n == 4);
  auto doc = base_document();
  doc.erase("n");
  CHECK(error_of(doc).find("missing field 'n'") != std::string::npos);
  doc["cocycle"] = {{"kind", "block"}, {"partition", {2, 1}}};
  doc["boundary"] = {{"kind", "block"}};
  CHECK(load_experiment(doc).n == 3);
  CHECK_THROWS_AS(load_experiment(doc, 4), InputError);
}

TEST_CASE("twist and conjugation keep the pair equivariant") {
  auto doc = base_document();
  doc["twist"] = {{"random_seed", 3}};
  doc["boundary"] = {{"kind", "twisted-veronese"}};
  doc["conjugate"] = true;
  const auto e = load_experiment(doc);
  CHECK(e.twisted);
  CHECK(e.conjugated);
  CHECK(check_equivariance(*e.boundary, *e.cocycle, 4, 1) < 1e-8);
  doc["boundary"] = {{"kind", "veronese"}};
  const auto untwisted = load_experiment(doc);
  CHECK(check_equivariance(*untwisted.boundary, *untwisted.cocycle, 4, 1) > 0.1);
}

TEST_CASE("explicit matrices, custom spaces and tables") {
  auto doc = base_document();
  doc["space"] = Json::parse(R"({"weights": [0.5, 0.5], "actions": {"a": [1, 0], "b": [1, 0]}})");
  doc["twist"] = Json::parse(R"([
    [[1, 0, 0], [0, [0, 2], 0], [0, 0, 1]],
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
  ])");
  doc["boundary"] = {{"kind", "twisted-veronese"}};
  const auto e = load_experiment(doc);
  CHECK(e.cocycle->at(0, 0).dim() == 3);
  CHECK(check_equivariance(*e.boundary, *e.cocycle, 4, 1) < 1e-8);

  Json table = Json::object();
  for (std::size_t g = 0; g < 2; ++g) {
    Json row = Json::array();
    for (std::size_t x = 0; x < 2; ++x) row.push_back(matrix_to_json(e.cocycle->at(g, x).matrix()));
    table[e.presentation->name(g)] = row;
  }
  auto tdoc = base_document();
  tdoc["space"] = doc["space"];
  tdoc["cocycle"] = {{"kind", "table"}, {"table", table}};
  tdoc["boundary"] = {{"kind", "constant"}, {"flag", {{"vectors", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}}};
  const auto t = load_experiment(tdoc);
  CHECK(projective_distance(t.cocycle->at(1, 1), e.cocycle->at(1, 1)) < 1e-12);
}

TEST_CASE("errors carry the JSON path") {
  auto doc = base_document();
  doc["space"]["orbits"][1] = 0;
  CHECK(error_of(doc).find("$.space.orbits[1]") != std::string::npos);

  doc = base_document();
  doc["twist"] = Json::array({Json::parse("[[1,0,0],[0,1,0],[0,0,0]]")});
  CHECK(error_of(doc).find("$.twist") != std::string::npos);

  doc = base_document();
  doc["twist"] = {{"random_seed", 1}};
  doc["boundary"] = {{"kind", "constant"}, {"flag", {{"vectors", {{1, 0, 0}, {2, 0, 0}, {0, 0, 1}}}}}};
  CHECK(error_of(doc).find("$.boundary.flag") != std::string::npos);

  doc = base_document();
  doc["cocycle"] = {{"kind", "representation"}, {"matrices", {{"a", Json::parse("[[1,0,0],[0,1,0],[0,0,1]]")}}}};
  CHECK(error_of(doc).find("$.cocycle.matrices") != std::string::npos);

  doc = base_document();
  doc["boundary"] = {{"kind", "spline"}};
  CHECK(error_of(doc).find("$.boundary.kind") != std::string::npos);

  doc = base_document();
  doc.erase("boundary");
  CHECK(error_of(doc).find("missing boundary map") != std::string::npos);

  doc = base_document();
  doc["presentation"] = "trefoil";
  CHECK(error_of(doc).find("$.presentation") != std::string::npos);

  doc = base_document();
  doc["boundary"] = {{"kind", "twisted-veronese"}};
  CHECK(error_of(doc).find("no twist") != std::string::npos);

  doc = base_document();
  doc["space"] = Json::parse(R"({"weights": [0.5, 0.5], "actions": {"a": [1, 0], "b": [0, 1]}})");
  CHECK(error_of(doc).find("$.space") != std::string::npos);

  doc = base_document();
  doc["space"]["steps"] = {{"a", 1}, {"b", 1}};
  CHECK(error_of(doc).find("$.space") != std::string::npos);
  doc["space"]["steps"] = {{"a", 2}, {"b", -2}};
  CHECK(error_of(doc).empty());

  doc = base_document();
  doc["estimator"] = {{"samples", 0}};
  CHECK(error_of(doc).find("$.estimator.samples") != std::string::npos);
}

TEST_CASE("points and flags") {
  const auto quad = load_flags(Json::parse(R"({
    "n": 2,
    "flags": [{"veronese": 0}, {"veronese": [[1, 0], [1, 0]]}, {"veronese": [0.5, 0.8660254037844386]}, {"veronese": "inf"}]
  })"));
  CHECK(same_flag(quad[1], veronese(ProjPoint::affine(1.0), 2)));
  CHECK(same_flag(quad[3], veronese(ProjPoint::infinity(), 2)));
  CHECK_THROWS_AS(load_flags(Json::parse(R"({"n": 2, "flags": [{"veronese": 0}]})")), InputError);
  CHECK_THROWS_AS(load_flags(Json::parse(R"({"n": 2, "flags": []})"), 3), InputError);
  try {
    load_flags(Json::parse(R"({"n": 2, "flags": [{"veronese": 0}, {"veronese": [[0, 0], [0, 0]]}, {"veronese": 1}, {"veronese": 2}]})"));
    FAIL("zero point accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("$.flags[1].veronese") != std::string::npos);
  }
}

TEST_CASE("json output helpers") {
  CHECK(complex_to_json({1.5, -2.0}) == Json::parse("[1.5, -2.0]"));
  Matrix m(1, 2);
  m << Complex(1, 0), Complex(0, 1);
  CHECK(matrix_to_json(m) == Json::parse("[[[1.0, 0.0], [0.0, 1.0]]]"));
  CHECK(point_to_json(ProjPoint::infinity()) == Json::parse("[[1.0, 0.0], [0.0, 0.0]]"));
}

TEST_CASE("bundled documents load") {
  for (const char* name : {"figure_eight_pi3", "figure_eight_pi3_twisted", "figure_eight_pi3_conjugate",
                           "figure_eight_diagonal", "figure_eight_block21", "figure_eight_corrupted",
                           "figure_eight_random_flags"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_experiment(read_json_file(std::string(BORELRIG_DATA_DIR) + "/" + name + ".json")));
  }
  CHECK_THROWS_AS(read_json_file(std::string(BORELRIG_DATA_DIR) + "/missing.json"), InputError);
}
