#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "borelrig/borel.hpp"
#include "borelrig/invariant.hpp"
#include "borelrig/rigidity.hpp"

namespace borelrig {

using Json = nlohmann::json;

/// Experiment described by a JSON document. Complex numbers are [re, im]
/// pairs (plain numbers are read as reals), matrices are row-major arrays of
/// rows, points of P^1 are "inf", an affine coordinate or a homogeneous pair
/// of complex numbers, and flags are {"vectors": [v1, ..., vn]} or
/// {"veronese": point}.
struct Experiment {
  int n = 0;
  std::string presentation_name;
  std::shared_ptr<const GroupPresentation> presentation;
  std::shared_ptr<const FiniteGammaSpace> space;
  std::shared_ptr<const Cocycle> cocycle;
  std::shared_ptr<const BoundaryMap> boundary;
  std::optional<Partition> partition;
  std::string cocycle_kind;
  std::string boundary_kind;
  bool twisted = false;
  bool conjugated = false;
  /// Vol(M); defaults to the figure-eight volume for the bundled presentation.
  std::optional<double> volume;
  EstimatorOptions estimator;
  TrivializeOptions trivialize;
};

/// Parses and validates a document. Every error is an InputError prefixed
/// with the JSON path of the offending field. `n_override` replaces the
/// document's "n".
Experiment load_experiment(const Json& doc, std::optional<int> n_override = std::nullopt);

/// Reads a JSON file; syntax errors are reported with their byte offset.
Json read_json_file(const std::filesystem::path& path);

/// The four flags of an eval-borel document {"n": n, "flags": [f0, f1, f2, f3]}.
Quadruple<CompleteFlag> load_flags(const Json& doc, std::optional<int> n_override = std::nullopt);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
Json point_to_json(const ProjPoint& p);

Json report_to_json(const EstimatorReport& r, std::optional<double> volume);
Json trivialization_to_json(const Trivialization& t, const Experiment& e);

}  // namespace borelrig
