#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ghm/io.hpp"
#include "ghm/solvers.hpp"
#include "ghm/space.hpp"

namespace ghm {

enum class Quantity { GH, mGH, Ratio };
enum class Comparison { Eq, Ge, Le };

/// A checked statement about one instance, e.g. {"id": "ultrametric.mgh_half",
/// "quantity": "mgh", "op": "eq", "value": 0.5}.
struct AssertionSpec {
  std::string id;
  Quantity quantity = Quantity::GH;
  Comparison op = Comparison::Eq;
  double value = 0.0;
  std::optional<double> tolerance;  // default: exact for integer spaces, 1e-9 otherwise
};

struct InstanceSpec {
  std::string id;
  json params = json::object();  // free-form, shown in the table
  std::vector<FiniteMetricSpace> spaces;  // exactly two: X then Y
  bool gh = true;
  bool mgh = true;
  bool simplex = false;  // Y must be a regular simplex
  std::vector<AssertionSpec> assertions;
};

struct ExperimentManifest {
  std::string name;
  std::optional<std::filesystem::path> output;
  SolverBudget budget;
  std::vector<InstanceSpec> instances;
  std::uint64_t hash = 0;  // FNV-1a of the manifest text
};

std::uint64_t fnv1a64(const std::string& text);

/// Parses a manifest; relative file references resolve against `base_dir`.
ExperimentManifest parse_manifest(const std::string& text,
                                  const std::filesystem::path& base_dir = ".");
ExperimentManifest load_manifest(const std::filesystem::path& path);

struct AssertionOutcome {
  AssertionSpec spec;
  double actual = 0.0;
  bool passed = false;
  std::string note;
};

struct InstanceRecord {
  std::string id;
  json params;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::optional<DistanceResult> gh;
  std::optional<DistanceResult> mgh;
  std::optional<double> ratio;  // gh / mgh
  std::vector<AssertionOutcome> assertions;
  double seconds = 0.0;
};

struct RunRecord {
  std::string name;
  std::uint64_t manifest_hash = 0;
  std::vector<InstanceRecord> instances;  // manifest order
  double seconds = 0.0;

  bool passed() const;
};

RunRecord run_experiment(const ExperimentManifest& manifest);

json record_to_json(const RunRecord& record);
std::string record_table(const RunRecord& record);

}  // namespace ghm
