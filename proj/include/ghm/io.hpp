#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ghm/audit.hpp"
#include "ghm/constructions.hpp"
#include "ghm/mapping.hpp"
#include "ghm/relaxation.hpp"
#include "ghm/solvers.hpp"
#include "ghm/space.hpp"

namespace ghm {

using json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpaceFormat { Json, Csv };

SpaceFormat parse_format(const std::string& name);
/// From the file extension; anything but ".csv" is JSON.
SpaceFormat format_for(const std::filesystem::path& path);

// Space: {"n": int, "labels": [string]?, "d": [[real]]}. Integer-valued
// entries are written as JSON integers.
json space_to_json(const FiniteMetricSpace& s);
FiniteMetricSpace space_from_json(const json& j, double tolerance = kDefaultMetricTolerance);

/// n rows of n comma-separated reals, optionally preceded by a label row.
std::string space_to_csv(const FiniteMetricSpace& s);
FiniteMetricSpace space_from_csv(const std::string& text,
                                 double tolerance = kDefaultMetricTolerance);

/// Rows of point coordinates (optionally with a header) to a Euclidean space.
FiniteMetricSpace space_from_coordinates_csv(const std::string& text,
                                             double tolerance = kDefaultMetricTolerance);

FiniteMetricSpace read_space(const std::filesystem::path& path,
                             double tolerance = kDefaultMetricTolerance);
void write_space(const std::filesystem::path& path, const FiniteMetricSpace& s,
                 SpaceFormat format);
std::string serialize_space(const FiniteMetricSpace& s, SpaceFormat format);

// Mapping: {"source_n": int, "target_n": int, "image": [int]}.
json mapping_to_json(const Mapping& f);
Mapping mapping_from_json(const json& j);

json result_to_json(const DistanceResult& r);
json relax_to_json(const RelaxResult& r);
json net_to_json(const EpsilonNet& net, const FiniteMetricSpace& parent);

// SpaceSpec: {"kind": string, "params": {...}}.
json spec_to_json(const SpaceSpec& spec);
SpaceSpec spec_from_json(const json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ghm
