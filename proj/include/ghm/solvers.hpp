#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ghm/mapping.hpp"
#include "ghm/space.hpp"

namespace ghm {

/// Absolute slack used when checking inequalities between distances of
/// non-integer spaces. Integer-valued inputs are compared exactly.
inline constexpr double kValueTolerance = 1e-9;

/// 0 when both spaces have integer distances, kValueTolerance otherwise.
double comparison_slack(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Search limits. An unset field means "unlimited".
struct SolverBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> time_limit;  // seconds
  /// Worker threads for the GH search; 0 reads GH_METRIC_THREADS (default 1).
  unsigned threads = 0;
};

/// Effective worker count for `budget`, capped by GH_METRIC_THREADS.
unsigned worker_count(const SolverBudget& budget);

enum class DistanceKind { GH, mGH };

std::string to_string(DistanceKind kind);

/// A distance together with the mappings that realize it. For GH the
/// certificate is a pair (f, g) with value = max{dis f, dis g, codis}/2; for
/// mGH f and g are independent optima with value = max{dis f, dis g}/2.
/// When `exact` is false the search ran out of budget and value is the best
/// upper bound found.
struct DistanceResult {
  double value = 0.0;
  DistanceKind kind = DistanceKind::GH;
  MappingPair certificate;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::uint64_t nodes_explored = 0;
  bool exact = true;
};

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// (|diam X - diam Y| / 2, max{diam X, diam Y} / 2).
Bounds analytic_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Minimum distortion over all maps X -> Y.
struct DirectionalResult {
  double distortion = 0.0;
  Mapping map;
  double lower_bound = 0.0;
  std::uint64_t nodes_explored = 0;
  bool exact = true;
};

DirectionalResult min_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                 const SolverBudget& budget = {});

/// Exact modified GH distance by two independent branch-and-bound searches.
DistanceResult exact_mgh(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                         const SolverBudget& budget = {});

/// Exact GH distance by branch-and-bound over mapping pairs.
DistanceResult exact_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        const SolverBudget& budget = {});

}  // namespace ghm
