#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghm/space.hpp"

namespace ghm {

/// Largest k accepted by u_space (|U_20| = 1024 points).
inline constexpr unsigned kMaxUSequenceIndex = 20;

/// Thrown when a disjoint-union sum does not satisfy the triangle inequality.
class ResultNotMetric : public MetricError {
 public:
  ResultNotMetric(MetricViolation kind, std::vector<std::size_t> witness)
      : MetricError(kind, std::move(witness), "ResultNotMetric: ") {}
};

using SpacePair = std::pair<FiniteMetricSpace, FiniteMetricSpace>;

/// m points with every non-trivial distance equal to `lambda`.
FiniteMetricSpace regular_simplex(std::size_t m, double lambda);

/// Disjoint union of x and y (x's points first) with every cross distance `a`.
/// The result is a metric iff 2a >= max(diam x, diam y); it is ultrametric
/// when additionally x, y are ultrametric and a >= max(diam x, diam y).
FiniteMetricSpace disjoint_union_sum(const FiniteMetricSpace& x,
                                     const FiniteMetricSpace& y, double a);

/// U_0 = point, U_1 = two points at distance 1, U_k = U_{k-2} (+)_k U_{k-2}.
/// Points are ordered left block then right block, recursively.
FiniteMetricSpace u_space(unsigned k);

/// (U_{k+1}, U_k (+)_{k+2} U_0): ultrametric pair with small mGH but large GH.
SpacePair counterexample_pair(unsigned k);

/// Path metric on n+1 points (d = |i - j|) and a 2-point simplex of diameter 2n.
SpacePair tight_pair(unsigned n);

/// Seeded Euclidean point cloud in a box of random dimension (1..3), rescaled
/// so its diameter is `diam_target`.
FiniteMetricSpace random_metric(std::size_t n, std::uint64_t seed, double diam_target);

/// Seeded ultrametric obtained by merging random clusters at strictly
/// increasing heights; the final merge sits at exactly `diam_target`.
FiniteMetricSpace random_ultrametric(std::size_t n, std::uint64_t seed, double diam_target);

/// (m, lambda) when x is a regular simplex (exact comparison), else nullopt.
/// A singleton reports lambda = 0.
std::optional<std::pair<std::size_t, double>> as_regular_simplex(const FiniteMetricSpace& x);

enum class SpaceKind {
  Simplex,
  USequence,
  UnionSum,
  CounterexamplePair,
  TightPair,
  RandomMetric,
  RandomUltrametric,
};

std::string to_string(SpaceKind kind);
SpaceKind parse_space_kind(const std::string& name);

/// Declarative generator parameters. Only the fields relevant to `kind` are
/// read: simplex (m, diam), u_sequence (k), union_sum (parts[2], a),
/// counterexample_pair (k), tight_pair (n), random_* (n, seed, diam).
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Simplex;
  std::size_t n = 1;
  std::size_t m = 1;
  unsigned k = 0;
  double diam = 1.0;
  double a = 0.0;
  std::uint64_t seed = 0;
  std::vector<SpaceSpec> parts;
  /// union_sum only: reject outputs that are not ultrametric.
  bool require_ultrametric = false;
};

/// One space for most kinds, two for the pair kinds.
std::vector<FiniteMetricSpace> generate(const SpaceSpec& spec);

}  // namespace ghm
