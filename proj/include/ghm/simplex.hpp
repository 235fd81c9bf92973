#pragma once

#include <cstddef>

#include "ghm/mapping.hpp"
#include "ghm/solvers.hpp"
#include "ghm/space.hpp"

namespace ghm {

/// Distortion of f: X -> regular simplex (m points, diameter lambda) from the
/// partition structure of f: the largest fibre diameter, diam X - lambda, and
/// lambda - (smallest distance between points with different images).
double simplex_distortion(const Mapping& f, const FiniteMetricSpace& x, double lambda);

/// Exact GH distance from X to the regular simplex with m points and
/// diameter lambda. Uses the closed form when m > |X|, otherwise a
/// branch-and-bound over partitions of X into exactly m blocks.
DistanceResult gh_to_simplex(const FiniteMetricSpace& x, std::size_t m, double lambda,
                             const SolverBudget& budget = {});

/// Exact mGH distance from X to the same simplex: the best map into the
/// simplex (at most m blocks) and the best map out of it (an injection onto
/// an m-subset of X, or a collapse costing lambda).
DistanceResult mgh_to_simplex(const FiniteMetricSpace& x, std::size_t m, double lambda,
                              const SolverBudget& budget = {});

}  // namespace ghm
