#pragma once

#include <cstddef>
#include <vector>

#include "ghm/solvers.hpp"
#include "ghm/space.hpp"

namespace ghm {

/// Chains X_0 = X, X_1 = g(Y), X_k = (g o f)(X_{k-2}) and the mirrored Y_k,
/// built from an optimal mGH certificate, together with the resulting upper
/// bounds on the GH distance.
struct NestedSequenceReport {
  DistanceResult mgh;
  DistanceResult gh;
  std::vector<std::vector<std::size_t>> x_chain;  // up to and including stabilisation
  std::vector<std::vector<std::size_t>> y_chain;
  std::size_t x_stable = 0;  // first k with X_k = X_{k+1}
  std::size_t y_stable = 0;
  std::size_t k_star = 0;    // min of the two
  std::size_t n = 0;         // min{|X|, |Y|}
  double stabilisation_bound = 0.0;  // (2 k* + 1) * mGH
  double size_bound = 0.0;           // (2 n - 1) * mGH
  bool stabilisation_holds = false;
  bool size_bound_holds = false;
  bool exact = true;
};

NestedSequenceReport nested_sequence_audit(const FiniteMetricSpace& x,
                                           const FiniteMetricSpace& y,
                                           const SolverBudget& budget = {});

/// Chain of images starting at all of `source` points: S_0 = all,
/// S_1 = second(all of other side), S_k = (second o first)(S_{k-2}).
/// Returned until the first k with S_k = S_{k+1} (that S_{k+1} included).
std::vector<std::vector<std::size_t>> nested_chain(const Mapping& first, const Mapping& second);

/// GH and mGH on the full spaces versus on their greedy epsilon-nets.
struct EpsilonNetReport {
  double epsilon = 0.0;
  EpsilonNet x_net;
  EpsilonNet y_net;
  DistanceResult gh_full, gh_net;
  DistanceResult mgh_full, mgh_net;
  double gh_gap = 0.0;
  double mgh_gap = 0.0;
  bool holds = false;
  bool exact = true;
};

EpsilonNetReport epsilon_net_audit(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   double epsilon, const SolverBudget& budget = {});

/// Same audit reusing already computed full-space distances.
EpsilonNetReport epsilon_net_audit(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   double epsilon, const DistanceResult& gh_full,
                                   const DistanceResult& mgh_full,
                                   const SolverBudget& budget = {});

}  // namespace ghm
