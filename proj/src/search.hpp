#pragma once

// Bottleneck assignment search shared by the GH and mGH solvers.
//
// Variables are the points of X (valued in Y, the map f) and optionally the
// points of Y (valued in X, the map g). Every constraint is binary: the
// objective is the largest pairwise term over all assigned variables, where a
// term is one summand of dis f, dis g or codis(f, g). The search is a
// depth-first branch-and-bound with forward checking: each unassigned
// variable keeps, per candidate value, the largest term it would create with
// the variables assigned so far.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <vector>

#include "ghm/solvers.hpp"
#include "ghm/space.hpp"

namespace ghm::detail {

struct SearchOutcome {
  double best = 0.0;
  std::vector<std::size_t> assignment;  // f values then g values
  std::uint64_t nodes = 0;
  bool complete = true;  // false when the budget stopped the search
};

class BottleneckSearch {
 public:
  BottleneckSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y, bool with_inverse);

  /// Looks for an assignment whose objective is strictly below `incumbent`.
  /// Stops as soon as the best value reaches `floor` (a proven lower bound).
  SearchOutcome run(double incumbent, std::vector<std::size_t> incumbent_assignment,
                    double floor, const SolverBudget& budget) const;

 private:
  struct Variable {
    bool in_x;           // point of X assigned a value in Y
    std::size_t point;
    std::size_t domain;
    double spread;
  };
  struct Shared;
  struct Worker;

  double term(std::size_t a, std::size_t u, std::size_t b, std::size_t v) const;
  std::size_t pick(const Worker& w, std::size_t level, double incumbent) const;
  void descend(Worker& w, std::size_t level, double current) const;
  bool assign(Worker& w, std::size_t level, std::size_t var, std::size_t val,
              double value) const;
  void seed_level(Worker& w) const;

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  std::vector<Variable> vars_;
  std::size_t width_;  // stride of the per-variable candidate table
};

}  // namespace ghm::detail
