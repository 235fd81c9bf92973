#include "ghm/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "search.hpp"

namespace ghm {

double comparison_slack(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return x.integral() && y.integral() ? 0.0 : kValueTolerance;
}

unsigned worker_count(const SolverBudget& budget) {
  unsigned cap = 1;
  if (const char* env = std::getenv("GH_METRIC_THREADS")) {
    try {
      cap = static_cast<unsigned>(std::max(1L, std::stol(env)));
    } catch (const std::exception&) {
      cap = 1;
    }
  }
  return budget.threads == 0 ? cap : std::min(budget.threads, cap);
}

std::string to_string(DistanceKind kind) { return kind == DistanceKind::GH ? "GH" : "mGH"; }

Bounds analytic_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return {0.5 * std::abs(x.diameter() - y.diameter()),
          0.5 * std::max(x.diameter(), y.diameter())};
}

namespace {

SolverBudget remaining(const SolverBudget& budget, std::uint64_t used) {
  SolverBudget out = budget;
  if (out.max_nodes) out.max_nodes = *out.max_nodes > used ? *out.max_nodes - used : 0;
  return out;
}

}  // namespace

DirectionalResult min_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                 const SolverBudget& budget) {
  // Any map sends the diameter pair of X within diam Y.
  const double floor = std::max(0.0, x.diameter() - y.diameter());
  Mapping seed = Mapping::constant(x.size(), y.size());
  const double seed_value = distortion(seed, x, y);

  detail::BottleneckSearch search(x, y, false);
  SolverBudget single = budget;
  single.threads = 1;
  auto outcome = search.run(seed_value, seed.image(), floor, single);

  DirectionalResult out;
  out.map = Mapping(y.size(), std::move(outcome.assignment));
  out.distortion = distortion(out.map, x, y);
  out.exact = outcome.complete;
  out.lower_bound = out.exact ? out.distortion : floor;
  out.nodes_explored = outcome.nodes;
  return out;
}

DistanceResult exact_mgh(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                         const SolverBudget& budget) {
  const DirectionalResult forward = min_distortion(x, y, budget);
  const DirectionalResult backward =
      min_distortion(y, x, remaining(budget, forward.nodes_explored));

  DistanceResult r;
  r.kind = DistanceKind::mGH;
  r.certificate = {forward.map, backward.map};
  r.value = 0.5 * std::max(forward.distortion, backward.distortion);
  r.nodes_explored = forward.nodes_explored + backward.nodes_explored;
  r.exact = forward.exact && backward.exact;
  r.upper_bound = r.value;
  r.lower_bound = r.exact ? r.value
                          : std::max(analytic_bounds(x, y).lower,
                                     0.5 * std::max(forward.lower_bound, backward.lower_bound));
  return r;
}

DistanceResult exact_gh(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        const SolverBudget& budget) {
  const DistanceResult modified = exact_mgh(x, y, budget);

  // Seed the incumbent with the cheapest of a few natural pairs.
  const Mapping& f = modified.certificate.f;
  const Mapping& g = modified.certificate.g;
  std::vector<MappingPair> seeds = {
      {f, g},
      {f, pseudoinverse(f, x, y)},
      {pseudoinverse(g, y, x), g},
      {Mapping::constant(x.size(), y.size()), Mapping::constant(y.size(), x.size())},
  };
  MappingPair best = seeds.front();
  double best_value = gh_objective(best, x, y);
  for (const auto& s : seeds) {
    const double v = gh_objective(s, x, y);
    if (v < best_value) {
      best_value = v;
      best = s;
    }
  }

  // The mGH optimum is a lower bound only if that search finished.
  const double floor = modified.exact ? 2.0 * modified.value : 2.0 * modified.lower_bound;
  std::vector<std::size_t> packed = best.f.image();
  packed.insert(packed.end(), best.g.image().begin(), best.g.image().end());

  detail::BottleneckSearch search(x, y, true);
  auto outcome = search.run(best_value, std::move(packed), floor,
                            remaining(budget, modified.nodes_explored));

  const auto split = outcome.assignment.begin() + static_cast<std::ptrdiff_t>(x.size());
  DistanceResult r;
  r.kind = DistanceKind::GH;
  r.certificate = {Mapping(y.size(), {outcome.assignment.begin(), split}),
                   Mapping(x.size(), {split, outcome.assignment.end()})};
  r.value = 0.5 * gh_objective(r.certificate, x, y);
  r.nodes_explored = modified.nodes_explored + outcome.nodes;
  r.exact = outcome.complete;
  r.upper_bound = r.value;
  r.lower_bound = r.exact ? r.value : std::max(analytic_bounds(x, y).lower, 0.5 * floor);
  return r;
}

}  // namespace ghm
