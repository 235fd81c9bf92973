#include "ghm/audit.hpp"

#include <algorithm>
#include <cmath>

namespace ghm {

namespace {

std::vector<std::size_t> image_of(const Mapping& h, const std::vector<std::size_t>& points) {
  std::vector<std::size_t> out;
  out.reserve(points.size());
  for (std::size_t p : points) out.push_back(h(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> all_points(std::size_t n) { return Mapping::identity(n).image(); }

}  // namespace

std::vector<std::vector<std::size_t>> nested_chain(const Mapping& first, const Mapping& second) {
  const Mapping round_trip = compose(first, second);
  std::vector<std::vector<std::size_t>> chain;
  chain.push_back(all_points(first.source_n()));
  chain.push_back(image_of(second, all_points(second.source_n())));
  while (chain[chain.size() - 1] != chain[chain.size() - 2])
    chain.push_back(image_of(round_trip, chain[chain.size() - 2]));
  return chain;
}

NestedSequenceReport nested_sequence_audit(const FiniteMetricSpace& x,
                                           const FiniteMetricSpace& y,
                                           const SolverBudget& budget) {
  NestedSequenceReport r;
  r.mgh = exact_mgh(x, y, budget);
  r.gh = exact_gh(x, y, budget);
  r.exact = r.mgh.exact && r.gh.exact;

  const Mapping& f = r.mgh.certificate.f;
  const Mapping& g = r.mgh.certificate.g;
  r.x_chain = nested_chain(f, g);
  r.y_chain = nested_chain(g, f);
  r.x_stable = r.x_chain.size() - 2;
  r.y_stable = r.y_chain.size() - 2;
  r.k_star = std::min(r.x_stable, r.y_stable);
  r.n = std::min(x.size(), y.size());

  const double slack = comparison_slack(x, y);
  r.stabilisation_bound = static_cast<double>(2 * r.k_star + 1) * r.mgh.value;
  r.size_bound = static_cast<double>(2 * r.n - 1) * r.mgh.value;
  r.stabilisation_holds = r.gh.value <= r.stabilisation_bound + slack;
  r.size_bound_holds = r.gh.value <= r.size_bound + slack;
  return r;
}

EpsilonNetReport epsilon_net_audit(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   double epsilon, const SolverBudget& budget) {
  return epsilon_net_audit(x, y, epsilon, exact_gh(x, y, budget), exact_mgh(x, y, budget),
                           budget);
}

EpsilonNetReport epsilon_net_audit(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   double epsilon, const DistanceResult& gh_full,
                                   const DistanceResult& mgh_full,
                                   const SolverBudget& budget) {
  EpsilonNetReport r;
  r.epsilon = epsilon;
  r.x_net = greedy_epsilon_net(x, epsilon);
  r.y_net = greedy_epsilon_net(y, epsilon);
  const FiniteMetricSpace xs = x.subspace(r.x_net.indices);
  const FiniteMetricSpace ys = y.subspace(r.y_net.indices);

  r.gh_full = gh_full;
  r.mgh_full = mgh_full;
  r.gh_net = exact_gh(xs, ys, budget);
  r.mgh_net = exact_mgh(xs, ys, budget);
  r.gh_gap = std::abs(r.gh_full.value - r.gh_net.value);
  r.mgh_gap = std::abs(r.mgh_full.value - r.mgh_net.value);
  r.exact = r.gh_full.exact && r.gh_net.exact && r.mgh_full.exact && r.mgh_net.exact;

  const double slack = comparison_slack(x, y);
  r.holds = r.gh_gap <= epsilon + slack && r.mgh_gap <= epsilon + slack;
  return r;
}

}  // namespace ghm
