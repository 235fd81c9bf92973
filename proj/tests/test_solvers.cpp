#include <doctest.h>

#include <cstdlib>

#include "ghm/audit.hpp"
#include "ghm/constructions.hpp"
#include "ghm/solvers.hpp"
#include "oracle.hpp"

using namespace ghm;

namespace {

FiniteMetricSpace small_space(std::uint64_t seed, std::size_t n) {
  // Alternate between real-valued, ultrametric and integer-valued spaces.
  switch (seed % 3) {
    case 0: return random_metric(n, seed, 1.0 + static_cast<double>(seed % 4));
    case 1: return random_ultrametric(n, seed, 2.0);
    default: {
      const auto r = random_metric(n, seed, 6.0);
      std::vector<double> d(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = i == j ? 0.0 : 3.0 + std::round(r(i, j));
      return FiniteMetricSpace(n, std::move(d), {}, 0.0);
    }
  }
}

void check_certificate(const DistanceResult& r, const FiniteMetricSpace& x,
                       const FiniteMetricSpace& y) {
  const double dis_f = distortion(r.certificate.f, x, y);
  const double dis_g = distortion(r.certificate.g, y, x);
  if (r.kind == DistanceKind::GH)
    CHECK(r.value == 0.5 * gh_objective(r.certificate, x, y));
  else
    CHECK(r.value == 0.5 * std::max(dis_f, dis_g));
  CHECK(r.lower_bound <= r.value);
  CHECK(r.value <= r.upper_bound);
  if (r.exact) {
    CHECK(r.lower_bound == r.value);
    CHECK(r.upper_bound == r.value);
  }
}

}  // namespace

TEST_CASE("analytic bounds") {
  const auto x = u_space(4);
  CHECK(analytic_bounds(x, x).lower == 0.0);
  CHECK(analytic_bounds(x, x).upper == 2.0);
  for (unsigned k = 1; k <= 4; ++k) {
    const auto [a, b] = counterexample_pair(k);
    CHECK(analytic_bounds(a, b).lower == 0.5);
    CHECK(analytic_bounds(a, b).upper == (k + 2) / 2.0);
  }
  const auto [p, d] = tight_pair(3);
  CHECK(analytic_bounds(p, d).lower == 1.5);
  CHECK(analytic_bounds(p, d).upper == 3.0);
}

TEST_CASE("isometric spaces are at distance zero") {
  const auto x = random_metric(6, 2, 1.0);
  const std::vector<std::size_t> perm{5, 3, 1, 0, 2, 4};
  const auto y = x.subspace(perm);
  const auto gh = exact_gh(x, y);
  const auto mgh = exact_mgh(x, y);
  CHECK(gh.value == 0.0);
  CHECK(mgh.value == 0.0);
  CHECK(gh.exact);
  check_certificate(gh, x, y);
  check_certificate(mgh, x, y);
}

TEST_CASE("two-point spaces") {
  for (double p : {1.0, 2.0, 7.5})
    for (double q : {1.0, 3.0, 10.0}) {
      const auto x = regular_simplex(2, p), y = regular_simplex(2, q);
      CHECK(exact_mgh(x, y).value == 0.5 * std::abs(p - q));
      CHECK(exact_gh(x, y).value == 0.5 * std::abs(p - q));
    }
}

TEST_CASE("counterexample pairs: mGH is one half, GH grows") {
  for (unsigned k = 1; k <= 4; ++k) {
    const auto [x, y] = counterexample_pair(k);
    const auto mgh = exact_mgh(x, y);
    CHECK(mgh.exact);
    CHECK(mgh.value == 0.5);
    check_certificate(mgh, x, y);
  }
  for (unsigned k = 1; k <= 3; ++k) {
    const auto [x, y] = counterexample_pair(k);
    const auto gh = exact_gh(x, y);
    CHECK(gh.exact);
    CHECK(gh.value >= k / 4.0);
    check_certificate(gh, x, y);
    if (x.size() <= 4 && y.size() <= 4) CHECK(gh.value == oracle::gh(x, y));
  }
}

TEST_CASE("branch and bound matches full enumeration") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto x = small_space(seed, 1 + seed % 4);
    const auto y = small_space(seed * 7 + 1, 1 + (seed / 4) % 4);
    const auto gh = exact_gh(x, y);
    const auto mgh = exact_mgh(x, y);
    CHECK(gh.value == oracle::gh(x, y));
    CHECK(mgh.value == oracle::mgh(x, y));
    CHECK(min_distortion(x, y).distortion == oracle::min_dis(x, y));
    check_certificate(gh, x, y);
    check_certificate(mgh, x, y);
  }
}

TEST_CASE("mGH <= GH, both inside the analytic bounds, both symmetric") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto x = small_space(seed, 2 + seed % 5);
    const auto y = small_space(seed + 500, 2 + (seed / 5) % 5);
    const auto gh = exact_gh(x, y), mgh = exact_mgh(x, y);
    const auto b = analytic_bounds(x, y);
    CHECK(mgh.value <= gh.value);
    CHECK(b.lower <= mgh.value);
    CHECK(gh.value <= b.upper);
    CHECK(exact_gh(y, x).value == gh.value);
    CHECK(exact_mgh(y, x).value == mgh.value);
  }
}

TEST_CASE("triangle inequality for both distances") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto a = small_space(seed, 2 + seed % 4);
    const auto b = small_space(seed + 70, 2 + (seed / 4) % 4);
    const auto c = small_space(seed + 140, 2 + (seed / 2) % 4);
    CHECK(exact_gh(a, c).value <= exact_gh(a, b).value + exact_gh(b, c).value + 1e-12);
    CHECK(exact_mgh(a, c).value <= exact_mgh(a, b).value + exact_mgh(b, c).value + 1e-12);
  }
}

TEST_CASE("distance zero exactly for isometric spaces") {
  // Small integer spaces collide often, exercising both outcomes.
  std::size_t zeros = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 3;
    auto make = [n](std::uint64_t s) {
      std::vector<double> d(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          d[i * n + j] = d[j * n + i] = 2.0 + static_cast<double>((s >> (i * 3 + j)) % 2);
      return FiniteMetricSpace(n, std::move(d), {}, 0.0);
    };
    const auto x = make(seed * 2654435761u), y = make(seed * 40503u + 3);
    const bool iso = oracle::isometric(x, y);
    zeros += iso;
    CHECK((exact_gh(x, y).value == 0.0) == iso);
    CHECK((exact_mgh(x, y).value == 0.0) == iso);
  }
  CHECK(zeros > 0);
}

TEST_CASE("budget exhaustion brackets the value") {
  const auto [x, y] = counterexample_pair(4);
  SolverBudget tiny;
  tiny.max_nodes = 3;
  const auto gh = exact_gh(x, y, tiny);
  CHECK_FALSE(gh.exact);
  CHECK(gh.lower_bound <= gh.value);
  CHECK(gh.value <= gh.upper_bound);
  CHECK(gh.value == 0.5 * gh_objective(gh.certificate, x, y));
  const auto full = exact_gh(x, y);
  CHECK(gh.lower_bound <= full.value);
  CHECK(full.value <= gh.value);
}

TEST_CASE("worker count does not change the value") {
  setenv("GH_METRIC_THREADS", "4", 1);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto x = small_space(seed, 6), y = small_space(seed + 9, 5);
    SolverBudget one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(worker_count(four) == 4);
    CHECK(exact_gh(x, y, one).value == exact_gh(x, y, four).value);
  }
  unsetenv("GH_METRIC_THREADS");
  CHECK(worker_count({}) == 1);
}

TEST_CASE("nested sequence audit") {
  const auto x = u_space(4);
  const auto same = nested_sequence_audit(x, x);
  CHECK(same.mgh.value == 0.0);
  CHECK(same.k_star == 0);
  CHECK(same.stabilisation_bound == 0.0);
  CHECK(same.stabilisation_holds);

  const auto [a, b] = counterexample_pair(3);
  const auto r = nested_sequence_audit(a, b);
  CHECK(r.gh.value / r.mgh.value >= 1.5);
  CHECK(r.size_bound_holds);
  CHECK(r.stabilisation_holds);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = random_metric(5, seed, 1.0), q = random_metric(5, seed + 20, 1.5);
    const auto audit = nested_sequence_audit(p, q);
    CHECK(audit.size_bound_holds);
    CHECK(audit.stabilisation_holds);
    CHECK(audit.k_star <= 2 * audit.n);
  }
}

TEST_CASE("nested chains shrink until they stabilise") {
  const Mapping f(3, {0, 0, 1, 2});
  const Mapping g(4, {1, 1, 3});
  const auto chain = nested_chain(f, g);
  CHECK(chain[0] == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(chain[1] == std::vector<std::size_t>{1, 3});
  CHECK(chain[chain.size() - 1] == chain[chain.size() - 2]);
  for (std::size_t k = 2; k < chain.size(); ++k)
    CHECK(std::includes(chain[k - 2].begin(), chain[k - 2].end(), chain[k].begin(), chain[k].end()));
}

TEST_CASE("epsilon-net audit") {
  const auto x = random_metric(7, 1, 2.0), y = random_metric(7, 2, 1.0);
  const auto zero = epsilon_net_audit(x, y, 0.0);
  CHECK(zero.gh_gap == 0.0);
  CHECK(zero.mgh_gap == 0.0);
  CHECK(zero.holds);

  const auto quarter = epsilon_net_audit(x, y, 0.5);
  CHECK(quarter.holds);

  const auto big = epsilon_net_audit(x, y, 2.0);
  CHECK(big.x_net.indices.size() == 1);
  CHECK(big.y_net.indices.size() == 1);
  CHECK(big.gh_net.value == 0.0);
  CHECK(big.holds);
}

TEST_CASE("branch and bound matches full enumeration on five-point spaces") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto x = small_space(seed + 3, 5);
    const auto y = small_space(seed + 11, 4 + seed % 2);
    CHECK(exact_gh(x, y).value == oracle::gh(x, y));
    CHECK(exact_mgh(x, y).value == oracle::mgh(x, y));
  }
}
