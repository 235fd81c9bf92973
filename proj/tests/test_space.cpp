#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ghm/constructions.hpp"
#include "ghm/space.hpp"

using namespace ghm;

namespace {

MetricViolation violation_of(const std::vector<std::vector<double>>& rows,
                             std::vector<std::size_t>* witness = nullptr) {
  try {
    validate_metric(rows, 0.0);
  } catch (const MetricError& e) {
    if (witness) *witness = e.witness();
    return e.kind();
  }
  FAIL("matrix was accepted");
  return MetricViolation::NotSquare;
}

std::vector<double> distinct(std::vector<double> v) {
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TEST_CASE("two points at distance one form a metric space") {
  const auto x = validate_metric({{0, 1}, {1, 0}}, 0.0);
  CHECK(x.size() == 2);
  CHECK(x(0, 1) == 1.0);
  CHECK(x.diameter() == 1.0);
  CHECK(x.integral());
}

TEST_CASE("triangle violation reports the offending triple") {
  std::vector<std::size_t> w;
  CHECK(violation_of({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, &w) == MetricViolation::TriangleViolation);
  CHECK(w == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("each axiom has its own rejection") {
  std::vector<std::size_t> w;
  CHECK(violation_of({{0, 1}}) == MetricViolation::NotSquare);
  CHECK(violation_of({{0, NAN}, {NAN, 0}}) == MetricViolation::NonFinite);
  CHECK(violation_of({{0, 1}, {1, 2}}, &w) == MetricViolation::NonzeroDiagonal);
  CHECK(w == std::vector<std::size_t>{1});
  CHECK(violation_of({{0, -1}, {-1, 0}}, &w) == MetricViolation::NegativeDistance);
  CHECK(w == std::vector<std::size_t>{0, 1});
  CHECK(violation_of({{0, 1}, {2, 0}}, &w) == MetricViolation::NotSymmetric);
  CHECK(violation_of({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}, &w) == MetricViolation::ZeroOffDiagonal);
  CHECK(w == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(validate_metric({}, 0.0), MetricError);
}

TEST_CASE("tolerance absorbs rounding noise but not real violations") {
  const double e = 1e-12;
  CHECK_NOTHROW(validate_metric({{0, 1, 2 + e}, {1, 0, 1}, {2 + e, 1, 0}}, 1e-9));
  CHECK_THROWS_AS(validate_metric({{0, 1, 2 + e}, {1, 0, 1}, {2 + e, 1, 0}}, 0.0), MetricError);
  CHECK_NOTHROW(validate_metric({{0, 1}, {1 + e, 0}}, 1e-9));
  CHECK_THROWS_AS(validate_metric({{0, 1, 2.1}, {1, 0, 1}, {2.1, 1, 0}}, 1e-9), MetricError);
}

TEST_CASE("U_3 is a valid ultrametric with distances 1 and 3") {
  const auto u3 = u_space(3);
  const auto x = validate_metric(u3.rows(), 0.0);
  CHECK(x.size() == 4);
  CHECK(is_ultrametric(x).ultrametric);
  for (std::size_t i = 0; i < 4; ++i) CHECK(distinct(distance_multiset(x, i)) == std::vector<double>{1, 3});
}

TEST_CASE("ultrametric check") {
  for (unsigned k = 0; k <= 10; ++k) CHECK(is_ultrametric(u_space(k)).ultrametric);
  for (std::size_t m = 1; m <= 6; ++m) CHECK(is_ultrametric(regular_simplex(m, 2.5)).ultrametric);

  const auto x = validate_metric({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}, 0.0);
  const auto check = is_ultrametric(x);
  CHECK_FALSE(check.ultrametric);
  REQUIRE(check.witness.has_value());
  const auto [a, b, via] = *check.witness;
  CHECK(x(a, b) > std::max(x(a, via), x(via, b)));
}

TEST_CASE("diameter") {
  CHECK(diameter(regular_simplex(1, 1)) == 0.0);
  for (unsigned k = 0; k <= 12; ++k) CHECK(diameter(u_space(k)) == static_cast<double>(k));
  CHECK(diameter(tight_pair(3).second) == 6.0);
}

TEST_CASE("distance multisets of U_k") {
  CHECK(distinct(distance_multiset(u_space(4), 3)) == std::vector<double>{2, 4});
  CHECK(distinct(distance_multiset(u_space(5), 6)) == std::vector<double>{1, 3, 5});
  CHECK(distance_multiset(u_space(0), 0).empty());
  CHECK_THROWS_AS(distance_multiset(u_space(2), 2), std::out_of_range);

  const auto m = distance_multiset(u_space(5), 0);
  CHECK(std::is_sorted(m.begin(), m.end()));
  CHECK(m.size() == 7);
}

TEST_CASE("greedy epsilon-nets") {
  const auto u3 = u_space(3);
  CHECK(greedy_epsilon_net(u3, 0.0).indices.size() == 4);
  CHECK(greedy_epsilon_net(u3, 3.0).indices == std::vector<std::size_t>{0});
  CHECK(greedy_epsilon_net(u3, 10.0).indices == std::vector<std::size_t>{0});

  // One point from each distance-1 pair.
  const auto net = greedy_epsilon_net(u3, 1.0);
  REQUIRE(net.indices.size() == 2);
  CHECK(u3(net.indices[0], net.indices[1]) == 3.0);
  CHECK(covers(u3, net.indices, 1.0));
  CHECK_FALSE(covers(u3, std::vector<std::size_t>{0}, 1.0));
  CHECK_THROWS(greedy_epsilon_net(u3, -1.0));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto x = random_metric(9, seed, 4.0);
    for (double eps : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const auto a = greedy_epsilon_net(x, eps);
      const auto b = greedy_epsilon_net(x, eps);
      CHECK(a.indices == b.indices);
      CHECK(covers(x, a.indices, eps));
      auto sorted = a.indices;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
  }
}

TEST_CASE("subspaces keep the induced distances") {
  const auto u5 = u_space(5);
  const std::vector<std::size_t> idx{7, 0, 3};
  const auto s = u5.subspace(idx);
  CHECK(s.size() == 3);
  CHECK(s(0, 1) == u5(7, 0));
  CHECK(s(1, 2) == u5(0, 3));
  CHECK_THROWS(u5.subspace(std::vector<std::size_t>{}));
  CHECK_THROWS(u5.subspace(std::vector<std::size_t>{1, 1}));
  CHECK_THROWS(u5.subspace(std::vector<std::size_t>{8}));
}

TEST_CASE("labels must match the point count") {
  CHECK_NOTHROW(FiniteMetricSpace(2, {0, 1, 1, 0}, {"a", "b"}));
  CHECK_THROWS(FiniteMetricSpace(2, {0, 1, 1, 0}, {"a"}));
}
