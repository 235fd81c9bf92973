#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ghm/constructions.hpp"
#include "ghm/solvers.hpp"

using namespace ghm;

TEST_CASE("regular simplex") {
  CHECK(regular_simplex(1, 1.0).size() == 1);
  const auto s = regular_simplex(4, 1.0);
  CHECK(s.diameter() == 1.0);
  CHECK(is_ultrametric(s).ultrametric);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(s(i, j) == (i == j ? 0.0 : 1.0));
  CHECK(regular_simplex(2, 8.0)(0, 1) == 8.0);
  CHECK_THROWS(regular_simplex(0, 1.0));
  CHECK_THROWS(regular_simplex(3, 0.0));
  CHECK(as_regular_simplex(s) == std::pair<std::size_t, double>{4, 1.0});
  CHECK_FALSE(as_regular_simplex(u_space(3)).has_value());
}

TEST_CASE("disjoint union sum") {
  const auto pt = u_space(0);
  const auto u2 = disjoint_union_sum(pt, pt, 2.0);
  CHECK(u2.size() == 2);
  CHECK(u2(0, 1) == 2.0);

  const auto y3 = disjoint_union_sum(u_space(3), pt, 5.0);
  CHECK(y3.size() == 5);
  CHECK(y3.diameter() == 5.0);
  CHECK(is_ultrametric(y3).ultrametric);

  // 2a >= max diam is enough for a metric, but not for an ultrametric.
  const auto loose = disjoint_union_sum(u_space(4), pt, 2.0);
  CHECK_FALSE(is_ultrametric(loose).ultrametric);
  CHECK_THROWS_AS(disjoint_union_sum(u_space(4), pt, 1.5), ResultNotMetric);
  CHECK_THROWS(disjoint_union_sum(pt, pt, 0.0));

  try {
    disjoint_union_sum(u_space(4), pt, 1.5);
  } catch (const ResultNotMetric& e) {
    CHECK(e.kind() == MetricViolation::TriangleViolation);
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("union of ultrametrics at a >= both diameters stays ultrametric") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto a = random_ultrametric(1 + seed % 5, seed, 1.0 + static_cast<double>(seed % 3));
    const auto b = random_ultrametric(1 + (seed / 5) % 4, seed + 100, 2.0);
    const double gap = std::max({a.diameter(), b.diameter(), 0.5}) + static_cast<double>(seed % 2);
    CHECK(is_ultrametric(disjoint_union_sum(a, b, gap)).ultrametric);
  }
}

TEST_CASE("union sum is symmetric up to isometry") {
  const auto a = u_space(3), b = u_space(2);
  const auto ab = disjoint_union_sum(a, b, 4.0);
  const auto ba = disjoint_union_sum(b, a, 4.0);
  CHECK(exact_gh(ab, ba).value == 0.0);
}

TEST_CASE("U_k sizes, diameters and per-point distance sets") {
  CHECK(u_space(0).size() == 1);
  CHECK(u_space(1).size() == 2);
  CHECK(u_space(1)(0, 1) == 1.0);
  CHECK(u_space(5).size() == 8);
  CHECK(u_space(6).size() == 8);
  for (unsigned k = 0; k <= 14; ++k) {
    const auto u = u_space(k);
    CHECK(u.size() == (std::size_t{1} << ((k + 1) / 2)));
    CHECK(u.diameter() == static_cast<double>(k));
    CHECK(u.integral());
  }
  for (unsigned k = 1; k <= 10; ++k) {
    const auto u = u_space(k);
    std::vector<double> expected;
    for (int v = static_cast<int>(k); v >= 1; v -= 2) expected.insert(expected.begin(), v);
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto m = distance_multiset(u, i);
      m.erase(std::unique(m.begin(), m.end()), m.end());
      CHECK(m == expected);
    }
  }
  CHECK_THROWS(u_space(kMaxUSequenceIndex + 1));
}

TEST_CASE("counterexample pairs") {
  const auto [x1, y1] = counterexample_pair(1);
  CHECK(x1.size() == 2);
  CHECK(y1.size() == 3);
  const auto [x3, y3] = counterexample_pair(3);
  CHECK(x3.size() == 4);
  CHECK(y3.size() == 5);
  for (unsigned k = 1; k <= 6; ++k) {
    const auto [x, y] = counterexample_pair(k);
    CHECK(is_ultrametric(x).ultrametric);
    CHECK(is_ultrametric(y).ultrametric);
    CHECK(x.diameter() == k + 1.0);
    CHECK(y.diameter() == k + 2.0);
  }
  CHECK_THROWS(counterexample_pair(0));
}

TEST_CASE("tight pairs") {
  const auto [x1, d1] = tight_pair(1);
  CHECK(x1.size() == 2);
  CHECK(x1(0, 1) == 1.0);
  CHECK(d1(0, 1) == 2.0);
  const auto [x3, d3] = tight_pair(3);
  CHECK(x3.diameter() == 3.0);
  CHECK(d3.diameter() == 6.0);
  for (unsigned n = 1; n <= 50; ++n) CHECK_NOTHROW(validate_metric(tight_pair(n).first.rows(), 0.0));
}

TEST_CASE("random metrics are reproducible and scaled") {
  CHECK(random_metric(1, 42, 1.0).size() == 1);
  CHECK(random_metric(7, 5, 2.0).data() == random_metric(7, 5, 2.0).data());
  CHECK(random_metric(7, 5, 2.0).data() != random_metric(7, 6, 2.0).data());
  CHECK(std::abs(random_metric(6, 7, 1.0).diameter() - 1.0) <= 1e-9);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = random_metric(2 + seed % 7, seed, 3.0);
    CHECK_NOTHROW(validate_metric(x.rows(), 1e-9));
  }
}

TEST_CASE("random ultrametrics") {
  CHECK(random_ultrametric(1, 0, 1.0).size() == 1);
  CHECK(random_ultrametric(2, 9, 3.5)(0, 1) == 3.5);
  CHECK(is_ultrametric(random_ultrametric(8, 3, 1.0)).ultrametric);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = random_ultrametric(2 + seed % 9, seed, 2.0);
    CHECK(is_ultrametric(x).ultrametric);
    CHECK(x.diameter() == 2.0);
  }
  CHECK(random_ultrametric(6, 1, 1.0).data() == random_ultrametric(6, 1, 1.0).data());
}

TEST_CASE("generate dispatches on the generator kind") {
  SpaceSpec s;
  s.kind = SpaceKind::USequence;
  s.k = 5;
  REQUIRE(generate(s).size() == 1);
  CHECK(generate(s)[0].size() == 8);

  s.kind = SpaceKind::TightPair;
  s.n = 4;
  const auto pair = generate(s);
  REQUIRE(pair.size() == 2);
  CHECK(pair[1](0, 1) == 8.0);

  SpaceSpec part;
  part.kind = SpaceKind::USequence;
  part.k = 2;
  s.kind = SpaceKind::UnionSum;
  s.parts = {part, part};
  s.a = 1.5;
  CHECK(generate(s)[0].size() == 4);
  s.require_ultrametric = true;
  CHECK_THROWS(generate(s));
  s.a = 2.0;
  CHECK_NOTHROW(generate(s));

  for (auto kind : {SpaceKind::Simplex, SpaceKind::USequence, SpaceKind::UnionSum,
                    SpaceKind::CounterexamplePair, SpaceKind::TightPair, SpaceKind::RandomMetric,
                    SpaceKind::RandomUltrametric})
    CHECK(parse_space_kind(to_string(kind)) == kind);
  CHECK_THROWS(parse_space_kind("torus"));
}
