#include <doctest.h>

#include "ghm/constructions.hpp"
#include "ghm/simplex.hpp"
#include "oracle.hpp"

using namespace ghm;

TEST_CASE("closed form when the simplex has more points") {
  const auto x = validate_metric({{0, 4, 4}, {4, 0, 2}, {4, 2, 0}}, 0.0);
  const auto r = gh_to_simplex(x, 5, 1.0);
  CHECK(r.value == 1.5);
  CHECK(r.exact);
  CHECK(r.nodes_explored == 0);
  CHECK(r.value == 0.5 * gh_objective(r.certificate, x, regular_simplex(5, 1.0)));
  CHECK(mgh_to_simplex(x, 5, 1.0).value == 1.5);
}

TEST_CASE("path against a two-point simplex") {
  for (unsigned n = 1; n <= 6; ++n) {
    const auto [x, d] = tight_pair(n);
    const auto gh = gh_to_simplex(x, 2, 2.0 * n);
    const auto mgh = mgh_to_simplex(x, 2, 2.0 * n);
    CHECK(gh.value == n - 0.5);
    CHECK(mgh.value == n / 2.0);
    CHECK(gh.value == 0.5 * gh_objective(gh.certificate, x, d));
    CHECK(mgh.value ==
          0.5 * std::max(distortion(mgh.certificate.f, x, d), distortion(mgh.certificate.g, d, x)));
  }
}

TEST_CASE("partition formula equals the pairwise distortion") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto x = random_metric(4, seed, 2.0);
    for (std::size_t m = 1; m <= 4; ++m)
      for (double lambda : {0.5, 1.0, 2.0, 3.0}) {
        const auto d = regular_simplex(m, lambda);
        oracle::for_each_map(4, m, [&](const oracle::Image& img) {
          const Mapping f(m, img);
          CHECK(simplex_distortion(f, x, lambda) == doctest::Approx(distortion(f, x, d)).epsilon(1e-12));
        });
      }
  }
}

TEST_CASE("specialised solvers agree with the general ones") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const auto x = seed % 2 ? random_metric(n, seed, 2.0) : random_ultrametric(n, seed, 2.0);
    for (std::size_t m = 1; m <= 5; ++m)
      for (double lambda : {0.5, 1.0, 2.5}) {
        const auto d = regular_simplex(m, lambda);
        const auto gh = gh_to_simplex(x, m, lambda);
        const auto mgh = mgh_to_simplex(x, m, lambda);
        CHECK(gh.value == doctest::Approx(exact_gh(x, d).value).epsilon(1e-12));
        CHECK(mgh.value == doctest::Approx(exact_mgh(x, d).value).epsilon(1e-12));
        CHECK(gh.value <= 2.0 * mgh.value + 1e-12);
        CHECK(mgh.value <= gh.value + 1e-12);
      }
  }
}

TEST_CASE("equality when |X| = m and the simplex is at most half as wide") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = random_metric(4, seed, 2.0);
    const double lambda = 0.5 * x.diameter() * (0.3 + 0.07 * static_cast<double>(seed));
    const auto gh = gh_to_simplex(x, 4, lambda);
    const auto mgh = mgh_to_simplex(x, 4, lambda);
    CHECK(gh.value == doctest::Approx(mgh.value).epsilon(1e-12));
    CHECK(gh.value == doctest::Approx(exact_gh(x, regular_simplex(4, lambda)).value).epsilon(1e-12));
  }
}

TEST_CASE("invalid simplex parameters") {
  const auto x = u_space(2);
  CHECK_THROWS(gh_to_simplex(x, 0, 1.0));
  CHECK_THROWS(gh_to_simplex(x, 2, 0.0));
  CHECK_THROWS(mgh_to_simplex(x, 2, -1.0));
}
