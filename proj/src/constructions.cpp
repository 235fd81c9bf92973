#include "ghm/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ghm {

namespace {

// Portable uniform double in [0, 1) from the raw 64-bit engine output.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

FiniteMetricSpace regular_simplex(std::size_t m, double lambda) {
  if (m == 0) throw std::invalid_argument("simplex needs at least one point");
  if (m >= 2 && !(lambda > 0.0)) throw std::invalid_argument("simplex diameter must be positive");
  std::vector<double> d(m * m, lambda);
  for (std::size_t i = 0; i < m; ++i) d[i * m + i] = 0.0;
  return FiniteMetricSpace(m, std::move(d), {}, 0.0);
}

FiniteMetricSpace disjoint_union_sum(const FiniteMetricSpace& x,
                                     const FiniteMetricSpace& y, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("union distance must be positive");
  const std::size_t nx = x.size(), ny = y.size(), n = nx + ny;

  // The only triangles that can fail are d(p, q) <= a + a inside one block.
  auto check_block = [&](const FiniteMetricSpace& block, std::size_t offset,
                         std::size_t other) {
    if (2.0 * a >= block.diameter()) return;
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        if (block(i, j) > 2.0 * a)
          throw ResultNotMetric(MetricViolation::TriangleViolation,
                                {offset + i, offset + j, other});
  };
  check_block(x, 0, nx);
  check_block(y, nx, 0);

  std::vector<double> d(n * n, a);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) d[i * n + j] = x(i, j);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j) d[(nx + i) * n + nx + j] = y(i, j);

  std::vector<std::string> labels;
  if (!x.labels().empty() && !y.labels().empty()) {
    labels = x.labels();
    labels.insert(labels.end(), y.labels().begin(), y.labels().end());
  }
  const bool exact = x.integral() && y.integral() && a == std::floor(a);
  return FiniteMetricSpace(n, std::move(d), std::move(labels),
                           exact ? 0.0 : kDefaultMetricTolerance);
}

FiniteMetricSpace u_space(unsigned k) {
  if (k > kMaxUSequenceIndex)
    throw std::invalid_argument("u_space index exceeds cap of " +
                                std::to_string(kMaxUSequenceIndex));
  if (k == 0) return regular_simplex(1, 1.0);
  if (k == 1) return regular_simplex(2, 1.0);
  const FiniteMetricSpace half = u_space(k - 2);
  return disjoint_union_sum(half, half, static_cast<double>(k));
}

SpacePair counterexample_pair(unsigned k) {
  if (k == 0) throw std::invalid_argument("counterexample index must be positive");
  if (k + 1 > kMaxUSequenceIndex)
    throw std::invalid_argument("counterexample index exceeds u_space cap");
  return {u_space(k + 1), disjoint_union_sum(u_space(k), u_space(0), k + 2.0)};
}

SpacePair tight_pair(unsigned n) {
  if (n == 0) throw std::invalid_argument("tight pair index must be positive");
  const std::size_t m = n + 1;
  std::vector<double> d(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      d[i * m + j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
  return {FiniteMetricSpace(m, std::move(d), {}, 0.0), regular_simplex(2, 2.0 * n)};
}

FiniteMetricSpace random_metric(std::size_t n, std::uint64_t seed, double diam_target) {
  if (n == 0) throw std::invalid_argument("random_metric needs at least one point");
  if (!(diam_target > 0.0)) throw std::invalid_argument("target diameter must be positive");
  if (n == 1) return regular_simplex(1, diam_target);

  std::mt19937_64 rng(seed);
  const std::size_t dim = 1 + rng() % 3;
  for (;;) {
    std::vector<double> pts(n * dim);
    for (double& c : pts) c = unit(rng);
    std::vector<double> d(n * n, 0.0);
    double diam = 0.0;
    bool distinct = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double delta = pts[i * dim + c] - pts[j * dim + c];
          s += delta * delta;
        }
        const double v = std::sqrt(s);
        distinct = distinct && v > 0.0;
        d[i * n + j] = d[j * n + i] = v;
        diam = std::max(diam, v);
      }
    if (!distinct) continue;
    const double scale = diam_target / diam;
    for (double& v : d) v *= scale;
    return FiniteMetricSpace(n, std::move(d));
  }
}

FiniteMetricSpace random_ultrametric(std::size_t n, std::uint64_t seed, double diam_target) {
  if (n == 0) throw std::invalid_argument("random_ultrametric needs at least one point");
  if (!(diam_target > 0.0)) throw std::invalid_argument("target diameter must be positive");
  std::mt19937_64 rng(seed);

  // Each merge joins two random clusters at a height above every earlier one.
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> levels;  // pairs per merge
  double h = 0.0;
  std::vector<double> heights;
  while (clusters.size() > 1) {
    const std::size_t i = rng() % clusters.size();
    std::size_t j = rng() % (clusters.size() - 1);
    if (j >= i) ++j;
    h += 0.05 + unit(rng);
    heights.push_back(h);
    std::vector<std::pair<std::size_t, std::size_t>> level;
    for (std::size_t p : clusters[i])
      for (std::size_t q : clusters[j]) level.emplace_back(p, q);
    levels.push_back(std::move(level));
    clusters[i].insert(clusters[i].end(), clusters[j].begin(), clusters[j].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double v = diam_target * (heights[l] / h);
    for (auto [p, q] : levels[l]) d[p * n + q] = d[q * n + p] = v;
  }
  return FiniteMetricSpace(n, std::move(d), {}, 0.0);
}

std::optional<std::pair<std::size_t, double>> as_regular_simplex(const FiniteMetricSpace& x) {
  const std::size_t m = x.size();
  if (m == 1) return std::pair<std::size_t, double>{1, 0.0};
  const double lambda = x(0, 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && x(i, j) != lambda) return std::nullopt;
  return std::pair<std::size_t, double>{m, lambda};
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Simplex: return "simplex";
    case SpaceKind::USequence: return "u_sequence";
    case SpaceKind::UnionSum: return "union_sum";
    case SpaceKind::CounterexamplePair: return "counterexample_pair";
    case SpaceKind::TightPair: return "tight_pair";
    case SpaceKind::RandomMetric: return "random_metric";
    case SpaceKind::RandomUltrametric: return "random_ultrametric";
  }
  return "unknown";
}

SpaceKind parse_space_kind(const std::string& name) {
  for (auto kind : {SpaceKind::Simplex, SpaceKind::USequence, SpaceKind::UnionSum,
                    SpaceKind::CounterexamplePair, SpaceKind::TightPair,
                    SpaceKind::RandomMetric, SpaceKind::RandomUltrametric})
    if (to_string(kind) == name) return kind;
  throw std::invalid_argument("unknown space kind '" + name + "'");
}

std::vector<FiniteMetricSpace> generate(const SpaceSpec& spec) {
  std::vector<FiniteMetricSpace> out;
  switch (spec.kind) {
    case SpaceKind::Simplex:
      out.push_back(regular_simplex(spec.m, spec.diam));
      break;
    case SpaceKind::USequence:
      out.push_back(u_space(spec.k));
      break;
    case SpaceKind::UnionSum: {
      if (spec.parts.size() != 2) throw std::invalid_argument("union_sum needs two parts");
      auto x = generate(spec.parts[0]);
      auto y = generate(spec.parts[1]);
      if (x.size() != 1 || y.size() != 1)
        throw std::invalid_argument("union_sum parts must be single spaces");
      if (spec.require_ultrametric) {
        if (!is_ultrametric(x[0]).ultrametric || !is_ultrametric(y[0]).ultrametric)
          throw std::invalid_argument("union_sum parts are not ultrametric");
        if (spec.a < std::max(x[0].diameter(), y[0].diameter()))
          throw std::invalid_argument("union_sum distance below part diameters");
      }
      out.push_back(disjoint_union_sum(x[0], y[0], spec.a));
      break;
    }
    case SpaceKind::CounterexamplePair: {
      auto [x, y] = counterexample_pair(spec.k);
      out.push_back(std::move(x));
      out.push_back(std::move(y));
      break;
    }
    case SpaceKind::TightPair: {
      auto [x, y] = tight_pair(static_cast<unsigned>(spec.n));
      out.push_back(std::move(x));
      out.push_back(std::move(y));
      break;
    }
    case SpaceKind::RandomMetric:
      out.push_back(random_metric(spec.n, spec.seed, spec.diam));
      break;
    case SpaceKind::RandomUltrametric:
      out.push_back(random_ultrametric(spec.n, spec.seed, spec.diam));
      break;
  }
  return out;
}

}  // namespace ghm
