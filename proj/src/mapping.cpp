#include "ghm/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ghm {

Mapping::Mapping(std::size_t target_n, std::vector<std::size_t> image)
    : target_n_(target_n), image_(std::move(image)) {
  for (std::size_t v : image_)
    if (v >= target_n_) throw std::out_of_range("mapping image entry out of range");
}

Mapping Mapping::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = i;
  return Mapping(n, std::move(img));
}

Mapping Mapping::constant(std::size_t source_n, std::size_t target_n, std::size_t value) {
  return Mapping(target_n, std::vector<std::size_t>(source_n, value));
}

bool Mapping::injective() const { return range().size() == image_.size(); }

bool Mapping::surjective() const { return range().size() == target_n_; }

std::vector<std::size_t> Mapping::range() const {
  std::vector<std::size_t> r(image_);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

namespace {

void require_map(const Mapping& f, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (f.source_n() != x.size() || f.target_n() != y.size())
    throw DimensionMismatch("mapping dimensions do not match the spaces");
}

}  // namespace

double distortion(const Mapping& f, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  require_map(f, x, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      worst = std::max(worst, std::abs(x(i, j) - y(f(i), f(j))));
  return worst;
}

double distortion_on(const Mapping& f, std::span<const std::size_t> domain,
                     const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  require_map(f, x, y);
  double worst = 0.0;
  for (std::size_t i : domain)
    for (std::size_t j : domain) worst = std::max(worst, std::abs(x(i, j) - y(f(i), f(j))));
  return worst;
}

double codistortion(const MappingPair& pair, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y) {
  require_map(pair.f, x, y);
  require_map(pair.g, y, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      worst = std::max(worst, std::abs(x(i, pair.g(j)) - y(pair.f(i), j)));
  return worst;
}

double gh_objective(const MappingPair& pair, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y) {
  return std::max({distortion(pair.f, x, y), distortion(pair.g, y, x),
                   codistortion(pair, x, y)});
}

Mapping pseudoinverse(const Mapping& f, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  require_map(f, x, y);
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> g(y.size(), kUnset);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (g[f(i)] == kUnset) g[f(i)] = i;

  const std::vector<std::size_t> image = f.range();
  std::vector<std::size_t> out(g);
  for (std::size_t p = 0; p < y.size(); ++p) {
    if (g[p] != kUnset) continue;
    std::size_t nearest = image.front();
    for (std::size_t q : image)
      if (y(p, q) < y(p, nearest)) nearest = q;
    out[p] = g[nearest];
  }
  return Mapping(x.size(), std::move(out));
}

Mapping compose(const Mapping& f, const Mapping& g) {
  if (f.target_n() != g.source_n()) throw DimensionMismatch("cannot compose: inner target != outer source");
  std::vector<std::size_t> img(f.source_n());
  for (std::size_t i = 0; i < f.source_n(); ++i) img[i] = g(f(i));
  return Mapping(g.target_n(), std::move(img));
}

Mapping inverse(const Mapping& f) {
  if (f.source_n() != f.target_n() || !f.injective())
    throw std::invalid_argument("mapping is not a bijection");
  std::vector<std::size_t> img(f.source_n());
  for (std::size_t i = 0; i < f.source_n(); ++i) img[f(i)] = i;
  return Mapping(f.source_n(), std::move(img));
}

double round_trip_defect(const Mapping& f, const Mapping& g, const FiniteMetricSpace& x) {
  const Mapping gf = compose(f, g);
  if (gf.source_n() != x.size() || gf.target_n() != x.size())
    throw DimensionMismatch("round trip does not act on the space");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, x(i, gf(i)));
  return worst;
}

ImageSpace image_space(const Mapping& f, const FiniteMetricSpace& y) {
  if (f.target_n() != y.size()) throw DimensionMismatch("mapping target does not match space");
  if (f.source_n() == 0) throw std::invalid_argument("mapping has an empty domain");
  std::vector<std::size_t> indices = f.range();
  std::vector<std::size_t> position(y.size(), 0);
  for (std::size_t k = 0; k < indices.size(); ++k) position[indices[k]] = k;
  std::vector<std::size_t> onto(f.source_n());
  for (std::size_t i = 0; i < f.source_n(); ++i) onto[i] = position[f(i)];
  FiniteMetricSpace sub = y.subspace(indices);
  Mapping surjection(indices.size(), std::move(onto));
  return {std::move(sub), std::move(indices), std::move(surjection)};
}

}  // namespace ghm
