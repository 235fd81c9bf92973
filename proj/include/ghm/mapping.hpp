#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ghm/space.hpp"

namespace ghm {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Total function {0..source_n-1} -> {0..target_n-1}.
class Mapping {
 public:
  Mapping() = default;
  Mapping(std::size_t target_n, std::vector<std::size_t> image);

  static Mapping identity(std::size_t n);
  static Mapping constant(std::size_t source_n, std::size_t target_n, std::size_t value = 0);

  std::size_t source_n() const noexcept { return image_.size(); }
  std::size_t target_n() const noexcept { return target_n_; }
  std::size_t operator()(std::size_t i) const noexcept { return image_[i]; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }

  bool injective() const;
  bool surjective() const;
  /// Sorted distinct image points.
  std::vector<std::size_t> range() const;

  bool operator==(const Mapping&) const = default;

 private:
  std::size_t target_n_ = 0;
  std::vector<std::size_t> image_;
};

/// f: X -> Y together with g: Y -> X.
struct MappingPair {
  Mapping f;
  Mapping g;
};

/// max over x, x' of |d_X(x, x') - d_Y(f(x), f(x'))|.
double distortion(const Mapping& f, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// max over x, y of |d_X(x, g(y)) - d_Y(f(x), y)|.
double codistortion(const MappingPair& pair, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y);

/// max{dis f, dis g, codis(f, g)}; twice the GH objective of the pair.
double gh_objective(const MappingPair& pair, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y);

/// Distortion of f restricted to the source points listed in `domain`.
double distortion_on(const Mapping& f, std::span<const std::size_t> domain,
                     const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Pseudoinverse g: Y -> X. On f(X), g(y) is the smallest preimage of y; any
/// other y copies g of its nearest image point (smallest index on ties).
Mapping pseudoinverse(const Mapping& f, const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// g o f (apply f first).
Mapping compose(const Mapping& f, const Mapping& g);

/// Inverse of a bijection.
Mapping inverse(const Mapping& f);

/// sup_x d_X(x, g(f(x))).
double round_trip_defect(const Mapping& f, const Mapping& g, const FiniteMetricSpace& x);

struct ImageSpace {
  FiniteMetricSpace space;
  std::vector<std::size_t> indices;  // image points in Y, ascending
  Mapping onto;                      // X -> space, surjective
};

ImageSpace image_space(const Mapping& f, const FiniteMetricSpace& y);

}  // namespace ghm
