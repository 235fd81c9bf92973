#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghm {

/// Default slack for metric axioms, relative to the diameter of the input.
inline constexpr double kDefaultMetricTolerance = 1e-9;

enum class MetricViolation {
  NotSquare,
  NonFinite,
  NonzeroDiagonal,
  NegativeDistance,
  NotSymmetric,
  ZeroOffDiagonal,
  TriangleViolation,
};

const char* to_string(MetricViolation v);

/// Rejection of a distance matrix. The witness lists the offending indices:
/// (i) for diagonal errors, (i, j) for pairwise errors and (a, b, via) for a
/// triangle violation d[a][b] > d[a][via] + d[via][b].
class MetricError : public std::runtime_error {
 public:
  MetricError(MetricViolation kind, std::vector<std::size_t> witness);
  MetricError(MetricViolation kind, std::vector<std::size_t> witness, const std::string& prefix);

  MetricViolation kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  MetricViolation kind_;
  std::vector<std::size_t> witness_;
};

/// Ordered triple (a, b, via) used as a witness for triangle-type failures.
struct Triple {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t via = 0;
  bool operator==(const Triple&) const = default;
};

/// A finite metric space stored as a dense row-major distance matrix.
/// Instances are immutable and always satisfy the metric axioms (checked on
/// construction), so they can be shared freely between threads.
class FiniteMetricSpace {
 public:
  /// Validates `dist` (n*n, row-major). `tolerance` is relative to the
  /// largest entry; 0 demands exact axioms.
  FiniteMetricSpace(std::size_t n, std::vector<double> dist,
                    std::vector<std::string> labels = {},
                    double tolerance = kDefaultMetricTolerance);

  static FiniteMetricSpace from_rows(const std::vector<std::vector<double>>& rows,
                                     double tolerance = kDefaultMetricTolerance,
                                     std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {d_.data() + i * n_, n_};
  }
  const std::vector<double>& data() const noexcept { return d_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double diameter() const noexcept { return diameter_; }

  /// True when every entry is an integer value.
  bool integral() const noexcept { return integral_; }

  std::vector<std::vector<double>> rows() const;

  /// Induced subspace on `indices` (in the given order).
  FiniteMetricSpace subspace(std::span<const std::size_t> indices) const;

 private:
  struct Trusted {};
  FiniteMetricSpace(Trusted, std::size_t n, std::vector<double> dist,
                    std::vector<std::string> labels);
  void compute_summary();

  std::size_t n_;
  std::vector<double> d_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
  bool integral_ = true;
};

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  double tolerance = kDefaultMetricTolerance);

struct UltrametricCheck {
  bool ultrametric = true;
  std::optional<Triple> witness;  // d[a][b] > max(d[a][via], d[via][b])
};

UltrametricCheck is_ultrametric(const FiniteMetricSpace& x,
                                double tolerance = 0.0);

inline double diameter(const FiniteMetricSpace& x) { return x.diameter(); }

/// Sorted distances from point i to every other point.
std::vector<double> distance_multiset(const FiniteMetricSpace& x, std::size_t i);

/// Subset of points whose closed epsilon-balls cover the parent space.
struct EpsilonNet {
  std::vector<std::size_t> indices;
  double epsilon = 0.0;
};

bool covers(const FiniteMetricSpace& x, std::span<const std::size_t> indices,
            double epsilon);

/// Farthest-point greedy net seeded at point 0. Ties go to the smallest index,
/// so the result is a deterministic function of the space.
EpsilonNet greedy_epsilon_net(const FiniteMetricSpace& x, double epsilon);

}  // namespace ghm
