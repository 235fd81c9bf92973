#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ghm/mapping.hpp"
#include "ghm/space.hpp"

namespace ghm {

/// Row-stochastic matrix relaxing a Mapping (rows: source points).
class SoftMapping {
 public:
  explicit SoftMapping(Eigen::MatrixXd p);
  static SoftMapping from_mapping(const Mapping& f);
  static SoftMapping uniform(std::size_t source_n, std::size_t target_n);

  std::size_t source_n() const { return static_cast<std::size_t>(p_.rows()); }
  std::size_t target_n() const { return static_cast<std::size_t>(p_.cols()); }
  const Eigen::MatrixXd& matrix() const { return p_; }

  /// Row-wise argmax, ties to the smallest column.
  Mapping round() const;

 private:
  Eigen::MatrixXd p_;
};

/// Largest entry of |D_X - P D_Y P^T|. Equals distortion(f) when P encodes f.
double soft_distortion(const SoftMapping& p, const FiniteMetricSpace& x,
                       const FiniteMetricSpace& y);

/// Euclidean projection of `v` onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

struct RelaxConfig {
  double p = 8.0;           // exponent of the smooth surrogate
  unsigned restarts = 16;   // restart 0 is uniform (or `initial`), the rest random vertices
  unsigned max_iters = 500;
  double step_size = 0.5;   // initial step, adapted by backtracking
  std::uint64_t seed = 0;
  std::optional<Mapping> initial;
};

struct RelaxResult {
  SoftMapping soft{Eigen::MatrixXd::Ones(1, 1)};
  Mapping rounded;
  double soft_value = 0.0;      // heuristic signal only, not a certified bound
  double rounded_value = 0.0;   // dis(rounded): upper bound on the min distortion
  double surrogate = 0.0;
  unsigned best_restart = 0;
  std::vector<double> trace;    // surrogate after each accepted step of the best restart
  bool converged = false;
};

/// Minimises the l_p surrogate of |D_X - P D_Y P^T| over row-stochastic P by
/// projected gradient descent with backtracking, then rounds to a Mapping.
RelaxResult relax_mgh_direction(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                const RelaxConfig& config = {});

}  // namespace ghm
