#include "ghm/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ghm {

namespace {

Eigen::MatrixXd dense(const FiniteMetricSpace& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// l_p norm of the residual and its gradient with respect to P.
struct Surrogate {
  const Eigen::MatrixXd& dx;
  const Eigen::MatrixXd& dy;
  double p;

  double value(const Eigen::MatrixXd& pm) const {
    const Eigen::MatrixXd r = pm * dy * pm.transpose() - dx;
    const double top = r.cwiseAbs().maxCoeff();
    if (top == 0.0) return 0.0;
    return top * std::pow((r.cwiseAbs() / top).array().pow(p).sum(), 1.0 / p);
  }

  Eigen::MatrixXd gradient(const Eigen::MatrixXd& pm, double f) const {
    if (f == 0.0) return Eigen::MatrixXd::Zero(pm.rows(), pm.cols());
    const Eigen::MatrixXd r = pm * dy * pm.transpose() - dx;
    const Eigen::MatrixXd g =
        (r.cwiseAbs() / f).array().pow(p - 1.0).matrix().cwiseProduct(r.cwiseSign());
    return 2.0 * g * pm * dy;
  }
};

Eigen::MatrixXd project_rows(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    out.row(i) = project_to_simplex(m.row(i).transpose()).transpose();
  return out;
}

}  // namespace

SoftMapping::SoftMapping(Eigen::MatrixXd p) : p_(std::move(p)) {
  if (p_.rows() == 0 || p_.cols() == 0) throw std::invalid_argument("soft mapping is empty");
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    if ((p_.row(i).array() < 0.0).any() || (p_.row(i).array() > 1.0).any())
      throw std::invalid_argument("soft mapping entries must lie in [0, 1]");
    if (std::abs(p_.row(i).sum() - 1.0) > 1e-9)
      throw std::invalid_argument("soft mapping rows must sum to 1");
  }
}

SoftMapping SoftMapping::from_mapping(const Mapping& f) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(f.source_n()),
                                            static_cast<Eigen::Index>(f.target_n()));
  for (std::size_t i = 0; i < f.source_n(); ++i)
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f(i))) = 1.0;
  return SoftMapping(std::move(p));
}

SoftMapping SoftMapping::uniform(std::size_t source_n, std::size_t target_n) {
  return SoftMapping(Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(source_n),
                                               static_cast<Eigen::Index>(target_n),
                                               1.0 / static_cast<double>(target_n)));
}

Mapping SoftMapping::round() const {
  std::vector<std::size_t> img(source_n());
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < p_.cols(); ++j)
      if (p_(i, j) > p_(i, best)) best = j;
    img[static_cast<std::size_t>(i)] = static_cast<std::size_t>(best);
  }
  return Mapping(target_n(), std::move(img));
}

double soft_distortion(const SoftMapping& p, const FiniteMetricSpace& x,
                       const FiniteMetricSpace& y) {
  if (p.source_n() != x.size() || p.target_n() != y.size())
    throw DimensionMismatch("soft mapping dimensions do not match the spaces");
  const Eigen::MatrixXd& pm = p.matrix();
  return (dense(x) - pm * dense(y) * pm.transpose()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Eigen::VectorXd w = (v.array() - theta).cwiseMax(0.0).matrix();
  const double s = w.sum();
  if (s > 0.0) w /= s;
  return w.cwiseMin(1.0);
}

RelaxResult relax_mgh_direction(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                const RelaxConfig& config) {
  if (!(config.p >= 1.0)) throw std::invalid_argument("surrogate exponent must be >= 1");
  if (config.restarts == 0) throw std::invalid_argument("at least one restart is required");
  if (config.initial &&
      (config.initial->source_n() != x.size() || config.initial->target_n() != y.size()))
    throw DimensionMismatch("initial mapping does not match the spaces");

  const auto nx = static_cast<Eigen::Index>(x.size());
  const auto ny = static_cast<Eigen::Index>(y.size());
  double scale = std::max(x.diameter(), y.diameter());
  if (scale == 0.0) scale = 1.0;
  const Eigen::MatrixXd dx = dense(x) / scale;
  const Eigen::MatrixXd dy = dense(y) / scale;
  const Surrogate objective{dx, dy, config.p};

  std::optional<RelaxResult> best;
  for (unsigned restart = 0; restart < config.restarts; ++restart) {
    std::mt19937_64 rng(config.seed * 0x9E3779B97F4A7C15ull + restart);
    Eigen::MatrixXd pm;
    if (restart == 0) {
      pm = config.initial ? SoftMapping::from_mapping(*config.initial).matrix()
                          : SoftMapping::uniform(x.size(), y.size()).matrix();
    } else {
      // Halfway between a random vertex and a random interior point.
      pm.resize(nx, ny);
      for (Eigen::Index i = 0; i < nx; ++i) {
        double total = 0.0;
        for (Eigen::Index j = 0; j < ny; ++j) {
          pm(i, j) = -std::log1p(-unit(rng));
          total += pm(i, j);
        }
        pm.row(i) *= 0.5 / total;
        pm(i, static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(ny))) += 0.5;
      }
    }

    std::vector<double> trace;
    double f = objective.value(pm);
    trace.push_back(f);
    double step = config.step_size;
    bool converged = false;
    for (unsigned it = 0; it < config.max_iters && !converged; ++it) {
      const Eigen::MatrixXd grad = objective.gradient(pm, f);
      bool accepted = false;
      while (step > 1e-12) {
        Eigen::MatrixXd candidate = project_rows(pm - step * grad);
        const double fc = objective.value(candidate);
        if (fc < f) {
          const double moved = (candidate - pm).norm();
          pm = std::move(candidate);
          f = fc;
          trace.push_back(f);
          step *= 1.5;
          accepted = true;
          if (moved < 1e-12) converged = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) converged = true;
    }

    SoftMapping soft(project_rows(pm));
    Mapping rounded = soft.round();
    const double rounded_value = distortion(rounded, x, y);
    if (!best || rounded_value < best->rounded_value ||
        (rounded_value == best->rounded_value && f * scale < best->surrogate)) {
      RelaxResult r;
      r.soft_value = soft_distortion(soft, x, y);
      r.soft = std::move(soft);
      r.rounded = std::move(rounded);
      r.rounded_value = rounded_value;
      r.surrogate = f * scale;
      r.best_restart = restart;
      r.trace = std::move(trace);
      for (double& t : r.trace) t *= scale;
      r.converged = converged;
      best = std::move(r);
    }
  }
  return std::move(*best);
}

}  // namespace ghm
