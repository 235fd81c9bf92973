#include "ghm/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghm {

const char* to_string(MetricViolation v) {
  switch (v) {
    case MetricViolation::NotSquare: return "NotSquare";
    case MetricViolation::NonFinite: return "NonFinite";
    case MetricViolation::NonzeroDiagonal: return "NonzeroDiagonal";
    case MetricViolation::NegativeDistance: return "NegativeDistance";
    case MetricViolation::NotSymmetric: return "NotSymmetric";
    case MetricViolation::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case MetricViolation::TriangleViolation: return "TriangleViolation";
  }
  return "Unknown";
}

namespace {

std::string describe(MetricViolation kind, const std::vector<std::size_t>& w,
                     const std::string& prefix) {
  std::ostringstream os;
  os << prefix << to_string(kind) << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

}  // namespace

MetricError::MetricError(MetricViolation kind, std::vector<std::size_t> witness)
    : MetricError(kind, std::move(witness), "") {}

MetricError::MetricError(MetricViolation kind, std::vector<std::size_t> witness,
                         const std::string& prefix)
    : std::runtime_error(describe(kind, witness, prefix)),
      kind_(kind),
      witness_(std::move(witness)) {}

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> labels,
                                     double tolerance)
    : n_(n), d_(std::move(dist)), labels_(std::move(labels)) {
  if (n_ == 0 || d_.size() != n_ * n_) throw MetricError(MetricViolation::NotSquare, {});
  if (!labels_.empty() && labels_.size() != n_)
    throw std::invalid_argument("label count does not match point count");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");

  double largest = 0.0;
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (!std::isfinite(d_[k])) throw MetricError(MetricViolation::NonFinite, {k / n_, k % n_});
    largest = std::max(largest, std::abs(d_[k]));
  }
  const double slack = tolerance * largest;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return d_[i * n_ + j]; };

  for (std::size_t i = 0; i < n_; ++i)
    if (at(i, i) != 0.0) throw MetricError(MetricViolation::NonzeroDiagonal, {i});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (at(i, j) < 0.0) throw MetricError(MetricViolation::NegativeDistance, {i, j});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > slack)
        throw MetricError(MetricViolation::NotSymmetric, {i, j});
      at(j, i) = at(i, j);
    }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (at(i, j) == 0.0) throw MetricError(MetricViolation::ZeroOffDiagonal, {i, j});
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      for (std::size_t via = 0; via < n_; ++via)
        if (at(a, b) > at(a, via) + at(via, b) + slack)
          throw MetricError(MetricViolation::TriangleViolation, {a, b, via});

  compute_summary();
}

FiniteMetricSpace::FiniteMetricSpace(Trusted, std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> labels)
    : n_(n), d_(std::move(dist)), labels_(std::move(labels)) {
  compute_summary();
}

void FiniteMetricSpace::compute_summary() {
  for (double v : d_) {
    diameter_ = std::max(diameter_, v);
    if (v != std::floor(v)) integral_ = false;
  }
}

FiniteMetricSpace FiniteMetricSpace::from_rows(const std::vector<std::vector<double>>& rows,
                                               double tolerance,
                                               std::vector<std::string> labels) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw MetricError(MetricViolation::NotSquare, {i});
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return FiniteMetricSpace(n, std::move(flat), std::move(labels), tolerance);
}

std::vector<std::vector<double>> FiniteMetricSpace::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> indices) const {
  const std::size_t m = indices.size();
  if (m == 0) throw MetricError(MetricViolation::NotSquare, {});
  std::vector<double> flat(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    if (indices[i] >= n_) throw std::out_of_range("subspace index out of range");
    for (std::size_t j = 0; j < m; ++j) flat[i * m + j] = (*this)(indices[i], indices[j]);
    if (!labels_.empty()) labels.push_back(labels_[indices[i]]);
  }
  // Induced distances of a valid space are valid unless an index repeats.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (indices[i] == indices[j]) throw MetricError(MetricViolation::ZeroOffDiagonal, {i, j});
  return FiniteMetricSpace(Trusted{}, m, std::move(flat), std::move(labels));
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& rows,
                                  double tolerance) {
  return FiniteMetricSpace::from_rows(rows, tolerance);
}

UltrametricCheck is_ultrametric(const FiniteMetricSpace& x, double tolerance) {
  const std::size_t n = x.size();
  const double slack = tolerance * x.diameter();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t via = 0; via < n; ++via)
        if (x(a, b) > std::max(x(a, via), x(via, b)) + slack)
          return {false, Triple{a, b, via}};
  return {};
}

std::vector<double> distance_multiset(const FiniteMetricSpace& x, std::size_t i) {
  if (i >= x.size()) throw std::out_of_range("point index out of range");
  std::vector<double> out;
  out.reserve(x.size() - 1);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != i) out.push_back(x(i, j));
  std::sort(out.begin(), out.end());
  return out;
}

bool covers(const FiniteMetricSpace& x, std::span<const std::size_t> indices,
            double epsilon) {
  if (indices.empty()) return false;
  for (std::size_t p = 0; p < x.size(); ++p) {
    bool hit = false;
    for (std::size_t c : indices)
      if (x(p, c) <= epsilon) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

EpsilonNet greedy_epsilon_net(const FiniteMetricSpace& x, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  EpsilonNet net{{0}, epsilon};
  std::vector<double> gap(x.row(0).begin(), x.row(0).end());
  for (;;) {
    auto far = std::max_element(gap.begin(), gap.end());  // first maximum
    if (*far <= epsilon) break;
    const auto next = static_cast<std::size_t>(far - gap.begin());
    net.indices.push_back(next);
    for (std::size_t p = 0; p < x.size(); ++p) gap[p] = std::min(gap[p], x(next, p));
  }
  return net;
}

}  // namespace ghm
