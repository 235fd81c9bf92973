#include "ghm/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace ghm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_simplex(std::size_t m, double lambda) {
  if (m == 0) throw std::invalid_argument("simplex needs at least one point");
  if (!(lambda > 0.0)) throw std::invalid_argument("simplex diameter must be positive");
}

class NodeBudget {
 public:
  explicit NodeBudget(const SolverBudget& b) : max_nodes_(b.max_nodes) {
    if (b.time_limit)
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(*b.time_limit));
  }

  bool tick() {
    ++nodes_;
    if (max_nodes_ && nodes_ > *max_nodes_) exhausted_ = true;
    if (deadline_ && (nodes_ & 1023u) == 0 && std::chrono::steady_clock::now() > *deadline_)
      exhausted_ = true;
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::optional<std::uint64_t> max_nodes_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

// Branch-and-bound over labelled partitions of X (restricted growth strings),
// scoring each by the fibre/cross-distance form of the distortion into a
// regular simplex.
class PartitionSearch {
 public:
  PartitionSearch(const FiniteMetricSpace& x, double lambda, std::size_t max_blocks,
                  bool exact_blocks, NodeBudget& budget)
      : x_(x), lambda_(lambda), max_blocks_(max_blocks), exact_blocks_(exact_blocks),
        base_(x.diameter() - lambda), budget_(budget), label_(x.size(), kNone) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) order_.push_back(i);

    // Trivial start: the first blocks-1 points alone, everything else together.
    const std::size_t blocks = exact_blocks_ ? max_blocks_ : 1;
    best_labels_.assign(n, blocks - 1);
    for (std::size_t i = 0; i + 1 < blocks; ++i) best_labels_[i] = i;
    best_ = score(best_labels_);
  }

  void run() {
    if (best_ > floor()) descend(0, 0, 0.0, kInf);
  }

  double best() const { return best_; }
  const std::vector<std::size_t>& labels() const { return best_labels_; }

 private:
  double floor() const { return std::max(0.0, base_); }

  double score(const std::vector<std::size_t>& labels) const {
    double fibre = 0.0, cross = kInf;
    for (std::size_t i = 0; i < x_.size(); ++i)
      for (std::size_t j = i + 1; j < x_.size(); ++j) {
        if (labels[i] == labels[j]) fibre = std::max(fibre, x_(i, j));
        else cross = std::min(cross, x_(i, j));
      }
    return std::max({fibre, base_, lambda_ - cross});
  }

  void descend(std::size_t pos, std::size_t blocks, double fibre, double cross) {
    const double bound = std::max({fibre, base_, lambda_ - cross});
    if (bound >= best_ || budget_.exhausted() || done_) return;
    const std::size_t n = x_.size();
    if (pos == n) {
      if (exact_blocks_ && blocks != max_blocks_) return;
      best_ = bound;
      best_labels_ = label_;
      if (best_ <= floor()) done_ = true;
      return;
    }
    const std::size_t p = order_[pos];
    struct Option {
      std::size_t block;
      double fibre, cross, bound;
    };
    std::vector<Option> options;
    const std::size_t limit = std::min(blocks + 1, max_blocks_);
    for (std::size_t b = 0; b < limit; ++b) {
      const std::size_t new_blocks = std::max(blocks, b + 1);
      if (exact_blocks_ && n - pos - 1 < max_blocks_ - new_blocks) continue;
      double f = fibre, c = cross;
      for (std::size_t k = 0; k < pos; ++k) {
        const std::size_t q = order_[k];
        if (label_[q] == b) f = std::max(f, x_(p, q));
        else c = std::min(c, x_(p, q));
      }
      options.push_back({b, f, c, std::max({f, base_, lambda_ - c})});
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const Option& a, const Option& b) { return a.bound < b.bound; });
    for (const Option& o : options) {
      if (o.bound >= best_) break;
      if (!budget_.tick()) return;
      label_[p] = o.block;
      descend(pos + 1, std::max(blocks, o.block + 1), o.fibre, o.cross);
      label_[p] = kNone;
      if (done_) return;
    }
  }

  const FiniteMetricSpace& x_;
  double lambda_;
  std::size_t max_blocks_;
  bool exact_blocks_;
  double base_;
  NodeBudget& budget_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> label_;
  std::vector<std::size_t> best_labels_;
  double best_ = kInf;
  bool done_ = false;
};

// Best m-subset of X for an injection from the simplex: minimises the largest
// |lambda - d| over chosen pairs. Only strict improvements on `incumbent`.
class SubsetSearch {
 public:
  SubsetSearch(const FiniteMetricSpace& x, std::size_t m, double lambda, double incumbent,
               NodeBudget& budget)
      : x_(x), m_(m), lambda_(lambda), best_(incumbent), budget_(budget) {}

  void run() { descend(0, 0.0); }

  double best() const { return best_; }
  const std::vector<std::size_t>& chosen() const { return best_set_; }

 private:
  void descend(std::size_t start, double current) {
    if (current >= best_ || budget_.exhausted()) return;
    if (set_.size() == m_) {
      best_ = current;
      best_set_ = set_;
      return;
    }
    const std::size_t need = m_ - set_.size();
    for (std::size_t p = start; p + need <= x_.size(); ++p) {
      double v = current;
      for (std::size_t q : set_) v = std::max(v, std::abs(lambda_ - x_(p, q)));
      if (v >= best_) continue;
      if (!budget_.tick()) return;
      set_.push_back(p);
      descend(p + 1, v);
      set_.pop_back();
    }
  }

  const FiniteMetricSpace& x_;
  std::size_t m_;
  double lambda_;
  double best_;
  NodeBudget& budget_;
  std::vector<std::size_t> set_;
  std::vector<std::size_t> best_set_;
};

}  // namespace

double simplex_distortion(const Mapping& f, const FiniteMetricSpace& x, double lambda) {
  if (f.source_n() != x.size()) throw DimensionMismatch("mapping source does not match space");
  double fibre = 0.0, cross = kInf;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (f(i) == f(j)) fibre = std::max(fibre, x(i, j));
      else cross = std::min(cross, x(i, j));
    }
  return std::max({fibre, x.diameter() - lambda, lambda - cross});
}

DistanceResult gh_to_simplex(const FiniteMetricSpace& x, std::size_t m, double lambda,
                             const SolverBudget& budget) {
  require_simplex(m, lambda);
  const std::size_t n = x.size();
  DistanceResult r;
  r.kind = DistanceKind::GH;

  if (m > n) {
    // f embeds X into the first n vertices; g inverts it and parks the rest on x_0.
    r.value = 0.5 * std::max(lambda, x.diameter() - lambda);
    std::vector<std::size_t> back(m, 0);
    for (std::size_t i = 0; i < n; ++i) back[i] = i;
    r.certificate = {Mapping(m, Mapping::identity(n).image()), Mapping(n, std::move(back))};
    r.lower_bound = r.upper_bound = r.value;
    return r;
  }

  NodeBudget nodes(budget);
  PartitionSearch search(x, lambda, m, true, nodes);
  search.run();
  const std::vector<std::size_t>& labels = search.labels();

  // The pseudoinverse of a surjection picks the first point of every fibre.
  std::vector<std::size_t> back(m, kNone);
  for (std::size_t i = 0; i < n; ++i)
    if (back[labels[i]] == kNone) back[labels[i]] = i;
  r.certificate = {Mapping(m, labels), Mapping(n, std::move(back))};
  r.value = 0.5 * search.best();
  r.nodes_explored = nodes.nodes();
  r.exact = !nodes.exhausted();
  r.upper_bound = r.value;
  r.lower_bound = r.exact ? r.value : 0.5 * std::abs(x.diameter() - lambda);
  return r;
}

DistanceResult mgh_to_simplex(const FiniteMetricSpace& x, std::size_t m, double lambda,
                              const SolverBudget& budget) {
  require_simplex(m, lambda);
  const std::size_t n = x.size();
  NodeBudget nodes(budget);

  PartitionSearch into(x, lambda, std::min(m, n), false, nodes);
  into.run();
  const double phi = into.best();

  // A non-injective map out of the simplex costs at least lambda, and the
  // constant map costs exactly that.
  double gamma = m == 1 ? 0.0 : lambda;
  std::vector<std::size_t> back(m, 0);
  if (m >= 2 && m <= n) {
    SubsetSearch out(x, m, lambda, gamma, nodes);
    out.run();
    if (!out.chosen().empty()) {
      gamma = out.best();
      back = out.chosen();
    }
  }

  DistanceResult r;
  r.kind = DistanceKind::mGH;
  r.certificate = {Mapping(m, into.labels()), Mapping(n, std::move(back))};
  r.value = 0.5 * std::max(phi, gamma);
  r.nodes_explored = nodes.nodes();
  r.exact = !nodes.exhausted();
  r.upper_bound = r.value;
  r.lower_bound = r.exact ? r.value : 0.5 * std::abs(x.diameter() - lambda);
  return r;
}

}  // namespace ghm
