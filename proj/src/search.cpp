#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace ghm::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double spread(const FiniteMetricSpace& s, std::size_t i) {
  if (s.size() < 2) return 0.0;
  double lo = kInf, hi = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == i) continue;
    lo = std::min(lo, s(i, j));
    hi = std::max(hi, s(i, j));
  }
  return hi - lo;
}

}  // namespace

struct BottleneckSearch::Shared {
  std::atomic<double> best;
  std::mutex mu;
  std::vector<std::size_t> best_assignment;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  double floor = 0.0;
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct BottleneckSearch::Worker {
  Shared& shared;
  std::vector<double> table;  // (levels + 1) x vars x width
  std::vector<char> assigned;
  std::vector<std::size_t> value;
  std::uint64_t ticks = 0;

  double* level(std::size_t l, std::size_t vars, std::size_t width) {
    return table.data() + l * vars * width;
  }

  bool tick() {
    const auto n = shared.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared.max_nodes && n > *shared.max_nodes) {
      shared.budget_hit = true;
      shared.stop = true;
      return false;
    }
    if (shared.deadline && (++ticks & 1023u) == 0 &&
        std::chrono::steady_clock::now() > *shared.deadline) {
      shared.budget_hit = true;
      shared.stop = true;
      return false;
    }
    return !shared.stop.load(std::memory_order_relaxed);
  }
};

BottleneckSearch::BottleneckSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                   bool with_inverse)
    : x_(x), y_(y) {
  for (std::size_t i = 0; i < x.size(); ++i) vars_.push_back({true, i, y.size(), spread(x, i)});
  if (with_inverse)
    for (std::size_t j = 0; j < y.size(); ++j)
      vars_.push_back({false, j, x.size(), spread(y, j)});
  width_ = with_inverse ? std::max(x.size(), y.size()) : y.size();
}

double BottleneckSearch::term(std::size_t a, std::size_t u, std::size_t b,
                              std::size_t v) const {
  const Variable& va = vars_[a];
  const Variable& vb = vars_[b];
  if (va.in_x && vb.in_x) return std::abs(x_(va.point, vb.point) - y_(u, v));
  if (!va.in_x && !vb.in_x) return std::abs(y_(va.point, vb.point) - x_(u, v));
  // Cross term |d_X(x, g(y)) - d_Y(f(x), y)|.
  if (va.in_x) return std::abs(x_(va.point, v) - y_(u, vb.point));
  return std::abs(x_(vb.point, u) - y_(v, va.point));
}

std::size_t BottleneckSearch::pick(const Worker& w, std::size_t level, double incumbent) const {
  const std::size_t nv = vars_.size();
  const double* lb = w.table.data() + level * nv * width_;
  std::size_t chosen = kNone, chosen_count = kNone;
  for (std::size_t b = 0; b < nv; ++b) {
    if (w.assigned[b]) continue;
    std::size_t count = 0;
    for (std::size_t v = 0; v < vars_[b].domain; ++v) count += lb[b * width_ + v] < incumbent;
    if (count == 0) return kNone;
    if (chosen == kNone || count < chosen_count ||
        (count == chosen_count && vars_[b].spread > vars_[chosen].spread)) {
      chosen = b;
      chosen_count = count;
    }
  }
  return chosen;
}

bool BottleneckSearch::assign(Worker& w, std::size_t level, std::size_t var, std::size_t val,
                              double value) const {
  const std::size_t nv = vars_.size();
  const double incumbent = w.shared.best.load(std::memory_order_relaxed);
  const double* cur = w.level(level, nv, width_);
  double* next = w.level(level + 1, nv, width_);
  std::copy(cur, cur + nv * width_, next);
  w.assigned[var] = 1;
  w.value[var] = val;
  double bound = value;
  for (std::size_t b = 0; b < nv; ++b) {
    if (w.assigned[b]) continue;
    double* row = next + b * width_;
    double least = kInf;
    for (std::size_t v = 0; v < vars_[b].domain; ++v) {
      row[v] = std::max(row[v], term(var, val, b, v));
      least = std::min(least, row[v]);
    }
    bound = std::max(bound, least);
    if (bound >= incumbent) {
      w.assigned[var] = 0;
      return false;
    }
  }
  return true;
}

void BottleneckSearch::descend(Worker& w, std::size_t level, double current) const {
  Shared& s = w.shared;
  if (s.stop.load(std::memory_order_relaxed)) return;
  double incumbent = s.best.load(std::memory_order_relaxed);
  if (current >= incumbent) return;
  if (level == vars_.size()) {
    std::lock_guard lock(s.mu);
    if (current < s.best.load()) {
      s.best = current;
      s.best_assignment = w.value;
      if (current <= s.floor) s.stop = true;
    }
    return;
  }
  const std::size_t var = pick(w, level, incumbent);
  if (var == kNone) return;

  const double* lb = w.level(level, vars_.size(), width_) + var * width_;
  std::vector<std::size_t> order;
  order.reserve(vars_[var].domain);
  for (std::size_t v = 0; v < vars_[var].domain; ++v)
    if (lb[v] < incumbent) order.push_back(v);
  std::stable_sort(order.begin(), order.end(),
                   [lb](std::size_t a, std::size_t b) { return lb[a] < lb[b]; });

  for (std::size_t val : order) {
    incumbent = s.best.load(std::memory_order_relaxed);
    const double value = std::max(current, lb[val]);
    if (value >= incumbent) break;
    if (!w.tick()) return;
    if (!assign(w, level, var, val, value)) continue;
    descend(w, level + 1, value);
    w.assigned[var] = 0;
    if (s.stop.load(std::memory_order_relaxed)) return;
  }
}

SearchOutcome BottleneckSearch::run(double incumbent,
                                    std::vector<std::size_t> incumbent_assignment,
                                    double floor, const SolverBudget& budget) const {
  Shared shared;
  shared.best = incumbent;
  shared.best_assignment = std::move(incumbent_assignment);
  shared.floor = floor;
  shared.max_nodes = budget.max_nodes;
  if (budget.time_limit)
    shared.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(*budget.time_limit));

  const std::size_t nv = vars_.size();
  auto make_worker = [&] {
    return Worker{shared, std::vector<double>((nv + 1) * nv * width_, 0.0),
                  std::vector<char>(nv, 0), std::vector<std::size_t>(nv, 0)};
  };

  if (incumbent > floor) {
    const unsigned threads = worker_count(budget);
    if (threads <= 1 || nv < 2) {
      Worker w = make_worker();
      descend(w, 0, 0.0);
    } else {
      // Split on the root variable; workers share the incumbent.
      Worker root = make_worker();
      const std::size_t var = pick(root, 0, incumbent);
      std::atomic<std::size_t> next{0};
      auto body = [&] {
        Worker w = make_worker();
        for (;;) {
          const std::size_t val = next.fetch_add(1);
          if (val >= vars_[var].domain || shared.stop) break;
          if (!w.tick()) break;
          if (assign(w, 0, var, val, 0.0)) {
            descend(w, 1, 0.0);
            w.assigned[var] = 0;
          }
        }
      };
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
    }
  }

  SearchOutcome out;
  out.best = shared.best.load();
  out.assignment = std::move(shared.best_assignment);
  out.nodes = shared.nodes.load();
  out.complete = !shared.budget_hit.load();
  return out;
}

}  // namespace ghm::detail
