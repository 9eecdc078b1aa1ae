#include "htee/bb_max.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <algorithm>
#include <vector>

namespace htee {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("SolverConfig: eta must be > 0");
  if (!(eps_feas >= 0.0)) throw std::invalid_argument("SolverConfig: eps_feas must be >= 0");
  if (node_budget == 0) throw std::invalid_argument("SolverConfig: node_budget must be > 0");
  if (time_budget && !(*time_budget > 0.0)) throw std::invalid_argument("SolverConfig: time_budget must be > 0");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Boxes live in a slab of 2n doubles per slot (lower then upper); freed slots
// are recycled, so the hot loop does not allocate once the slab has grown.
class BoxPool {
 public:
  explicit BoxPool(std::size_t n) : n_(n) {}

  std::uint32_t acquire() {
    if (!free_.empty()) {
      const auto s = free_.back();
      free_.pop_back();
      return s;
    }
    data_.resize(data_.size() + 2 * n_);
    return static_cast<std::uint32_t>(data_.size() / (2 * n_) - 1);
  }
  void release(std::uint32_t s) { free_.push_back(s); }

  double* lower(std::uint32_t s) { return data_.data() + std::size_t{s} * 2 * n_; }
  double* upper(std::uint32_t s) { return lower(s) + n_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
  std::vector<std::uint32_t> free_;
};

struct Node {
  double bound;
  std::uint64_t seq;
  std::uint32_t slot;
};

// Largest bound first; older node first among equal bounds.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.seq > b.seq;
  }
};

class Frontier {
 public:
  explicit Frontier(Selection sel) : sel_(sel) {}

  bool empty() const { return sel_ == Selection::BestFirst ? heap_.empty() : fifo_.empty(); }
  std::size_t size() const { return sel_ == Selection::BestFirst ? heap_.size() : fifo_.size(); }

  void push(Node n) {
    if (sel_ == Selection::BestFirst) {
      heap_.push(n);
    } else {
      fifo_.push_back(n);
    }
  }

  Node pop() {
    Node n;
    if (sel_ == Selection::BestFirst) {
      n = heap_.top();
      heap_.pop();
    } else {
      n = fifo_.front();
      fifo_.pop_front();
    }
    return n;
  }

  double best_bound() const {
    if (empty()) return kNegInf;
    if (sel_ == Selection::BestFirst) return heap_.top().bound;
    double b = kNegInf;
    for (const auto& n : fifo_) b = std::max(b, n.bound);
    return b;
  }

 private:
  Selection sel_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> heap_;
  std::deque<Node> fifo_;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw std::domain_error(std::string(what) + ": non-finite evaluation");
  return v;
}

}  // namespace

Solution maximize(const MMPair& objective, const MMPair& constraint, const Box& box,
                  const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = box.dim();
  if (objective.arity() != n || constraint.arity() != n) {
    throw std::invalid_argument("maximize: arity does not match box dimension");
  }
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  Solution sol;
  double incumbent = kNegInf;
  const auto fixed = constraint.constant_value();

  auto try_candidate = [&](std::span<const double> x) {
    if (fixed ? *fixed > cfg.eps_feas : constraint.diagonal(x) > cfg.eps_feas) return;
    const double v = objective.diagonal(x);
    if (v > incumbent) {
      incumbent = v;
      sol.point.assign(x.begin(), x.end());
    }
  };

  BoxPool pool(n);
  Frontier frontier(cfg.selection);
  std::uint64_t seq = 0;

  // Screens a box already written to `slot`. A child shares one corner with
  // its parent, which was a candidate when the parent was screened; only
  // the fresh corner is tried again.
  enum class Fresh { Both, Lower, Upper };
  // parent_bound caps the child: the refined bound is not monotone under
  // subdivision on its own.
  auto consider = [&](std::uint32_t slot, Fresh fresh, double parent_bound) {
    const std::span<const double> lo(pool.lower(slot), n);
    const std::span<const double> hi(pool.upper(slot), n);
    if (fixed ? *fixed > 0.0 : checked(constraint(lo, hi), "lower_bound_min") > 0.0) {
      pool.release(slot);
      return;
    }
    if (fresh != Fresh::Upper) try_candidate(lo);
    if (fresh != Fresh::Lower) try_candidate(hi);
    const double ub = std::min(parent_bound, refined_upper_bound(objective, lo, hi));
    bool degenerate = true;
    for (std::size_t i = 0; i < n && degenerate; ++i) degenerate = hi[i] <= lo[i];
    if (ub <= incumbent + cfg.eta || degenerate) {
      pool.release(slot);
      return;
    }
    frontier.push(Node{ub, seq++, slot});
  };

  {
    const auto s = pool.acquire();
    std::copy(box.lower().begin(), box.lower().end(), pool.lower(s));
    std::copy(box.upper().begin(), box.upper().end(), pool.upper(s));
    consider(s, Fresh::Both, std::numeric_limits<double>::infinity());
  }

  bool exhausted = false;
  while (!frontier.empty()) {
    if (sol.nodes >= cfg.node_budget || (cfg.time_budget && (sol.nodes & 1023) == 0 && elapsed() > *cfg.time_budget)) {
      exhausted = true;
      break;
    }
    const Node node = frontier.pop();
    if (node.bound <= incumbent + cfg.eta) {
      pool.release(node.slot);
      continue;
    }
    ++sol.nodes;

    // M- reuses the parent's slot, M+ gets a fresh one (acquire may grow
    // the slab, so pointers are taken afterwards).
    const auto right = pool.acquire();
    double* plo = pool.lower(node.slot);
    double* phi = pool.upper(node.slot);
    const std::size_t j = split_dimension({plo, n}, {phi, n});
    const double mid = 0.5 * (plo[j] + phi[j]);
    std::copy(plo, plo + 2 * n, pool.lower(right));
    phi[j] = mid;
    pool.lower(right)[j] = mid;
    consider(node.slot, Fresh::Upper, node.bound);
    consider(right, Fresh::Lower, node.bound);

    if (cfg.on_iteration) {
      cfg.on_iteration(BbProgress{sol.nodes, frontier.size(), frontier.best_bound(), incumbent});
    }
  }

  sol.value = sol.has_point() ? incumbent : 0.0;
  if (exhausted) {
    sol.status = SolveStatus::BudgetExhausted;
  } else {
    sol.status = sol.has_point() ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  sol.wall_time = elapsed();
  return sol;
}

Solution maximize(const MMPair& objective, const Box& box, const SolverConfig& cfg) {
  return maximize(objective, MMPair::constant(box.dim(), -1.0), box, cfg);
}

}  // namespace htee
