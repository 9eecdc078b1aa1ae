#include "htee/sit_min.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace htee {

void SitConfig::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("SitConfig: eps must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("SitConfig: eta must be > 0");
  if (node_budget == 0) throw std::invalid_argument("SitConfig: node_budget must be > 0");
  if (time_budget && !(*time_budget > 0.0)) throw std::invalid_argument("SitConfig: time_budget must be > 0");
}

double sum_power(std::span<const double> p) { return std::accumulate(p.begin(), p.end(), 0.0); }

bool reduce_powersum(std::span<const double> lower, std::span<double> upper, double gamma) {
  const double lower_sum = sum_power(lower);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const double cap = gamma - (lower_sum - lower[i]);
    if (cap < lower[i]) return false;
    upper[i] = std::min(upper[i], cap);
  }
  return true;
}

std::optional<Box> reduce_box_powersum(const Box& box, double gamma) {
  Box out = box;
  if (!reduce_powersum(box.lower(), BoxAccess::upper(out), gamma)) return std::nullopt;
  return out;
}

bool reduce_none(std::span<const double> lower, std::span<double>, double gamma) {
  return sum_power(lower) <= gamma;
}

namespace {

// Same slab layout as the maximizer: 2n doubles per slot, recycled.
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

  std::span<double> lower(std::uint32_t s) { return {data_.data() + std::size_t{s} * 2 * n_, n_}; }
  std::span<double> upper(std::uint32_t s) { return {data_.data() + std::size_t{s} * 2 * n_ + n_, n_}; }

 private:
  std::size_t n_;
  std::vector<double> data_;
  std::vector<std::uint32_t> free_;
};

}  // namespace

Solution minimize_sit(const Objective& f, const MMPair& constraint, const Box& box0,
                      const BoxReducer& reducer, const SitConfig& cfg, const SitOptions& opts) {
  cfg.validate();
  const std::size_t n = box0.dim();
  if (constraint.arity() != n) {
    throw std::invalid_argument("minimize_sit: constraint arity does not match box dimension");
  }
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  Solution sol;
  double best_value = 0.0;
  double gamma = f(box0.upper());

  if (opts.warm_start) {
    const auto& x = *opts.warm_start;
    if (x.size() != n) throw std::invalid_argument("minimize_sit: warm start dimension mismatch");
    // An infeasible warm start is ignored rather than trusted.
    if (box0.contains(x) && constraint.diagonal(x) <= 0.0) {
      sol.point = x;
      best_value = f(x);
      gamma = best_value - cfg.eta;
    }
  }

  BoxPool pool(n);
  std::deque<std::uint32_t> active;
  {
    const auto s0 = pool.acquire();
    std::copy(box0.lower().begin(), box0.lower().end(), pool.lower(s0).begin());
    std::copy(box0.upper().begin(), box0.upper().end(), pool.upper(s0).begin());
    active.push_back(s0);
  }

  bool exhausted = false;
  std::uint64_t k = 0;

  struct Child {
    std::uint32_t slot;
    double f_lower;
  };
  Child children[2];

  while (!active.empty()) {
    if (k >= cfg.node_budget || (cfg.time_budget && (k & 1023) == 0 && elapsed() > *cfg.time_budget)) {
      exhausted = true;
      break;
    }
    const std::uint32_t cur = active.front();
    active.pop_front();
    ++k;
    auto lo = pool.lower(cur);
    auto hi = pool.upper(cur);
    if (opts.on_extract) {
      opts.on_extract(Box({lo.begin(), lo.end()}, {hi.begin(), hi.end()}));
    }
    bool degenerate = true;
    for (std::size_t i = 0; i < n && degenerate; ++i) degenerate = hi[i] <= lo[i];
    if (degenerate) {
      pool.release(cur);
      continue;
    }

    SitIteration it{k, 0, 0.0, false, 0, 0, 0};

    // Branching (M- keeps the slot, M+ gets a copy) and reduction.
    const std::uint32_t right = pool.acquire();
    lo = pool.lower(cur);
    hi = pool.upper(cur);
    const std::size_t j = split_dimension(lo, hi);
    const double mid = 0.5 * (lo[j] + hi[j]);
    std::copy(lo.begin(), lo.end(), pool.lower(right).begin());
    std::copy(hi.begin(), hi.end(), pool.upper(right).begin());
    hi[j] = mid;
    pool.lower(right)[j] = mid;

    std::size_t count = 0;
    for (const std::uint32_t slot : {cur, right}) {
      if (reducer(pool.lower(slot), pool.upper(slot), gamma)) {
        children[count++] = Child{slot, f(pool.lower(slot))};
      } else {
        pool.release(slot);
        ++it.reduced_away;
      }
    }

    // Incumbent: cheapest feasible lower corner.
    const Child* cand = nullptr;
    for (std::size_t c = 0; c < count; ++c) {
      if (constraint.diagonal(pool.lower(children[c].slot)) > 0.0) continue;
      if (!cand || children[c].f_lower < cand->f_lower) cand = &children[c];
    }
    if (cand && (!sol.has_point() || cand->f_lower < best_value)) {
      const auto x = pool.lower(cand->slot);
      sol.point.assign(x.begin(), x.end());
      best_value = cand->f_lower;
      gamma = best_value - cfg.eta;
      it.incumbent_updated = true;
    }

    // Pruning: objective cut first, then the essential-feasibility cut.
    for (std::size_t c = 0; c < count; ++c) {
      const auto slot = children[c].slot;
      if (children[c].f_lower >= gamma) {
        ++it.pruned_objective;
        pool.release(slot);
      } else if (refined_lower_bound(constraint, pool.lower(slot), pool.upper(slot)) > -cfg.eps) {
        ++it.pruned_constraint;
        pool.release(slot);
      } else {
        active.push_back(slot);
      }
    }

    it.active = active.size();
    it.gamma = gamma;
    if (opts.on_iteration) opts.on_iteration(it);
    if (opts.trace) {
      *opts.trace << fmt::format("{} {} {:.9g} {} {} {} {}\n", it.k, it.active, it.gamma,
                                 it.incumbent_updated ? 1 : 0, it.reduced_away, it.pruned_objective,
                                 it.pruned_constraint);
    }
  }

  sol.nodes = k;
  sol.value = sol.has_point() ? best_value : 0.0;
  if (exhausted) {
    sol.status = SolveStatus::BudgetExhausted;
  } else {
    sol.status = sol.has_point() ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  sol.wall_time = elapsed();
  return sol;
}

}  // namespace htee
