#include "greedylab/sigma.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"

namespace greedylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Items are considered in ascending index order; capacities are checked on
// long double partial sums in that same order, matching weight_measure.
struct Knapsack {
  IndexSet items;
  std::vector<double> cost;
  double capacity;

  bool fits(long double used, std::size_t i) const { return static_cast<double>(used + cost[i]) <= capacity; }
};

struct Best {
  double value = kInf;
  IndexSet set;
  double gap = 0;

  void offer(double v, const IndexSet& s, double g) {
    if (v < value || (v == value && s < set)) value = v, set = s, gap = g;
  }
};

Knapsack make_knapsack(const IndexSet& items, const Weight* w, double capacity) {
  Knapsack k{items, {}, capacity};
  for (Index i : items) k.cost.push_back(w ? w->at(i) : 1.0);
  return k;
}

// Subtree roots: include/exclude decisions on the first `depth` items.
struct Task {
  std::size_t next;
  IndexSet chosen;
  long double used;
  std::vector<std::size_t> excluded;
};

std::vector<Task> split(const Knapsack& ks, std::size_t depth) {
  std::vector<Task> tasks{{0, {}, 0.0L, {}}};
  depth = std::min(depth, ks.items.size());
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Task> next;
    for (auto& t : tasks) {
      if (ks.fits(t.used, d)) {
        Task inc = t;
        inc.next = d + 1;
        inc.chosen.push_back(ks.items[d]);
        inc.used += ks.cost[d];
        next.push_back(std::move(inc));
      }
      t.next = d + 1;
      t.excluded.push_back(d);
      next.push_back(std::move(t));
    }
    tasks = std::move(next);
  }
  return tasks;
}

// ---- projections ----

struct ProjCtx {
  const NormSpec& spec;
  const SparseVector& x;
  const Knapsack& ks;
};

double projection_error(const ProjCtx& c, const IndexSet& b, std::vector<Entry>& buf) {
  buf.clear();
  for (const auto& e : c.x.entries())
    if (!contains(b, e.index)) buf.push_back(e);
  return norm_eval(c.spec, buf);
}

void proj_dfs(const ProjCtx& c, std::size_t i, IndexSet& chosen, long double used, Best& best,
              std::vector<Entry>& buf, std::size_t& evals) {
  if (i == c.ks.items.size()) {
    IndexSet s = chosen;
    std::sort(s.begin(), s.end());
    ++evals;
    best.offer(projection_error(c, s, buf), s, 0);
    return;
  }
  if (c.ks.fits(used, i)) {
    chosen.push_back(c.ks.items[i]);
    proj_dfs(c, i + 1, chosen, used + c.ks.cost[i], best, buf, evals);
    chosen.pop_back();
  }
  proj_dfs(c, i + 1, chosen, used, best, buf, evals);
}

SupportSearch projection_search(const NormSpec& spec, const SparseVector& x, const Knapsack& ks, Exec exec) {
  if (ks.items.size() > kMaxPool) throw BudgetError("support larger than 24: exhaustive search refused");
  ProjCtx ctx{spec, x, ks};
  SupportSearch out;
  out.pool = ks.items;
  auto tasks = split(ks, exec == Exec::kParallel ? 10 : 0);
  std::vector<Best> bests(tasks.size());
  std::vector<std::size_t> evals(tasks.size(), 0);
  auto run = [&](std::size_t t) {
    std::vector<Entry> buf;
    IndexSet chosen = tasks[t].chosen;
    proj_dfs(ctx, tasks[t].next, chosen, tasks[t].used, bests[t], buf, evals[t]);
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  } else {
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  }
  Best best;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    best.offer(bests[t].value, bests[t].set, 0);
    out.evaluations += evals[t];
  }
  out.value = best.value;
  out.support = best.set;
  out.y = project(x, best.set);
  return out;
}

// ---- Chebyshev branch and bound ----

struct ChebCtx {
  const NormSpec& spec;
  const SparseVector& x;
  const Knapsack& ks;
  const SigmaOptions& opts;
  std::atomic<double>* incumbent;
  std::atomic<bool>* flagged;
};

void lower_incumbent(std::atomic<double>& inc, double v) {
  double cur = inc.load();
  while (v < cur && !inc.compare_exchange_weak(cur, v)) {
  }
}

void cheb_leaf(const ChebCtx& c, const IndexSet& chosen, Best& best, std::size_t& evals) {
  IndexSet s = make_index_set(chosen);
  ChebResult r = chebyshev_best(c.spec, c.x, s, c.opts.cheb);
  ++evals;
  if (r.flagged) c.flagged->store(true);
  best.offer(r.error, s, r.gap);
  lower_incumbent(*c.incumbent, r.error);
}

// Leaves are the maximal feasible supports; any other support is dominated
// by one of them.
void cheb_dfs(const ChebCtx& c, std::size_t i, IndexSet& chosen, long double used, std::vector<std::size_t>& excluded,
              Best& best, std::size_t& evals) {
  const std::size_t n = c.ks.items.size();
  // Everything still fitting individually.
  IndexSet reach = chosen;
  bool all_fit = true;
  long double total = used;
  for (std::size_t j = i; j < n; ++j) {
    if (c.ks.fits(used, j)) reach.push_back(c.ks.items[j]);
    if (all_fit && c.ks.fits(total, j)) total += c.ks.cost[j];
    else all_fit = false;
  }
  if (all_fit) {
    for (std::size_t j : excluded)
      if (c.ks.fits(total, j)) return;  // not maximal
    for (std::size_t j = i; j < n; ++j) chosen.push_back(c.ks.items[j]);
    cheb_leaf(c, chosen, best, evals);
    chosen.resize(chosen.size() - (n - i));
    return;
  }
  if (!chosen.empty() || i > 0) {
    ChebResult lb = chebyshev_best(c.spec, c.x, make_index_set(reach), c.opts.bound_cheb);
    ++evals;
    if (lb.lower() > c.incumbent->load()) return;
  }
  if (c.ks.fits(used, i)) {
    chosen.push_back(c.ks.items[i]);
    cheb_dfs(c, i + 1, chosen, used + c.ks.cost[i], excluded, best, evals);
    chosen.pop_back();
  }
  excluded.push_back(i);
  cheb_dfs(c, i + 1, chosen, used, excluded, best, evals);
  excluded.pop_back();
}

SupportSearch cheb_search(const NormSpec& spec, const SparseVector& x, const Knapsack& ks, const SigmaOptions& opts,
                          bool require_superset = true) {
  if (ks.items.size() > kMaxPool) throw BudgetError("pool larger than 24: branch and bound refused");
  if (require_superset && !is_subset(x.support(), ks.items)) throw ContractError("pool must contain supp(x)");
  std::atomic<double> incumbent{kInf};
  std::atomic<bool> flagged{false};
  ChebCtx ctx{spec, x, ks, opts, &incumbent, &flagged};
  SupportSearch out;
  out.pool = ks.items;

  // Seed the incumbent with the largest coefficients that fit. The seed
  // takes part in the final minimum, so pruning against it is safe.
  Best seed_best;
  {
    std::vector<std::size_t> order(ks.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(x.at(ks.items[a])) > std::abs(x.at(ks.items[b]));
    });
    IndexSet seed;
    for (std::size_t i : order) {
      IndexSet trial = make_index_set([&] {
        auto v = seed;
        v.push_back(ks.items[i]);
        return v;
      }());
      long double used = 0;
      for (std::size_t j = 0; j < ks.items.size(); ++j)
        if (contains(trial, ks.items[j])) used += ks.cost[j];
      if (static_cast<double>(used) <= ks.capacity) seed = trial;
    }
    ChebResult r = chebyshev_best(spec, x, seed, opts.cheb);
    lower_incumbent(incumbent, r.error);
    seed_best.offer(r.error, seed, r.gap);
    if (r.flagged) flagged = true;
    ++out.evaluations;
  }

  auto tasks = split(ks, opts.exec == Exec::kParallel ? 6 : 0);
  std::vector<Best> bests(tasks.size());
  std::vector<std::size_t> evals(tasks.size(), 0);
  auto run = [&](std::size_t t) {
    IndexSet chosen = tasks[t].chosen;
    std::vector<std::size_t> excluded = tasks[t].excluded;
    cheb_dfs(ctx, tasks[t].next, chosen, tasks[t].used, excluded, bests[t], evals[t]);
  };
  if (opts.exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  } else {
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  }
  Best best = seed_best;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (bests[t].value < kInf) best.offer(bests[t].value, bests[t].set, bests[t].gap);
    out.evaluations += evals[t];
  }
  out.value = best.value;
  out.support = best.set;
  out.gap = best.gap;
  out.y = chebyshev_best(spec, x, best.set, opts.cheb).y;
  out.flagged = flagged.load();
  return out;
}

void check_budget(double budget) {
  if (!(budget >= 0) || std::isnan(budget)) throw ContractError("budget must be a nonnegative real");
}

}  // namespace

SupportSearch sigma_m_search(const NormSpec& spec, const SparseVector& x, std::size_t m, const IndexSet& pool,
                             const SigmaOptions& opts) {
  return cheb_search(spec, x, make_knapsack(pool, nullptr, static_cast<double>(m)), opts);
}

SupportSearch sigma_m_search_in(const NormSpec& spec, const SparseVector& x, std::size_t m, const IndexSet& pool,
                                const SigmaOptions& opts) {
  return cheb_search(spec, x, make_knapsack(pool, nullptr, static_cast<double>(m)), opts, false);
}

double sigma_m(const NormSpec& spec, const SparseVector& x, std::size_t m, const IndexSet& pool) {
  return sigma_m_search(spec, x, m, pool).value;
}

SupportSearch weighted_sigma_search(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget,
                                    const IndexSet& pool, const SigmaOptions& opts) {
  check_budget(budget);
  return cheb_search(spec, x, make_knapsack(pool, &w, budget), opts);
}

double weighted_sigma(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget,
                      const IndexSet& pool) {
  return weighted_sigma_search(spec, x, w, budget, pool).value;
}

SupportSearch sigma_tilde_search(const NormSpec& spec, const SparseVector& x, std::size_t m, Exec exec) {
  return projection_search(spec, x, make_knapsack(x.support(), nullptr, static_cast<double>(m)), exec);
}

SupportSearch projection_search_in(const NormSpec& spec, const SparseVector& x, const IndexSet& items, std::size_t m,
                                   Exec exec) {
  return projection_search(spec, x, make_knapsack(items, nullptr, static_cast<double>(m)), exec);
}

double sigma_tilde_m(const NormSpec& spec, const SparseVector& x, std::size_t m) {
  return sigma_tilde_search(spec, x, m).value;
}

SupportSearch weighted_projection_search(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget,
                                         Exec exec) {
  check_budget(budget);
  return projection_search(spec, x, make_knapsack(x.support(), &w, budget), exec);
}

double weighted_projection_error(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget) {
  return weighted_projection_search(spec, x, w, budget).value;
}

}  // namespace greedylab
