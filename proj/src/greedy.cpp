#include "greedylab/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace greedylab {

namespace {

struct Ranked {
  Index index;
  double mag;
};

// Support sorted by |x_j| descending, then index ascending.
std::vector<Ranked> ranked_support(const SparseVector& x) {
  std::vector<Ranked> r;
  r.reserve(x.size());
  for (const auto& e : x.entries()) r.push_back({e.index, std::abs(e.value)});
  std::stable_sort(r.begin(), r.end(), [](const Ranked& a, const Ranked& b) { return a.mag > b.mag; });
  return r;
}

void check_t(double t) {
  if (!(t > 0 && t <= 1)) throw ContractError("t must lie in (0, 1]");
}

double choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return std::round(c);
}

// Calls f on every k-subset of items (as positions), in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  while (true) {
    f(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Threshold levels: distinct magnitudes, descending. For a level a the sets
// with minimum exactly a are F(a) + a choice among the eligible indices
// with a <= |x_j| <= a / t containing at least one index at level a.
struct Level {
  double a;
  std::vector<Index> forced;
  std::vector<Index> eligible;  // at-level indices first
  std::size_t at_level;
};

std::vector<Level> levels(const std::vector<Ranked>& r, double t) {
  std::vector<Level> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && r[i].mag == r[i - 1].mag) continue;
    Level lv{r[i].mag, {}, {}, 0};
    for (const auto& e : r)
      if (e.mag == lv.a) lv.eligible.push_back(e.index), ++lv.at_level;
    for (const auto& e : r) {
      if (e.mag <= lv.a) continue;
      if (e.mag * t > lv.a) lv.forced.push_back(e.index);
      else lv.eligible.push_back(e.index);
    }
    out.push_back(std::move(lv));
  }
  return out;
}

double level_count(const Level& lv, std::size_t m) {
  if (lv.forced.size() >= m) return 0;
  std::size_t k = m - lv.forced.size();
  return choose(lv.eligible.size(), k) - choose(lv.eligible.size() - lv.at_level, k);
}

}  // namespace

SparseVector project(const SparseVector& x, const IndexSet& a) { return x.restrict_to(a); }

IndexSet natural_greedy_set(const SparseVector& x, std::size_t m) {
  auto r = ranked_support(x);
  IndexSet out;
  for (std::size_t i = 0; i < std::min(m, r.size()); ++i) out.push_back(r[i].index);
  std::sort(out.begin(), out.end());
  if (m > r.size()) {
    IndexSet supp = x.support();
    Index n = 1;
    std::size_t need = m - r.size();
    while (need > 0) {
      if (!contains(supp, n)) out.push_back(n), --need;
      ++n;
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

bool is_greedy_set(const SparseVector& x, const IndexSet& a, double t) {
  double lo = std::numeric_limits<double>::infinity();
  for (Index i : a) lo = std::min(lo, std::abs(x.at(i)));
  double hi = 0;
  for (const auto& e : x.entries())
    if (!contains(a, e.index)) hi = std::max(hi, std::abs(e.value));
  return lo >= t * hi;
}

double count_greedy_sets(const SparseVector& x, std::size_t m, double t) {
  check_t(t);
  if (m == 0) return 1;
  auto r = ranked_support(x);
  if (m > r.size()) return -1;
  double total = 0;
  for (const auto& lv : levels(r, t)) total += level_count(lv, m);
  return total;
}

std::vector<IndexSet> enumerate_greedy_sets(const SparseVector& x, std::size_t m, double t,
                                            const GreedyEnumOptions& opts) {
  check_t(t);
  if (m > opts.max_m) throw BudgetError("m exceeds the enumeration cap");
  if (m == 0) return {IndexSet{}};
  auto r = ranked_support(x);
  std::vector<IndexSet> out;
  if (m > r.size()) {
    // Every coefficient must be kept; the rest is padding at level 0.
    IndexSet supp = x.support();
    if (opts.padding_pool.empty()) return {natural_greedy_set(x, m)};
    IndexSet pool = set_difference(opts.padding_pool, supp);
    std::size_t k = m - supp.size();
    if (choose(pool.size(), k) > static_cast<double>(opts.max_results))
      throw BudgetError("greedy-set enumeration exceeds max_results");
    for_each_combination(pool.size(), k, [&](const std::vector<std::size_t>& c) {
      IndexSet s = supp;
      for (std::size_t i : c) s.push_back(pool[i]);
      out.push_back(make_index_set(std::move(s)));
    });
  } else {
    auto lvs = levels(r, t);
    double total = 0;
    for (const auto& lv : lvs) total += level_count(lv, m);
    if (total > static_cast<double>(opts.max_results)) throw BudgetError("greedy-set enumeration exceeds max_results");
    out.reserve(static_cast<std::size_t>(total));
    for (const auto& lv : lvs) {
      if (lv.forced.size() >= m) continue;
      std::size_t k = m - lv.forced.size();
      for_each_combination(lv.eligible.size(), k, [&](const std::vector<std::size_t>& c) {
        if (c[0] >= lv.at_level) return;
        IndexSet s = lv.forced;
        for (std::size_t i : c) s.push_back(lv.eligible[i]);
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IndexSet greedy_superset_s2(const SparseVector& x, const IndexSet& a, double s, const SetPredicate& accept) {
  check_t(s);
  if (a.empty()) throw ContractError("A must be nonempty");
  double amin = std::numeric_limits<double>::infinity();
  for (Index i : a) {
    double v = std::abs(x.at(i));
    if (v == 0) throw ContractError("A must lie inside supp(x)");
    amin = std::min(amin, v);
  }
  std::vector<IndexSet> cands{a};
  // Supersets A + {|x_j| >= tau}, smallest first.
  std::vector<double> taus;
  for (const auto& e : ranked_support(x))
    if (e.mag >= s * s * amin) taus.push_back(e.mag);
  taus.push_back(s * amin);
  std::sort(taus.begin(), taus.end(), std::greater<>());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  for (double tau : taus) {
    IndexSet b = a;
    for (const auto& e : x.entries())
      if (std::abs(e.value) >= tau) b.push_back(e.index);
    cands.push_back(make_index_set(std::move(b)));
  }
  for (const auto& b : cands) {
    double bmin = std::numeric_limits<double>::infinity();
    for (Index i : b) bmin = std::min(bmin, std::abs(x.at(i)));
    if (bmin < s * s * amin) continue;
    if (is_greedy_set(x, b, s) && accept(b)) return b;
  }
  throw BudgetError("no accepted greedy superset");
}

}  // namespace greedylab
