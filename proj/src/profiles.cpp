#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "greedylab/norm_eval.hpp"
#include "greedylab/params.hpp"
#include "rand.hpp"

namespace greedylab {

namespace {

IndexSet default_pool(const IndexSet& p, Index n) {
  if (!p.empty()) return make_index_set(p);
  IndexSet out;
  for (Index i = 1; i <= n; ++i) out.push_back(i);
  return out;
}

struct SignedSet {
  IndexSet a;
  std::vector<int> eps;
  double measure = 0;
  double norm = 0;
};

IndexSet from_mask(const IndexSet& pool, std::uint64_t mask) {
  IndexSet a;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (mask >> i & 1) a.push_back(pool[i]);
  return a;
}

std::vector<int> signs_from_mask(std::size_t k, std::uint64_t mask) {
  // The first sign stays +1: the norm is even.
  std::vector<int> e(k, 1);
  for (std::size_t i = 1; i < k; ++i) e[i] = mask >> (i - 1) & 1 ? -1 : 1;
  return e;
}

bool key_less(const SignedSet& x, const SignedSet& y) { return std::tie(x.a, x.eps) < std::tie(y.a, y.eps); }

}  // namespace

DemocracyProfile democracy_profile(const NormSpec& spec, const Weight& w, const std::vector<double>& measures,
                                   const ProfileOptions& opts) {
  const IndexSet pool = default_pool(opts.pool, 12);
  if (pool.size() > 40) throw ContractError("profile pool larger than 40 indices");
  DemocracyProfile prof;

  // Signed sets counted with the first sign fixed: sum_k C(n,k) 2^{k-1}.
  double total = (std::pow(3.0, static_cast<double>(pool.size())) - 1) / 2;
  if (!opts.signs) total = std::ldexp(1.0, static_cast<int>(pool.size())) - 1;
  prof.exhaustive = total <= static_cast<double>(opts.exhaustive_limit);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  if (prof.exhaustive) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pool.size()); ++mask) {
      int k = __builtin_popcountll(mask);
      std::uint64_t ns = opts.signs ? std::uint64_t{1} << (k - 1) : 1;
      for (std::uint64_t s = 0; s < ns; ++s) keys.emplace_back(mask, s);
    }
  } else {
    detail::SplitMix rng(opts.seed);
    for (std::size_t i = 0; i < opts.samples; ++i) {
      std::size_t k = 1 + rng.below(pool.size());
      IndexSet a = detail::sample_subset(rng, pool, k);
      std::uint64_t mask = 0;
      for (std::size_t j = 0, q = 0; j < pool.size() && q < a.size(); ++j)
        if (pool[j] == a[q]) mask |= std::uint64_t{1} << j, ++q;
      keys.emplace_back(mask, opts.signs ? rng.next() & ((std::uint64_t{1} << (k - 1)) - 1) : 0);
    }
  }

  std::vector<SignedSet> sets(keys.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < keys.size(); ++i) {
    IndexSet a = from_mask(pool, keys[i].first);
    std::vector<int> e = signs_from_mask(a.size(), keys[i].second);
    double nv = norm_eval(spec, SparseVector::indicator(a, e));
    double mu = static_cast<double>(weight_measure(w, a));
    sets[i] = {std::move(a), std::move(e), mu, nv};
  }

  for (double budget : measures) {
    ProfileRow row;
    row.budget = budget;
    const SignedSet* hi = nullptr;
    const SignedSet* lo = nullptr;
    for (const auto& s : sets) {
      if (s.measure <= budget &&
          (!hi || s.norm > hi->norm || (s.norm == hi->norm && key_less(s, *hi))))
        hi = &s;
      if (s.measure >= budget &&
          (!lo || s.norm < lo->norm || (s.norm == lo->norm && key_less(s, *lo))))
        lo = &s;
    }
    if (hi) row.max_norm = hi->norm, row.max_set = hi->a, row.max_eps = hi->eps;
    if (lo) row.min_norm = lo->norm, row.min_set = lo->a, row.min_eps = lo->eps;
    if (hi && lo && lo->norm > 0) row.ratio = hi->norm / lo->norm;
    prof.superdemocracy_lb = std::max(prof.superdemocracy_lb, row.ratio);
    prof.rows.push_back(std::move(row));
  }
  return prof;
}

double evaluate_property_A_witness(const NormSpec& spec, const Weight& w, const Witness& wit) {
  for (const auto& e : wit.x.entries())
    if (std::abs(e.value) > 1) throw ContractError("witness violates: |x|_inf <= 1");
  IndexSet s = wit.x.support();
  if (!disjoint(wit.a, wit.b) || !disjoint(wit.a, s) || !disjoint(wit.b, s))
    throw ContractError("witness violates: A, B, supp(x) pairwise disjoint");
  if (weight_measure(w, wit.a) > weight_measure(w, wit.b))
    throw ContractError("witness violates: w(A) <= w(B)");
  if (wit.eps.size() != wit.a.size() || wit.eps_b.size() != wit.b.size())
    throw ContractError("witness violates: signs on A and B");
  double den = norm_eval(spec, wit.x + SparseVector::indicator(wit.b, wit.eps_b));
  if (!(den > 0)) throw ContractError("witness violates: nonzero denominator");
  return norm_eval(spec, wit.x + SparseVector::indicator(wit.a, wit.eps)) / den;
}

ParameterEstimate check_property_A(const NormSpec& spec, const Weight& w, const PropertyAOptions& opts) {
  const IndexSet pool = default_pool(opts.pool, 10);
  ParameterEstimate est;
  est.kind = "property_A";
  est.pool = pool;
  est.budget.candidates = opts.samples;
  est.budget.seed = opts.seed;
  est.spec_hash = spec_hash(spec);
  if (pool.empty()) return est;

  std::vector<Witness> cands(opts.samples + 1);
  cands[0] = {SparseVector::unit(pool[0]), {}, {}, {}, {}, {}, 0};
  for (std::size_t i = 1; i < cands.size(); ++i) {
    detail::SplitMix rng(detail::mix(opts.seed, i));
    std::vector<Index> p(pool.begin(), pool.end());
    detail::shuffle(rng, p);
    std::size_t n = p.size();
    std::size_t kx = rng.below(std::min<std::size_t>(n, 5) + 1);
    std::size_t ka = rng.below(std::min<std::size_t>(n - kx, 4) + 1);
    std::size_t kb = std::min(n - kx - ka, 1 + rng.below(4));
    std::vector<Entry> xe;
    for (std::size_t j = 0; j < kx; ++j) {
      double v = rng.below(3) == 0 ? 1.0 : rng.unit();
      xe.push_back({p[j], rng.below(2) ? -v : v});
    }
    std::sort(xe.begin(), xe.end(), [](const Entry& u, const Entry& v) { return u.index < v.index; });
    Witness c;
    c.x = SparseVector(xe);
    c.a = make_index_set({p.begin() + static_cast<std::ptrdiff_t>(kx), p.begin() + static_cast<std::ptrdiff_t>(kx + ka)});
    c.b = make_index_set(
        {p.begin() + static_cast<std::ptrdiff_t>(kx + ka), p.begin() + static_cast<std::ptrdiff_t>(kx + ka + kb)});
    if (weight_measure(w, c.a) > weight_measure(w, c.b)) std::swap(c.a, c.b);
    for (std::size_t j = 0; j < c.a.size(); ++j) c.eps.push_back(rng.below(2) ? -1 : 1);
    for (std::size_t j = 0; j < c.b.size(); ++j) c.eps_b.push_back(rng.below(2) ? -1 : 1);
    cands[i] = std::move(c);
  }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cands.size(); ++i) {
    try {
      cands[i].value = evaluate_property_A_witness(spec, w, cands[i]);
    } catch (const ContractError&) {
      cands[i].value = -1;
    }
  }
  const Witness* best = nullptr;
  for (const auto& c : cands)
    if (c.value >= 0 && (!best || c.value > best->value)) best = &c;
  est.evaluated = cands.size();
  if (best) {
    est.lower_bound = best->value;
    est.witnesses.push_back(*best);
  }
  return est;
}

BidemocracyResult bidemocracy_lb(const NormSpec& spec, std::size_t m, Index n_dim, std::size_t dual_samples,
                                 std::uint64_t seed) {
  if (m == 0 || n_dim == 0 || n_dim > 64) throw ContractError("bidemocracy needs m >= 1 and 1 <= N <= 64");
  std::size_t n = static_cast<std::size_t>(n_dim);
  std::size_t k = std::min(m, n);
  IndexSet all;
  for (Index i = 1; i <= n_dim; ++i) all.push_back(i);

  // Sets of size k: the initial segment, the final segment and seeded samples.
  std::vector<IndexSet> sets{IndexSet(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k)),
                             IndexSet(all.end() - static_cast<std::ptrdiff_t>(k), all.end())};
  detail::SplitMix rng(seed);
  for (std::size_t i = 0; i < dual_samples; ++i) sets.push_back(detail::sample_subset(rng, all, k));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  std::vector<double> primal(sets.size());
  std::vector<DualNormResult> dual(sets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < sets.size(); ++i) {
    SparseVector u = SparseVector::indicator(sets[i]);
    primal[i] = norm_eval(spec, u);
    DualNormOptions o;
    o.seed = seed;
    dual[i] = dual_norm_eval(spec, u, n_dim, o);
  }
  BidemocracyResult res;
  std::size_t ia = static_cast<std::size_t>(std::max_element(primal.begin(), primal.end()) - primal.begin());
  std::size_t ib = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (dual[i].value > dual[ib].value) ib = i;
    res.converged = res.converged && dual[i].converged;
  }
  res.primal_norm = primal[ia];
  res.dual_norm = dual[ib].value;
  res.a = sets[ia];
  res.b = sets[ib];
  res.value = res.primal_norm * res.dual_norm / static_cast<double>(m);
  return res;
}

}  // namespace greedylab
