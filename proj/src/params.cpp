#include "greedylab/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "greedylab/chebyshev.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"
#include "greedylab/sigma.hpp"
#include "rand.hpp"

namespace greedylab {

namespace {

enum class Kind { kGBar, kGHat, kLchU, kLchL, kL, kLd, kLa, kLad, kSqueeze, kKm, kTruncQg, kPropC, kSucc };

const std::vector<std::pair<std::string, Kind>>& kind_table() {
  static const std::vector<std::pair<std::string, Kind>> t = {
      {"g_bar", Kind::kGBar},     {"g_hat", Kind::kGHat},       {"L_ch_u", Kind::kLchU},
      {"L_ch_l", Kind::kLchL},    {"L", Kind::kL},              {"L_d", Kind::kLd},
      {"L_a", Kind::kLa},         {"L_ad", Kind::kLad},         {"squeeze", Kind::kSqueeze},
      {"k_m", Kind::kKm},         {"trunc_qg", Kind::kTruncQg}, {"prop_C", Kind::kPropC},
      {"succ", Kind::kSucc}};
  return t;
}

Kind parse_kind(const std::string& s) {
  for (const auto& [name, k] : kind_table())
    if (name == s) return k;
  throw ContractError("unknown parameter kind '" + s + "'");
}

bool uses_t(Kind k) {
  return k == Kind::kGBar || k == Kind::kGHat || k == Kind::kLchU || k == Kind::kLchL || k == Kind::kL ||
         k == Kind::kLd || k == Kind::kLa || k == Kind::kLad;
}

const ChebOptions kCheb{};
constexpr std::size_t kLebesgueSupport = 12;

double nrm(const NormSpec& spec, const SparseVector& v) { return norm_eval(spec, v); }

double min_abs_on(const SparseVector& x, const IndexSet& a) {
  double lo = std::numeric_limits<double>::infinity();
  for (Index i : a) lo = std::min(lo, std::abs(x.at(i)));
  return a.empty() ? 0 : lo;
}

bool valid_signs(const std::vector<int>& e, std::size_t n) {
  if (e.size() != n) return false;
  return std::all_of(e.begin(), e.end(), [](int s) { return s == 1 || s == -1; });
}

void require(bool ok, const char* what) {
  if (!ok) throw ContractError(std::string("witness violates: ") + what);
}

// Greedy sets examined for one candidate: all of G(x,m,t) when it has at
// most max_sets members, otherwise only the natural one (or none when the
// kind needs every member).
std::vector<IndexSet> sets_for(const SparseVector& x, std::size_t m, double t, std::size_t max_sets, bool need_all,
                               bool& complete) {
  complete = true;
  if (m <= x.size()) {
    double n = count_greedy_sets(x, m, t);
    if (n > static_cast<double>(max_sets)) {
      complete = false;
      if (need_all) return {};
      return {natural_greedy_set(x, m)};
    }
  }
  GreedyEnumOptions o;
  o.max_results = std::max<std::size_t>(max_sets, 1);
  return enumerate_greedy_sets(x, m, t, o);
}

std::string witness_key(const Witness& w) {
  Json j = {{"x", vector_to_json(w.x)},     {"a", index_set_to_json(w.a)}, {"b", index_set_to_json(w.b)},
            {"y", vector_to_json(w.y)},     {"eps", w.eps},                {"eps_b", w.eps_b}};
  return j.dump();
}

// Larger value wins; ties go to the smaller serialized witness.
bool better(const Witness& a, const Witness& b) {
  if (a.value != b.value) return a.value > b.value;
  return witness_key(a) < witness_key(b);
}

struct Best {
  bool has = false;
  Witness w;
  void offer(Witness c) {
    if (!std::isfinite(c.value)) return;
    if (!has || better(c, w)) w = std::move(c), has = true;
  }
};

std::vector<std::vector<int>> all_signs(std::size_t n) {
  std::vector<std::vector<int>> out;
  if (n > 12) return out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = mask >> i & 1 ? -1 : 1;
    out.push_back(std::move(e));
  }
  return out;
}

// b padded to m elements with the smallest indices outside supp(x) and a.
IndexSet pad_outside(const SparseVector& x, const IndexSet& a, IndexSet b, std::size_t m) {
  for (Index n = 1; b.size() < m; ++n)
    if (!contains(b, n) && !contains(a, n) && x.at(n) == 0) b.push_back(n);
  return make_index_set(std::move(b));
}

struct SqueezeTop {
  IndexSet b;
  std::vector<int> eps;
  double value = 0;
};

// max |1_{eps,B}| over |B| = m inside the pool: exhaustive when small,
// otherwise seeded samples plus the structured choices.
SqueezeTop squeeze_top(const NormSpec& spec, const IndexSet& pool, std::size_t m, std::uint64_t seed) {
  SqueezeTop top;
  if (m == 0 || pool.size() < m) return top;
  auto offer = [&](const IndexSet& b, const std::vector<int>& e) {
    double v = nrm(spec, SparseVector::indicator(b, e));
    if (v > top.value || (v == top.value && std::tie(b, e) < std::tie(top.b, top.eps))) top = {b, e, v};
  };
  double combos = 1;
  for (std::size_t i = 0; i < m; ++i) combos = combos * static_cast<double>(pool.size() - i) / static_cast<double>(i + 1);
  combos *= std::ldexp(1.0, static_cast<int>(m));
  if (combos <= 200000) {
    std::vector<std::size_t> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = i;
    auto signs = all_signs(m);
    while (true) {
      IndexSet b;
      for (std::size_t i : c) b.push_back(pool[i]);
      for (const auto& e : signs) offer(b, e);
      std::size_t i = m;
      while (i > 0 && c[i - 1] == pool.size() - m + i - 1) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < m; ++j) c[j] = c[j - 1] + 1;
    }
    return top;
  }
  detail::SplitMix rng(seed ^ 0x5eed5eedULL);
  for (std::size_t k = 0; k < 20000; ++k) {
    IndexSet b = detail::sample_subset(rng, pool, m);
    std::vector<int> e(m);
    for (auto& s : e) s = rng.below(2) ? -1 : 1;
    offer(b, e);
  }
  return top;
}

struct Ctx {
  const NormSpec& spec;
  Kind kind;
  std::size_t m;
  double t;
  const EstimatorBudget& budget;
  SqueezeTop squeeze;
};

SigmaOptions serial_sigma() {
  SigmaOptions o;
  o.exec = Exec::kSerial;
  return o;
}

// Best witness contributed by one candidate vector.
Best evaluate_candidate(const Ctx& c, const SparseVector& x) {
  Best best;
  const NormSpec& spec = c.spec;
  const double nx = nrm(spec, x);
  if (nx == 0) return best;
  bool complete = true;
  switch (c.kind) {
    case Kind::kGBar:
    case Kind::kGHat: {
      for (const auto& a : sets_for(x, c.m, c.t, c.budget.max_sets, false, complete)) {
        SparseVector p = project(x, a);
        double v = c.kind == Kind::kGBar ? nrm(spec, p) : nrm(spec, x - p);
        best.offer({x, a, {}, {}, {}, {}, v / nx});
      }
      break;
    }
    case Kind::kKm: {
      IndexSet supp = x.support();
      if (supp.size() > 14) supp = natural_greedy_set(x, 14);
      for (std::size_t mask = 1; mask < (std::size_t{1} << supp.size()); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > c.m) continue;
        IndexSet a;
        for (std::size_t i = 0; i < supp.size(); ++i)
          if (mask >> i & 1) a.push_back(supp[i]);
        best.offer({x, a, {}, {}, {}, {}, nrm(spec, project(x, a)) / nx});
      }
      break;
    }
    case Kind::kTruncQg:
    case Kind::kPropC: {
      for (std::size_t k = 1; k <= std::min(c.m, x.size()); ++k) {
        for (const auto& a : sets_for(x, k, 1.0, c.budget.max_sets, false, complete)) {
          const double lo = min_abs_on(x, a);
          const std::vector<int> ex = sign_pattern(x, a);
          if (c.kind == Kind::kPropC) {
            for (const auto& e : all_signs(a.size()))
              best.offer({x, a, {}, {}, e, {}, lo * nrm(spec, SparseVector::indicator(a, e)) / nx});
            continue;
          }
          best.offer({x, a, {}, {}, ex, {}, lo * nrm(spec, SparseVector::indicator(a, ex)) / nx});
          // u = 1_{eps(x),A} with every subset of A (all greedy for u):
          // together with (x, A) these are the pairs the Property (C)
          // bound from truncation quasi-greediness uses.
          if (a.size() > 12) continue;
          SparseVector u = SparseVector::indicator(a, ex);
          const double nu = nrm(spec, u);
          for (std::size_t mask = 1; mask < (std::size_t{1} << a.size()); ++mask) {
            IndexSet b;
            std::vector<int> eb;
            for (std::size_t i = 0; i < a.size(); ++i)
              if (mask >> i & 1) b.push_back(a[i]), eb.push_back(ex[i]);
            best.offer({u, b, {}, {}, eb, {}, nrm(spec, SparseVector::indicator(b, eb)) / nu});
          }
        }
      }
      break;
    }
    case Kind::kSucc: {
      IndexSet a = x.size() <= c.m ? x.support() : natural_greedy_set(x, c.m);
      if (a.size() > 14) break;
      std::vector<int> e = sign_pattern(x, a);
      SparseVector u = SparseVector::indicator(a, e);
      double nu = nrm(spec, u);
      for (std::size_t mask = 1; mask < (std::size_t{1} << a.size()); ++mask) {
        IndexSet b;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (mask >> i & 1) b.push_back(a[i]);
        best.offer({u, a, b, {}, {}, {}, nrm(spec, project(u, b)) / nu});
      }
      break;
    }
    case Kind::kSqueeze: {
      if (x.size() < c.m || c.squeeze.b.empty()) break;
      IndexSet a = natural_greedy_set(x, c.m);
      best.offer({x, a, c.squeeze.b, {}, c.squeeze.eps, {}, min_abs_on(x, a) * c.squeeze.value / nx});
      break;
    }
    case Kind::kL:
    case Kind::kLd:
    case Kind::kLa:
    case Kind::kLad: {
      // The four kinds share the same (x, A) family, so the orderings
      // between them hold witness by witness.
      if (x.size() > kLebesgueSupport) break;
      const IndexSet supp = x.support();
      SupportSearch tilde, sig;
      if (c.kind != Kind::kLad && c.kind != Kind::kLd) tilde = sigma_tilde_search(spec, x, c.m, Exec::kSerial);
      if (c.kind == Kind::kL) sig = sigma_m_search(spec, x, c.m, supp, serial_sigma());
      for (const auto& a : sets_for(x, c.m, c.t, c.budget.max_sets, false, complete)) {
        SparseVector p = project(x, a);
        const double num = nrm(spec, x - p);
        if (c.kind == Kind::kLa || c.kind == Kind::kLad) {
          SupportSearch den =
              c.kind == Kind::kLa ? tilde : projection_search_in(spec, x, set_difference(supp, a), c.m, Exec::kSerial);
          IndexSet b = pad_outside(x, a, den.support, c.m);
          double d = nrm(spec, x - project(x, b));
          if (d > 0) best.offer({x, a, b, {}, {}, {}, num / d});
          continue;
        }
        // Admissible y: the search result, best projections, P_A(x) for L
        // and 0 for L_d.
        std::vector<SparseVector> ys;
        if (c.kind == Kind::kL) {
          ys = {sig.y, project(x, tilde.support), p};
        } else {
          IndexSet rest = set_difference(supp, a);
          ys = {sigma_m_search_in(spec, x, c.m, rest, serial_sigma()).y,
                project(x, projection_search_in(spec, x, rest, c.m, Exec::kSerial).support), SparseVector()};
        }
        SparseVector y;
        double den = std::numeric_limits<double>::infinity();
        for (const auto& cand : ys) {
          double d = nrm(spec, x - cand);
          if (d < den) den = d, y = cand;
        }
        if (den > 0) best.offer({x, a, {}, y, {}, {}, num / den});
      }
      break;
    }
    case Kind::kLchU:
    case Kind::kLchL: {
      if (x.size() > 12 || x.size() <= c.m) break;
      bool need_all = c.kind == Kind::kLchL;
      auto sets = sets_for(x, c.m, c.t, std::min<std::size_t>(c.budget.max_sets, 32), need_all, complete);
      if (sets.empty()) break;
      SupportSearch sig = sigma_m_search(spec, x, c.m, x.support(), serial_sigma());
      double den = nrm(spec, x - sig.y);
      if (!(den > 0)) break;
      Best inner;
      for (const auto& a : sets) {
        double num = std::max(0.0, chebyshev_best(spec, x, a, kCheb).lower());
        Witness w{x, a, {}, sig.y, {}, {}, std::max(1.0, num / den)};
        if (need_all) {
          // Keep the smallest ratio; ties to the smaller set.
          if (!inner.has || w.value < inner.w.value) inner.w = w, inner.has = true;
        } else {
          inner.offer(w);
        }
      }
      if (inner.has) best.offer(inner.w);
      break;
    }
  }
  return best;
}

// Structural witnesses with ratio exactly 1, when one exists.
Best trivial_witness(const Ctx& c, const IndexSet& pool) {
  Best b;
  if (pool.empty()) return b;
  auto first = [&](std::size_t k) {
    IndexSet s(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(std::min(k, pool.size())));
    return s;
  };
  SparseVector e1 = SparseVector::unit(pool[0]);
  switch (c.kind) {
    case Kind::kGBar:
      b.offer({e1, natural_greedy_set(e1, c.m), {}, {}, {}, {}, 1.0});
      break;
    case Kind::kKm:
      if (c.m >= 1) b.offer({e1, {pool[0]}, {}, {}, {}, {}, 1.0});
      break;
    case Kind::kTruncQg:
    case Kind::kPropC:
      if (c.m >= 1) b.offer({e1, {pool[0]}, {}, {}, {1}, {}, 1.0});
      break;
    case Kind::kSucc:
      if (c.m >= 1) b.offer({e1, {pool[0]}, {pool[0]}, {}, {}, {}, 1.0});
      break;
    case Kind::kSqueeze:
      if (c.m >= 1 && pool.size() >= c.m) {
        IndexSet a = first(c.m);
        b.offer({SparseVector::indicator(a), a, a, {}, std::vector<int>(c.m, 1), {}, 1.0});
      }
      break;
    case Kind::kLa:
    case Kind::kL:
    case Kind::kLchU:
    case Kind::kLchL:
      if (pool.size() > c.m) {
        SparseVector x = SparseVector::indicator(first(c.m + 1));
        IndexSet a = natural_greedy_set(x, c.m);
        if (c.kind == Kind::kLa) b.offer({x, a, a, {}, {}, {}, 1.0});
        else b.offer({x, a, {}, project(x, a), {}, {}, 1.0});
      }
      break;
    default:
      break;
  }
  return b;
}

}  // namespace

const std::vector<std::string>& parameter_kinds() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> v;
    for (const auto& [name, kind] : kind_table()) v.push_back(name);
    return v;
  }();
  return k;
}

std::vector<SparseVector> candidate_family(const EstimatorBudget& budget, const IndexSet& pool, std::size_t m,
                                           double t) {
  std::vector<SparseVector> out;
  if (pool.empty()) return out;
  const std::size_t g = std::min<std::size_t>(pool.size(), 5);
  static const double grid[5] = {0, 1, -1, 0.5, -0.5};
  for (std::size_t i = 0; i < budget.candidates; ++i) {
    detail::SplitMix rng(detail::mix(budget.seed, i));
    std::vector<Entry> e;
    switch (i % 3) {
      case 0: {  // random signs, decaying magnitudes
        std::size_t k = 1 + rng.below(std::min<std::size_t>(pool.size(), 10));
        IndexSet s = detail::sample_subset(rng, pool, k);
        static const double alphas[4] = {0, 0.5, 1, 2};
        double alpha = rng.below(5) == 4 ? 2 * rng.unit() : alphas[rng.below(4)];
        std::vector<double> mag(k);
        for (std::size_t j = 0; j < k; ++j) mag[j] = std::pow(static_cast<double>(j + 1), -alpha);
        if (rng.below(3) != 0) detail::shuffle(rng, mag);
        bool alternate = rng.below(4) == 0;
        for (std::size_t j = 0; j < k; ++j) {
          double sg = alternate ? (j % 2 ? -1 : 1) : (rng.below(2) ? -1 : 1);
          e.push_back({s[j], sg * mag[j]});
        }
        break;
      }
      case 1: {  // x - P_A(x) + a (1 + delta) t^{-1} 1_{eps,E}
        std::size_t k = std::min(pool.size(), m + 1 + rng.below(4));
        IndexSet s = detail::sample_subset(rng, pool, k);
        std::vector<Entry> base;
        for (std::size_t j = 0; j < k; ++j)
          base.push_back({s[j], (rng.below(2) ? -1 : 1) * (0.1 + rng.unit())});
        SparseVector x(base);
        IndexSet a = natural_greedy_set(x, std::min(m, x.size()));
        double lo = min_abs_on(x, a);
        IndexSet rest = set_difference(pool, s);
        IndexSet ee = detail::sample_subset(rng, rest, std::min(rest.size(), std::max<std::size_t>(m, 1)));
        double coef = lo * (1 + 0.5 * rng.unit()) / t;
        SparseVector z = x - project(x, a);
        std::vector<Entry> add;
        for (Index i2 : ee) add.push_back({i2, (rng.below(2) ? -1 : 1) * coef});
        z = z + SparseVector(add);
        e.assign(z.entries().begin(), z.entries().end());
        break;
      }
      default: {  // small grid vectors
        std::size_t j = i / 3 + 1;
        std::size_t limit = 1;
        for (std::size_t q = 0; q < g; ++q) limit *= 5;
        if (j < limit) {
          for (std::size_t q = 0; q < g; ++q, j /= 5)
            if (grid[j % 5] != 0) e.push_back({pool[q], grid[j % 5]});
        } else {
          IndexSet s = detail::sample_subset(rng, pool, std::min<std::size_t>(pool.size(), 1 + rng.below(4)));
          for (Index q : s) e.push_back({q, grid[1 + rng.below(4)]});
        }
        break;
      }
    }
    out.emplace_back(std::move(e));
  }
  return out;
}

bool parameter_uses_t(const std::string& kind) { return uses_t(parse_kind(kind)); }

ParameterEstimate estimate_parameter(const NormSpec& spec, const std::string& kind_name, std::size_t m, double t,
                                     const EstimatorBudget& budget, const IndexSet& pool_in,
                                     const std::vector<SparseVector>& extra) {
  Kind kind = parse_kind(kind_name);
  if (!(t > 0 && t <= 1)) throw ContractError("t must lie in (0, 1]");
  if (m == 0) throw ContractError("m must be positive");
  IndexSet pool = make_index_set(pool_in);
  ParameterEstimate est;
  est.kind = kind_name;
  est.m = m;
  est.t_or_s = uses_t(kind) ? t : 1.0;
  est.budget = budget;
  est.pool = pool;
  est.spec_hash = spec_hash(spec);

  Ctx ctx{spec, kind, m, est.t_or_s, budget, {}};
  if (kind == Kind::kSqueeze) ctx.squeeze = squeeze_top(spec, pool, m, budget.seed);

  std::vector<SparseVector> cands = extra;
  for (auto& v : candidate_family(budget, pool, m, est.t_or_s)) cands.push_back(std::move(v));
  if (budget.candidates == 0) cands.clear();

  std::vector<Best> results(cands.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cands.size(); ++i) results[i] = evaluate_candidate(ctx, cands[i]);

  Best best = trivial_witness(ctx, pool);
  for (auto& r : results)
    if (r.has) best.offer(std::move(r.w));
  est.evaluated = cands.size();
  if (best.has) {
    est.lower_bound = best.w.value;
    est.witnesses.push_back(best.w);
  } else {
    est.note = "no witness found; 0 is the trivial lower bound";
  }
  if (kind == Kind::kLchU || kind == Kind::kLchL || kind == Kind::kL || kind == Kind::kLd)
    est.note += std::string(est.note.empty() ? "" : "; ") +
                "denominators are achieved errors over supp(x) pools, hence upper bounds of the infima";
  return est;
}

double evaluate_witness(const NormSpec& spec, const std::string& kind_name, std::size_t m, double t, const Witness& w) {
  Kind kind = parse_kind(kind_name);
  const SparseVector& x = w.x;
  double nx = nrm(spec, x);
  require(nx > 0, "x must be nonzero");
  auto greedy_m = [&](double tt) {
    require(w.a.size() == m, "|A| = m");
    require(is_greedy_set(x, w.a, tt), "A greedy");
  };
  switch (kind) {
    case Kind::kGBar:
    case Kind::kGHat: {
      greedy_m(t);
      SparseVector p = project(x, w.a);
      return (kind == Kind::kGBar ? nrm(spec, p) : nrm(spec, x - p)) / nx;
    }
    case Kind::kKm:
      require(w.a.size() <= m, "|A| <= m");
      return nrm(spec, project(x, w.a)) / nx;
    case Kind::kTruncQg:
    case Kind::kPropC: {
      require(!w.a.empty() && w.a.size() <= m, "1 <= |A| <= m");
      require(is_greedy_set(x, w.a, 1.0), "A greedy");
      require(valid_signs(w.eps, w.a.size()), "signs on A");
      if (kind == Kind::kTruncQg) require(w.eps == sign_pattern(x, w.a), "eps = eps(x)");
      return min_abs_on(x, w.a) * nrm(spec, SparseVector::indicator(w.a, w.eps)) / nx;
    }
    case Kind::kSucc: {
      require(!w.a.empty() && w.a.size() <= m && x.support() == w.a, "x = 1_{eps,A}, |A| <= m");
      for (const auto& e : x.entries()) require(std::abs(e.value) == 1, "x = 1_{eps,A}");
      require(!w.b.empty() && is_subset(w.b, w.a), "B in A");
      return nrm(spec, project(x, w.b)) / nx;
    }
    case Kind::kSqueeze: {
      greedy_m(1.0);
      require(w.b.size() == m && valid_signs(w.eps, m), "|B| = m with signs");
      return min_abs_on(x, w.a) * nrm(spec, SparseVector::indicator(w.b, w.eps)) / nx;
    }
    case Kind::kLa:
    case Kind::kLad: {
      greedy_m(t);
      require(w.b.size() == m, "|B| = m");
      if (kind == Kind::kLad) require(disjoint(w.b, w.a), "B disjoint from A");
      double den = nrm(spec, x - project(x, w.b));
      require(den > 0, "nonzero denominator");
      return nrm(spec, x - project(x, w.a)) / den;
    }
    case Kind::kL:
    case Kind::kLd: {
      greedy_m(t);
      require(w.y.size() <= m, "|supp y| <= m");
      if (kind == Kind::kLd) require(disjoint(w.y.support(), w.a), "supp y disjoint from A");
      double den = nrm(spec, x - w.y);
      require(den > 0, "nonzero denominator");
      return nrm(spec, x - project(x, w.a)) / den;
    }
    case Kind::kLchU:
    case Kind::kLchL: {
      greedy_m(t);
      require(w.y.size() <= m, "|supp y| <= m");
      double den = nrm(spec, x - w.y);
      require(den > 0, "nonzero denominator");
      double num;
      if (kind == Kind::kLchU) {
        num = std::max(0.0, chebyshev_best(spec, x, w.a, kCheb).lower());
      } else {
        num = std::numeric_limits<double>::infinity();
        for (const auto& a : enumerate_greedy_sets(x, m, t))
          num = std::min(num, std::max(0.0, chebyshev_best(spec, x, a, kCheb).lower()));
      }
      return std::max(1.0, num / den);
    }
  }
  return 0;
}

Json estimate_to_json(const ParameterEstimate& e) {
  Json ws = Json::array();
  for (const auto& w : e.witnesses)
    ws.push_back({{"x", vector_to_json(w.x)},
                  {"a", index_set_to_json(w.a)},
                  {"b", index_set_to_json(w.b)},
                  {"y", vector_to_json(w.y)},
                  {"eps", w.eps},
                  {"eps_b", w.eps_b},
                  {"value", format_real(w.value)}});
  return {{"kind", e.kind},
          {"m", e.m},
          {"t_or_s", format_real(e.t_or_s)},
          {"lower_bound", format_real(e.lower_bound)},
          {"witnesses", ws},
          {"budget", {{"candidates", e.budget.candidates}, {"seed", e.budget.seed}, {"max_sets", e.budget.max_sets}}},
          {"pool", index_set_to_json(e.pool)},
          {"spec_hash", e.spec_hash},
          {"evaluated", e.evaluated},
          {"note", e.note}};
}

ParameterEstimate estimate_from_json(const Json& j) {
  ParameterEstimate e;
  try {
    e.kind = j.at("kind").get<std::string>();
    e.m = j.at("m").get<std::size_t>();
    e.t_or_s = real_from_json(j.at("t_or_s"), "/t_or_s");
    e.lower_bound = real_from_json(j.at("lower_bound"), "/lower_bound");
    e.budget.candidates = j.at("budget").at("candidates").get<std::size_t>();
    e.budget.seed = j.at("budget").at("seed").get<std::uint64_t>();
    e.budget.max_sets = j.at("budget").at("max_sets").get<std::size_t>();
    e.pool = index_set_from_json(j.at("pool"), "/pool");
    e.spec_hash = j.at("spec_hash").get<std::string>();
    e.evaluated = j.value("evaluated", std::size_t{0});
    e.note = j.value("note", std::string());
    std::size_t k = 0;
    for (const auto& w : j.at("witnesses")) {
      std::string p = "/witnesses/" + std::to_string(k++);
      Witness x;
      x.x = vector_from_json(w.at("x"), p + "/x");
      x.a = index_set_from_json(w.at("a"), p + "/a");
      x.b = index_set_from_json(w.at("b"), p + "/b");
      x.y = vector_from_json(w.at("y"), p + "/y");
      x.eps = w.at("eps").get<std::vector<int>>();
      x.eps_b = w.at("eps_b").get<std::vector<int>>();
      x.value = real_from_json(w.at("value"), p + "/value");
      e.witnesses.push_back(std::move(x));
    }
  } catch (const Json::exception& ex) {
    throw ContractError(std::string("estimate: ") + ex.what());
  }
  return e;
}

}  // namespace greedylab
