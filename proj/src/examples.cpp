#include "greedylab/examples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"
#include "greedylab/params.hpp"
#include "rand.hpp"

namespace greedylab {

namespace {

long double ld(Index n) { return index_to_real(n); }

// n^{-1/4} log^{-1}(n+1)
long double ex_coeff(Index n) { return std::pow(ld(n), -0.25L) / std::log1p(ld(n)); }

NormSpec w1_l2() { return NormSpec::weighted_lp(2, Weight::formula_w1()); }
CoeffRule pow34() { return CoeffRule::power(0.75); }

std::string fmt(double v) { return format_real(v); }

Enclosure sqrt_enc(Enclosure e) {
  return {std::nextafter(std::sqrt(e.lo), 0.0), std::nextafter(std::sqrt(e.hi), INFINITY)};
}

Enclosure max_enc(std::initializer_list<Enclosure> es) {
  Enclosure r{0, 0};
  for (const auto& e : es) r = {std::max(r.lo, e.lo), std::max(r.hi, e.hi)};
  return r;
}

Certificate cert(std::string name, double lhs, double rhs, bool pass, std::string note = {}) {
  return {std::move(name), lhs, rhs, pass, std::move(note)};
}

IndexSet mask_set(std::uint64_t mask, Index offset = 1) {
  IndexSet a;
  for (Index i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) a.push_back(i + offset);
  return a;
}

// Entries of 1_{eps,A} for A given by mask over {1..64}, signs by bits.
std::size_t fill_indicator(std::uint64_t mask, std::uint64_t signs, Entry* out) {
  std::size_t k = 0;
  for (Index i = 1; mask; ++i, mask >>= 1)
    if (mask & 1) {
      out[k] = {i, (signs >> k & 1) ? -1.0 : 1.0};
      ++k;
    }
  return k;
}

}  // namespace

Json preset_to_json(const SpacePreset& p) {
  return {{"name", p.name}, {"norm", norm_to_json(p.spec)}, {"weight", weight_to_json(p.weight)}, {"metadata", p.metadata}};
}

SpacePreset build_xp(double p, const Weight& w) {
  if (!(p > 1) || !std::isfinite(p)) throw ContractError("X_p needs 1 < p < inf");
  return {"xp", NormSpec::max_of({NormSpec::sup(), NormSpec::weighted_lp(p, w)}), w,
          {{"p", fmt(p)}, {"weight", weight_to_json(w)}}};
}

SpacePreset build_example_72() {
  return {"ex72", NormSpec::max_of({w1_l2(), NormSpec::prefix(pow34()), NormSpec::sup()}), Weight::formula_w1(),
          {{"prefix_exponent", "0.75"}, {"weight", "formula_w1"}}};
}

Ex72Pair example72_witnesses(std::size_t m) {
  if (m == 0) throw ContractError("example72_witnesses needs m >= 1");
  std::vector<Entry> y, z;
  y.reserve(m);
  z.reserve(m);
  for (std::size_t n = 1; n <= m; ++n) {
    double c = static_cast<double>(ex_coeff(n));
    y.push_back({n, c});
    z.push_back({n, n % 2 ? -c : c});
  }
  return {SparseVector(std::move(y)), SparseVector(std::move(z))};
}

double example72_ratio(std::size_t m) {
  SpacePreset ex = build_example_72();
  Ex72Pair w = example72_witnesses(m);
  return norm_eval(ex.spec, w.y) / norm_eval(ex.spec, w.z);
}

IntervalFamily build_intervals_74(std::size_t count, std::vector<double> targets) {
  IntervalFamily fam;
  while (targets.size() < count) targets.push_back(targets.empty() ? 1.2 : targets.back() + 0.4);
  const SeriesRule rule = SeriesRule::kInvNLog;
  Index a = 2;
  for (std::size_t k = 0; k < count; ++k) {
    double target = targets[k];
    if (!fam.sums.empty()) target = std::max(target, fam.sums.back().hi);
    if (!(target >= 1)) throw ContractError("interval targets must be at least 1");
    auto ok = [&](Index b) { return interval_sum_certified(rule, a, b).lo > target; };
    // Direct scan while short, then doubling plus bisection on the sandwich.
    Index b = a;
    long double s = 0;
    while (b - a < kDirectSumLimit) {
      s += series_term(rule, b);
      if (s > target) break;
      ++b;
    }
    if (b - a >= kDirectSumLimit) {
      Index lo = b, step = b;
      Index hi;
      while (true) {
        if (step > kMaxIndex - lo) {
          if (!ok(kMaxIndex))
            throw CapacityError("interval " + std::to_string(k + 1) + " with target " + fmt(target) +
                                " needs endpoints past the 127-bit index range");
          hi = kMaxIndex;
          break;
        }
        hi = lo + step;
        if (ok(hi)) break;
        lo = hi;
        step *= 2;
      }
      while (hi - lo > 1) {
        Index mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
      }
      b = hi;
    }
    while (!ok(b)) {
      if (b == kMaxIndex) throw CapacityError("interval endpoint past the 127-bit index range");
      ++b;
    }
    fam.intervals.push_back({a, b});
    fam.sums.push_back(interval_sum_certified(rule, a, b));
    fam.targets.push_back(target);
    if (b == kMaxIndex && k + 1 < count) throw CapacityError("no room for another interval");
    a = b + 1;
  }
  return fam;
}

SpacePreset build_example_74(const IntervalFamily& fam) {
  Json iv = Json::array();
  for (const auto& i : fam.intervals) iv.push_back({index_to_string(i.lo), index_to_string(i.hi)});
  return {"ex74", NormSpec::max_of({w1_l2(), NormSpec::interval(fam.intervals, pow34()), NormSpec::sup()}),
          Weight::formula_w1(), {{"intervals", iv}, {"permutation", "identity"}}};
}

bool Ex74Witness::all_pass() const {
  return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.pass; });
}

Enclosure Ex74Witness::qg_ratio() const { return {pe_norm.lo / z_norm.hi, pe_norm.hi / z_norm.lo}; }

Ex74Witness example74_zm(const IntervalFamily& fam, std::size_t m) {
  if (m == 0 || m > fam.intervals.size()) throw ContractError("example74_zm: m outside the family");
  const SeriesRule rule = SeriesRule::kInvNLog;
  Ex74Witness w;
  w.m = m;
  w.range = fam.intervals[m - 1];
  const Index a = w.range.lo, b = w.range.hi;
  if (b == a) throw ContractError("example74_zm: interval needs at least two indices");
  const Index d = b - a + 1;
  w.explicit_form = d <= kExplicitTermLimit;
  w.total = interval_sum_certified(rule, a, b);
  const double top = static_cast<double>(ex_coeff(a));  // coefficients decrease in n

  if (w.explicit_form) {
    std::size_t len = static_cast<std::size_t>(d);
    std::vector<long double> pre(len + 1, 0);
    for (std::size_t k = 0; k < len; ++k) pre[k + 1] = pre[k] + series_term(rule, a + k);
    std::size_t j = 1;
    while (j < len - 1 && pre[len] - pre[j] > pre[j]) ++j;
    w.split = j;
    std::vector<Entry> e(len);
    for (std::size_t k = 0; k < len; ++k) {
      double c = static_cast<double>(ex_coeff(a + k));
      e[k] = {a + k, k < j ? c : -c};
    }
    w.z = SparseVector(std::move(e));
  } else {
    // First split certified to balance; monotone up to enclosure width.
    auto balanced = [&](Index k) {
      return interval_sum_certified(rule, a + k, b).hi <= interval_sum_certified(rule, a, a + k - 1).lo;
    };
    Index lo = 0, hi = d - 1;
    while (hi - lo > 1) {
      Index mid = lo + (hi - lo) / 2;
      (balanced(mid) ? hi : lo) = mid;
    }
    while (hi < d - 1 && !balanced(hi)) ++hi;
    w.split = hi;
  }
  w.head = interval_sum_certified(rule, a, a + w.split - 1);
  w.tail = interval_sum_certified(rule, a + w.split, b);

  const Enclosure sup{top, top};
  const Enclosure diff{w.head.lo - w.tail.hi, w.head.hi - w.tail.lo};
  if (w.explicit_form) {
    SpacePreset sp = build_example_74(fam);
    IndexSet e;
    for (Index k = 0; k < w.split; ++k) e.push_back(a + k);
    double zn = norm_eval(sp.spec, w.z), pn = norm_eval(sp.spec, project(w.z, e));
    w.z_norm = {zn, zn};
    w.pe_norm = {pn, pn};
  } else {
    w.z_norm = max_enc({sqrt_enc(w.total), {std::max(0.0, diff.lo), diff.hi}, sup});
    w.pe_norm = max_enc({sqrt_enc(w.head), w.head, sup});
  }

  const bool ordered = w.tail.hi <= w.head.lo;
  w.certs.push_back(cert("split", diff.hi, 1, ordered && diff.hi <= 1,
                         "tail <= head <= 1 + tail; lhs = head - tail"));
  w.certs.push_back(cert("sup_norm", top, 1, top <= 1));
  if (w.explicit_form) {
    double v = norm_eval(NormSpec::interval(fam.intervals, pow34()), w.z);
    w.certs.push_back(cert("interval_functional", v, 1, v <= 1));
    double l2 = norm_eval(w1_l2(), w.z);
    Enclosure r = sqrt_enc(w.total);
    w.certs.push_back(cert("weighted_l2", l2, r.hi, l2 >= r.lo * (1 - 1e-12) && l2 <= r.hi * (1 + 1e-12),
                           "equals sqrt(S_m)"));
  } else {
    w.certs.push_back(cert("interval_functional", diff.hi, 1, ordered && diff.hi <= 1, "head - tail, enclosed"));
    // Termwise w_n c_n^2 = 1/(n log(n+1)) at both ends and the middle.
    double worst = 0;
    for (Index n : {a, a + d / 2, b}) {
      long double c = ex_coeff(n);
      long double lhs = std::log1p(ld(n)) / std::sqrt(ld(n)) * c * c;
      worst = std::max(worst, static_cast<double>(std::abs(lhs / series_term(rule, n) - 1)));
    }
    w.certs.push_back(cert("weighted_l2", worst, 1e-12, worst <= 1e-12,
                           "termwise identity w_n c_n^2 = 1/(n log(n+1)); S_m enclosed"));
  }
  w.certs.push_back(cert("projection_lower", w.pe_norm.lo, w.total.hi / 2,
                         ordered && w.pe_norm.lo >= w.head.lo &&
                             (w.pe_norm.lo >= w.total.hi / 2 * (1 - 1e-12) || !w.explicit_form),
                         w.explicit_form ? "" : "head >= tail certified, so head >= S_m / 2"));
  double s = w.total.hi;
  double rhs = s / (2 * (2 + std::sqrt(s)));
  double lhs = w.pe_norm.lo / w.z_norm.hi;
  w.certs.push_back(cert("qg_failure_ratio", lhs, rhs, lhs >= rhs));
  return w;
}

Rearrangement rearrange_prefix_balanced(const std::vector<double>& terms) {
  Rearrangement r;
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < terms.size(); ++i) (terms[i] >= 0 ? pos : neg).push_back(i);
  std::size_t ip = 0, in = 0;
  double s = 0;
  while (ip < pos.size() || in < neg.size()) {
    bool take_pos = in == neg.size() || (ip < pos.size() && s <= 0);
    std::size_t i = take_pos ? pos[ip++] : neg[in++];
    r.order.push_back(i);
    s += terms[i];
    r.achieved_bound = std::max(r.achieved_bound, std::abs(s));
  }
  return r;
}

SpacePreset build_example_76(const IntervalFamily& fam) {
  SpacePreset base = build_example_74(fam);
  std::vector<std::pair<Index, Index>> pairs;
  Json bounds = Json::array();
  for (std::size_t m = 1; m <= fam.intervals.size(); ++m) {
    const Interval iv = fam.intervals[m - 1];
    if (iv.hi == iv.lo || iv.hi - iv.lo + 1 > kExplicitTermLimit) {
      bounds.push_back({{"interval", m}, {"rearranged", false}});
      continue;
    }
    Ex74Witness w = example74_zm(fam, m);
    std::vector<double> terms;
    for (const auto& e : w.z.entries()) terms.push_back(static_cast<double>(std::pow(ld(e.index), -0.75L)) * e.value);
    Rearrangement r = rearrange_prefix_balanced(terms);
    for (std::size_t k = 0; k < r.order.size(); ++k)
      if (r.order[k] != k) pairs.emplace_back(iv.lo + k, iv.lo + r.order[k]);
    bounds.push_back({{"interval", m}, {"rearranged", true}, {"achieved_bound", fmt(r.achieved_bound)},
                      {"contains_index_1", iv.lo == 1}});
  }
  NormSpec reordered = NormSpec::permuted(base.spec, Permutation::from_pairs(std::move(pairs)));
  SpacePreset out{"ex76", NormSpec::majorant(reordered), base.weight, base.metadata};
  out.metadata["permutation"] = "balanced prefix rearrangement per interval";
  out.metadata["rearrangement"] = bounds;
  out.metadata["wrapper"] = "schauder_majorant";
  return out;
}

SpacePreset schauder_majorant(const SpacePreset& p) {
  return {"majorant(" + p.name + ")", NormSpec::majorant(p.spec), p.weight, {{"base", p.name}, {"base_metadata", p.metadata}}};
}

SpacePreset direct_sum(const SpacePreset& left, const SpacePreset& right) {
  return {"sum(" + left.name + "," + right.name + ")", NormSpec::direct_sum(left.spec, right.spec),
          Weight::combined(left.weight, right.weight),
          {{"left", left.name}, {"right", right.name}, {"left_metadata", left.metadata},
           {"right_metadata", right.metadata}}};
}

Cor78Variant parse_cor78_variant(const std::string& s) {
  if (s == "almost_greedy") return Cor78Variant::kAlmostGreedy;
  if (s == "semi_not_qg_schauder") return Cor78Variant::kSemiNotQgSchauder;
  if (s == "semi_not_schauder") return Cor78Variant::kSemiNotSchauder;
  throw ContractError("unknown corollary variant '" + s + "'");
}

std::string cor78_variant_name(Cor78Variant v) {
  switch (v) {
    case Cor78Variant::kAlmostGreedy: return "almost_greedy";
    case Cor78Variant::kSemiNotQgSchauder: return "semi_not_qg_schauder";
    case Cor78Variant::kSemiNotSchauder: return "semi_not_schauder";
  }
  return "";
}

namespace {
const IntervalFamily& default_family() {
  static const IntervalFamily fam = build_intervals_74(3);
  return fam;
}
}  // namespace

SpacePreset build_corollary_78(Cor78Variant v, double p, const Weight& w_c0) {
  if (!w_c0.tends_to_zero()) throw ContractError("corollary construction needs a weight declared to tend to 0");
  SpacePreset right = v == Cor78Variant::kAlmostGreedy        ? build_example_72()
                      : v == Cor78Variant::kSemiNotQgSchauder ? build_example_76(default_family())
                                                              : build_example_74(default_family());
  SpacePreset out = direct_sum(build_xp(p, w_c0), right);
  out.name = "cor78:" + cor78_variant_name(v);
  out.weight = Weight::combined(w_c0, Weight::constant(1));
  out.metadata["variant"] = cor78_variant_name(v);
  out.metadata["second_weight"] = "constant 1";
  return out;
}

SpacePreset preset_by_name(const std::string& name) {
  if (name == "xp") return build_xp(2, Weight::formula_w1());
  if (name.rfind("xp:", 0) == 0) return build_xp(parse_real(name.substr(3)), Weight::formula_w1());
  if (name == "ex72") return build_example_72();
  if (name == "ex74") return build_example_74(default_family());
  if (name == "ex76") return build_example_76(default_family());
  if (name == "sum") return direct_sum(build_xp(2, Weight::formula_w1()), build_example_72());
  if (name.rfind("cor78:", 0) == 0) return build_corollary_78(parse_cor78_variant(name.substr(6)), 2, Weight::formula_w1());
  throw ContractError("unknown preset '" + name + "'");
}

// ---- suites ----

SuiteResult verify_xp_exactness(double p, const Weight& w, std::size_t n_small, std::size_t samples, Index max_index,
                                std::uint64_t seed) {
  SpacePreset xp = build_xp(p, w);
  SuiteResult r{"xp_exactness p=" + fmt(p), 0, 0, 0, 1e-12, {}};
  auto rel_err = [&](const IndexSet& a, const std::vector<int>& eps) {
    double expect = std::max(1.0, std::pow(weight_measure(w, a), 1 / p));
    return std::abs(norm_eval(xp.spec, SparseVector::indicator(a, eps)) - expect) / expect;
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keys;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n_small); ++mask)
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << __builtin_popcountll(mask)); ++s) keys.emplace_back(mask, s);
  std::vector<double> err(keys.size() + samples);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < keys.size(); ++i) {
    IndexSet a = mask_set(keys[i].first);
    std::vector<int> eps(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) eps[k] = keys[i].second >> k & 1 ? -1 : 1;
    err[i] = rel_err(a, eps);
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < samples; ++i) {
    detail::SplitMix rng(detail::mix(seed, i));
    std::size_t k = 1 + rng.below(200);
    std::vector<Index> v;
    for (std::size_t q = 0; q < k; ++q) v.push_back(1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(max_index)));
    IndexSet a = make_index_set(std::move(v));
    std::vector<int> eps(a.size());
    for (auto& e : eps) e = rng.below(2) ? -1 : 1;
    err[keys.size() + i] = rel_err(a, eps);
  }
  for (double e : err) {
    ++r.cases;
    r.worst = std::max(r.worst, e);
    if (!(e <= r.limit)) ++r.violations;
  }
  return r;
}

SuiteResult verify_lemma71(std::size_t n_small, std::size_t samples, Index max_index, std::uint64_t seed) {
  SuiteResult r{"lemma71", 0, 0, 0, 4, {}};
  const std::size_t top = static_cast<std::size_t>(std::max<Index>(max_index, Index{1} << n_small));
  // Term tables and their prefix sums over 1..top.
  std::vector<long double> f(top + 1), g(top + 1), pf(top + 1, 0), pg(top + 1, 0);
  for (std::size_t n = 1; n <= top; ++n) {
    f[n] = std::pow(static_cast<long double>(n), -0.75L);
    g[n] = std::log1p(static_cast<long double>(n)) / std::sqrt(static_cast<long double>(n));
    pf[n] = pf[n - 1] + f[n];
    pg[n] = pg[n - 1] + g[n];
  }
  auto ratio = [&](const IndexSet& a) {
    long double lhs = 0, rhs = 0;
    for (Index n : a) {
      lhs += f[static_cast<std::size_t>(n)];
      rhs += g[static_cast<std::size_t>(n)];
    }
    return static_cast<double>(lhs / std::sqrt(rhs));
  };
  std::size_t n_ex = (std::size_t{1} << n_small) - 1;
  std::vector<double> v(n_ex + samples);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n_ex; ++i) v[i] = ratio(mask_set(i + 1));
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < samples; ++i) {
    detail::SplitMix rng(detail::mix(seed, i));
    if (i % 4 == 0) {  // initial segments, where the left side is largest
      std::size_t k = 1 + static_cast<std::size_t>(rng.next() % static_cast<std::uint64_t>(max_index));
      v[n_ex + i] = static_cast<double>(pf[k] / std::sqrt(pg[k]));
      continue;
    }
    std::size_t k = 1 + rng.below(1000);
    std::vector<Index> idx;
    for (std::size_t q = 0; q < k; ++q) idx.push_back(1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(max_index)));
    v[n_ex + i] = ratio(make_index_set(std::move(idx)));
  }
  for (double x : v) {
    ++r.cases;
    r.worst = std::max(r.worst, x);
    if (!(x <= r.limit)) ++r.violations;
  }
  return r;
}

SuiteResult verify_ex72_sandwich(std::size_t max_size, Index n, double tol) {
  if (n > 40 || max_size > 20) throw ContractError("sandwich suite limited to n <= 40");
  SpacePreset ex = build_example_72();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> w(nn + 1);
  for (std::size_t i = 1; i <= nn; ++i) w[i] = weight_at(ex.weight, i);
  SuiteResult r{"ex72_sandwich", 0, 0, -INFINITY, tol, {}};
  std::size_t cases = 0, bad = 0;
  double worst = -INFINITY;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : cases, bad) reduction(max : worst)
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nn); ++mask) {
    int k = __builtin_popcountll(mask);
    if (static_cast<std::size_t>(k) > max_size) continue;
    double mu = 0;
    for (std::size_t i = 1; i <= nn; ++i)
      if (mask >> (i - 1) & 1) mu += w[i];
    double lo = std::max(1.0, std::sqrt(mu)), hi = std::max(1.0, 4 * std::sqrt(mu));
    Entry e[64];
    // The norm is even, so the first sign stays +1.
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << (k - 1)); ++s) {
      std::size_t len = fill_indicator(mask, s << 1, e);
      double v = norm_eval(ex.spec, std::span<const Entry>(e, len));
      double slack = std::max(lo - v, v - hi);
      worst = std::max(worst, slack);
      ++cases;
      if (slack > tol) ++bad;
    }
  }
  r.cases = cases;
  r.violations = bad;
  r.worst = worst;
  r.detail = "worst = max(lower - norm, norm - upper)";
  return r;
}

SuiteResult verify_ex72_quasi_greedy(std::size_t candidates, std::size_t max_m, std::uint64_t seed, double tol) {
  SpacePreset ex = build_example_72();
  IndexSet pool;
  for (Index i = 1; i <= 40; ++i) pool.push_back(i);
  EstimatorBudget b;
  b.candidates = candidates;
  b.seed = seed;
  std::vector<SparseVector> xs = candidate_family(b, pool, max_m, 1.0);
  for (std::size_t k = 2; k <= 40; k += 2) {
    Ex72Pair p = example72_witnesses(k);
    xs.push_back(p.y);
    xs.push_back(p.z);
  }
  SuiteResult r{"ex72_quasi_greedy", 0, 0, 0, 6, {}};
  std::size_t cases = 0, bad = 0, skipped = 0;
  double worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : cases, bad, skipped) reduction(max : worst)
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const SparseVector& x = xs[i];
    double nx = norm_eval(ex.spec, x);
    if (nx == 0) continue;
    for (std::size_t m = 1; m <= std::min(max_m, x.size()); ++m) {
      if (count_greedy_sets(x, m, 1.0) > 100000) {
        ++skipped;
        continue;
      }
      for (const auto& a : enumerate_greedy_sets(x, m, 1.0)) {
        double v = norm_eval(ex.spec, project(x, a));
        ++cases;
        worst = std::max(worst, v / nx);
        if (v > 6 * nx + tol) ++bad;
      }
    }
  }
  r.cases = cases;
  r.violations = bad;
  r.worst = worst;
  r.detail = "vectors " + std::to_string(xs.size()) + ", skipped (x, m) " + std::to_string(skipped);
  return r;
}

SuiteResult verify_ex72_conditionality(const std::vector<std::size_t>& ms) {
  SuiteResult r{"ex72_conditionality", 0, 0, 0, 0, {}};
  std::vector<double> v(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) v[i] = example72_ratio(ms[i]);
  std::ostringstream os;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    os << (i ? " " : "") << "r(" << ms[i] << ")=" << fmt(v[i]);
    if (i > 0) {
      ++r.cases;
      if (!(v[i] > v[i - 1])) ++r.violations;
    }
  }
  r.worst = v.empty() ? 0 : v.back();
  r.detail = os.str();
  return r;
}

SuiteResult verify_ex74_certificates(const IntervalFamily& fam) {
  SuiteResult r{"ex74_certificates", 0, 0, INFINITY, 1, {}};
  std::ostringstream os;
  for (std::size_t m = 1; m <= fam.intervals.size(); ++m) {
    Ex74Witness w = example74_zm(fam, m);
    for (const auto& c : w.certs) {
      ++r.cases;
      if (!c.pass) {
        ++r.violations;
        os << "m=" << m << " " << c.name << " failed (" << fmt(c.lhs) << " vs " << fmt(c.rhs) << "); ";
      }
      if (c.name == "qg_failure_ratio") r.worst = std::min(r.worst, c.lhs / c.rhs);
    }
  }
  r.detail = os.str().empty() ? "worst = min ratio / bound" : os.str();
  return r;
}

SuiteResult verify_ex74_trend(const IntervalFamily& fam) {
  SuiteResult r{"ex74_trend", 0, 0, 0, 0, {}};
  std::ostringstream os;
  Enclosure prev{0, 0};
  for (std::size_t m = 1; m <= fam.intervals.size(); ++m) {
    Ex74Witness w = example74_zm(fam, m);
    Enclosure q = w.qg_ratio();
    Enclosure inv{1 / q.hi, 1 / q.lo};  // |z| / |P_E z|
    os << (m > 1 ? " " : "") << "m=" << m << ":[" << fmt(inv.lo) << "," << fmt(inv.hi) << "]";
    if (m > 1) {
      ++r.cases;
      if (!(inv.hi < prev.lo)) ++r.violations;
    }
    prev = inv;
    r.worst = inv.hi;
  }
  r.detail = os.str();
  return r;
}

SuiteResult verify_lemma75(const SpacePreset& base, std::size_t max_size, Index n, double tol) {
  const std::size_t nn = static_cast<std::size_t>(n);
  if (nn > 20) throw ContractError("majorant suite limited to n <= 20");
  NormSpec y = NormSpec::majorant(base.spec);
  SuiteResult r{"lemma75", 0, 0, -INFINITY, tol, {}};
  std::size_t cases = 0, bad = 0;
  double worst = -INFINITY;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : cases, bad) reduction(max : worst)
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nn); ++mask) {
    int k = __builtin_popcountll(mask);
    if (static_cast<std::size_t>(k) > max_size) continue;
    Entry e[64], f[64];
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << (k - 1)); ++s) {
      std::size_t len = fill_indicator(mask, s << 1, e);
      double lhs = norm_eval(y, std::span<const Entry>(e, len));
      double rhs = 0;
      for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << len); ++sub) {
        std::size_t q = 0;
        for (std::size_t i = 0; i < len; ++i)
          if (sub >> i & 1) f[q++] = e[i];
        rhs = std::max(rhs, norm_eval(base.spec, std::span<const Entry>(f, q)));
      }
      double slack = (lhs - rhs) / rhs;
      worst = std::max(worst, slack);
      ++cases;
      if (slack > tol) ++bad;
    }
  }
  for (Index i = 1; i <= n; ++i) {
    SparseVector u = SparseVector::unit(i);
    double a = norm_eval(y, u), b = norm_eval(base.spec, u);
    double d = std::abs(a - b) / b;
    worst = std::max(worst, d);
    ++cases;
    if (d > tol) ++bad;
  }
  r.cases = cases;
  r.violations = bad;
  r.worst = worst;
  r.detail = "worst relative excess of |1_{eps,A}|_Y over max_B |1_{eps,B}|_X, or unit-norm mismatch";
  return r;
}

SuiteResult verify_lemma77(const SpacePreset& left, const SpacePreset& right, std::size_t max_size, Index n,
                           double tol) {
  const std::size_t nn = static_cast<std::size_t>(n);
  if (nn > 24) throw ContractError("direct-sum suite limited to n <= 24");
  SpacePreset z = direct_sum(left, right);
  SuiteResult r{"lemma77", 0, 0, 0, tol, {}};
  std::size_t cases = 0, bad = 0;
  double worst = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : cases, bad) reduction(max : worst)
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nn); ++mask) {
    int k = __builtin_popcountll(mask);
    if (static_cast<std::size_t>(k) > max_size) continue;
    Entry e[64], odd[64], even[64];
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      std::size_t len = fill_indicator(mask, s, e);
      std::size_t no = 0, ne = 0;
      for (std::size_t i = 0; i < len; ++i) {
        Index idx = e[i].index;
        if (idx % 2) odd[no++] = {(idx + 1) / 2, e[i].value};
        else even[ne++] = {idx / 2, e[i].value};
      }
      double lhs = norm_eval(z.spec, std::span<const Entry>(e, len));
      double rhs = std::max(no ? norm_eval(left.spec, std::span<const Entry>(odd, no)) : 0.0,
                            ne ? norm_eval(right.spec, std::span<const Entry>(even, ne)) : 0.0);
      double d = std::abs(lhs - rhs) / rhs;
      worst = std::max(worst, d);
      ++cases;
      if (d > tol) ++bad;
    }
  }
  for (Index i = 1; i <= n; ++i) {
    double a = norm_eval(z.spec, SparseVector::unit(i));
    double b = i % 2 ? norm_eval(left.spec, SparseVector::unit((i + 1) / 2))
                     : norm_eval(right.spec, SparseVector::unit(i / 2));
    double d = std::abs(a - b) / b;
    worst = std::max(worst, d);
    ++cases;
    if (d > tol) ++bad;
  }
  r.cases = cases;
  r.violations = bad;
  r.worst = worst;
  r.detail = "worst relative gap between |1_{eps,A}|_Z and the max of component norms";
  return r;
}

}  // namespace greedylab
