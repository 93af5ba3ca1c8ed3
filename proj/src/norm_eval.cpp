#include "greedylab/norm_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "lp.hpp"

namespace greedylab {

namespace {

using Span = std::span<const Entry>;
using Kind = NormNode::Kind;

double eval(const NormNode& n, Span v, double* grad);

double sgn(long double s) { return s < 0 ? -1.0 : 1.0; }

void zero(double* grad, std::size_t k) {
  if (grad) std::fill(grad, grad + k, 0.0);
}

double eval_lp(const NormNode& n, Span v, double* grad) {
  long double s = 0;
  const double p = n.p;
  for (const auto& e : v) {
    double a = std::abs(e.value);
    if (a == 0) continue;
    double w = n.weight_at(e.index);
    s += p == 2 ? w * static_cast<long double>(a) * a
                : w * std::pow(static_cast<long double>(a), static_cast<long double>(p));
  }
  double val = p == 2 ? static_cast<double>(std::sqrt(s))
                      : static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p)));
  if (grad) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      double a = v[k].value;
      if (a == 0 || val == 0) {
        grad[k] = 0;
        continue;
      }
      double w = n.weight_at(v[k].index);
      if (p == 1)
        grad[k] = w * sgn(a);
      else if (p == 2)
        grad[k] = w * a / val;
      else
        grad[k] = w * std::pow(std::abs(a) / val, p - 1) * sgn(a);
    }
  }
  return val;
}

double eval_sup(Span v, double* grad) {
  double best = 0;
  std::size_t arg = v.size();
  for (std::size_t k = 0; k < v.size(); ++k) {
    double a = std::abs(v[k].value);
    if (a > best) best = a, arg = k;
  }
  if (grad) {
    zero(grad, v.size());
    if (arg < v.size()) grad[arg] = sgn(v[arg].value);
  }
  return best;
}

double eval_prefix(const NormNode& n, Span v, double* grad) {
  long double s = 0, best = 0;
  std::size_t last = v.size();
  double sign = 1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].value == 0) continue;
    s += static_cast<long double>(n.coeff->at(v[k].index)) * v[k].value;
    if (std::abs(s) > best) best = std::abs(s), last = k, sign = sgn(s);
  }
  if (grad) {
    zero(grad, v.size());
    if (last < v.size())
      for (std::size_t k = 0; k <= last; ++k) grad[k] = sign * n.coeff->at(v[k].index);
  }
  return static_cast<double>(best);
}

// Calls f(interval_id, begin, end) for each maximal block of entries lying in
// one interval.
template <class F>
void for_each_interval_block(const NormNode& n, Span v, F&& f) {
  const auto& iv = n.intervals;
  if (iv.empty() || v.empty()) return;
  auto it = std::upper_bound(iv.begin(), iv.end(), v.front().index,
                             [](Index k, const Interval& a) { return k < a.lo; });
  std::size_t j = it == iv.begin() ? 0 : static_cast<std::size_t>(it - iv.begin()) - 1;
  std::size_t k = 0;
  while (k < v.size() && j < iv.size()) {
    Index idx = v[k].index;
    if (idx > iv[j].hi) {
      ++j;
      if (j < iv.size() && iv[j].hi < idx) {
        auto jt = std::lower_bound(iv.begin() + static_cast<std::ptrdiff_t>(j), iv.end(), idx,
                                   [](const Interval& a, Index q) { return a.hi < q; });
        j = static_cast<std::size_t>(jt - iv.begin());
      }
      continue;
    }
    if (idx < iv[j].lo) {
      ++k;
      continue;
    }
    std::size_t b = k;
    while (k < v.size() && v[k].index <= iv[j].hi) ++k;
    f(j, b, k);
    ++j;
  }
}

double eval_interval(const NormNode& n, Span v, double* grad) {
  long double best = 0;
  std::size_t bb = 0, be = 0;
  double sign = 1;
  for_each_interval_block(n, v, [&](std::size_t, std::size_t b, std::size_t e) {
    long double s = 0;
    for (std::size_t k = b; k < e; ++k)
      s += static_cast<long double>(n.coeff->at(v[k].index)) * v[k].value;
    if (std::abs(s) > best) best = std::abs(s), bb = b, be = e, sign = sgn(s);
  });
  if (grad) {
    zero(grad, v.size());
    for (std::size_t k = bb; k < be; ++k) grad[k] = sign * n.coeff->at(v[k].index);
  }
  return static_cast<double>(best);
}

double eval_maxof(const NormNode& n, Span v, double* grad) {
  double best = -1;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    double c = eval(*n.children[i], v, nullptr);
    if (c > best) best = c, arg = i;
  }
  if (grad) eval(*n.children[arg], v, grad);
  return best;
}

struct Split {
  std::vector<Entry> left, right;
  std::vector<std::size_t> lpos, rpos;
};

Split split_interleaved(Span v) {
  Split s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    Index i = v[k].index;
    if (i % 2 == 1) {
      s.left.push_back({(i + 1) / 2, v[k].value});
      s.lpos.push_back(k);
    } else {
      s.right.push_back({i / 2, v[k].value});
      s.rpos.push_back(k);
    }
  }
  return s;
}

double eval_direct_sum(const NormNode& n, Span v, double* grad) {
  Split s = split_interleaved(v);
  if (!grad) {
    return std::max(eval(*n.children[0], s.left, nullptr), eval(*n.children[1], s.right, nullptr));
  }
  std::vector<double> gl(s.left.size()), gr(s.right.size());
  double l = eval(*n.children[0], s.left, gl.data());
  double r = eval(*n.children[1], s.right, gr.data());
  zero(grad, v.size());
  if (l >= r) {
    for (std::size_t k = 0; k < gl.size(); ++k) grad[s.lpos[k]] = gl[k];
  } else {
    for (std::size_t k = 0; k < gr.size(); ++k) grad[s.rpos[k]] = gr[k];
  }
  return std::max(l, r);
}

double eval_permuted(const NormNode& n, Span v, double* grad) {
  std::vector<std::size_t> order(v.size());
  std::vector<Index> mapped(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) mapped[k] = n.perm.apply(v[k].index);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return mapped[a] < mapped[b]; });
  std::vector<Entry> w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = {mapped[order[k]], v[order[k]].value};
  if (!grad) return eval(*n.children[0], w, nullptr);
  std::vector<double> g(v.size());
  double val = eval(*n.children[0], w, g.data());
  for (std::size_t k = 0; k < v.size(); ++k) grad[order[k]] = g[k];
  return val;
}

// Best run [lo, hi) of entries for a majorant.
struct Run {
  double value = 0;
  std::size_t lo = 0, hi = 0;
};

struct FastCtx {
  const Permutation* perm = nullptr;
  bool preserves = true;
};

Index mapped_index(const FastCtx& ctx, Index i) { return ctx.perm ? ctx.perm->apply(i) : i; }

// Closed-form sup over runs for nodes where it exists. Returns false when the
// node (under the current permutation) has no fast path.
bool fast_runs(const NormNode& n, Span v, const FastCtx& ctx, Run* out) {
  switch (n.kind) {
    case Kind::kSup: {
      Run r;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (std::abs(v[k].value) > r.value) r = {std::abs(v[k].value), k, k + 1};
      *out = r;
      return true;
    }
    case Kind::kWeightedLp: {
      if (!ctx.perm) {
        *out = {eval_lp(n, v, nullptr), 0, v.size()};
        return true;
      }
      std::vector<Entry> w(v.begin(), v.end());
      for (auto& e : w) e.index = ctx.perm->apply(e.index);
      // Lp only depends on the (index, value) pairs, not on their order.
      long double s = 0;
      for (const auto& e : w)
        s += n.weight_at(e.index) *
             std::pow(static_cast<long double>(std::abs(e.value)), static_cast<long double>(n.p));
      *out = {static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(n.p))), 0, v.size()};
      return true;
    }
    case Kind::kPrefix: {
      if (ctx.perm) return false;
      long double s = 0, mx = 0, mn = 0;
      std::size_t imx = 0, imn = 0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        s += static_cast<long double>(n.coeff->at(v[k].index)) * v[k].value;
        if (s > mx) mx = s, imx = k + 1;
        if (s < mn) mn = s, imn = k + 1;
      }
      *out = {static_cast<double>(mx - mn), std::min(imx, imn), std::max(imx, imn)};
      return true;
    }
    case Kind::kInterval: {
      if (ctx.perm && !ctx.preserves) return false;
      Run best;
      for_each_interval_block(n, v, [&](std::size_t, std::size_t b, std::size_t e) {
        long double s = 0, mx = 0, mn = 0;
        std::size_t imx = b, imn = b;
        for (std::size_t k = b; k < e; ++k) {
          s += static_cast<long double>(n.coeff->at(mapped_index(ctx, v[k].index))) * v[k].value;
          if (s > mx) mx = s, imx = k + 1;
          if (s < mn) mn = s, imn = k + 1;
        }
        double val = static_cast<double>(mx - mn);
        if (val > best.value) best = {val, std::min(imx, imn), std::max(imx, imn)};
      });
      *out = best;
      return true;
    }
    case Kind::kMaxOf: {
      Run best;
      best.value = -1;
      for (const auto& c : n.children) {
        Run r;
        if (!fast_runs(*c, v, ctx, &r)) return false;
        if (r.value > best.value) best = r;
      }
      *out = best;
      return true;
    }
    case Kind::kDirectSum: {
      if (ctx.perm) return false;
      Split s = split_interleaved(v);
      Run l, r;
      if (!fast_runs(*n.children[0], s.left, ctx, &l) ||
          !fast_runs(*n.children[1], s.right, ctx, &r))
        return false;
      auto map_back = [](const Run& run, const std::vector<std::size_t>& pos) {
        if (run.hi <= run.lo) return Run{run.value, 0, 0};
        return Run{run.value, pos[run.lo], pos[run.hi - 1] + 1};
      };
      *out = l.value >= r.value ? map_back(l, s.lpos) : map_back(r, s.rpos);
      return true;
    }
    case Kind::kMajorant:
      if (ctx.perm) return false;
      return fast_runs(*n.children[0], v, ctx, out);
    case Kind::kPermuted:
      if (ctx.perm) return false;
      return fast_runs(*n.children[0], v, FastCtx{&n.perm, n.perm_preserves_intervals}, out);
  }
  return false;
}

Run runs_serial(const NormNode& inner, Span v) {
  Run best;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j <= v.size(); ++j) {
      double val = eval(inner, v.subspan(i, j - i), nullptr);
      if (val > best.value) best = {val, i, j};
    }
  return best;
}

Run runs_parallel(const NormNode& inner, Span v) {
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(v.size());
  std::vector<Run> per_start(v.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < k; ++i) {
    Run best;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j <= v.size(); ++j) {
      double val = eval(inner, v.subspan(static_cast<std::size_t>(i), j - static_cast<std::size_t>(i)), nullptr);
      if (val > best.value) best = {val, static_cast<std::size_t>(i), j};
    }
    per_start[static_cast<std::size_t>(i)] = best;
  }
  Run best;
  for (const auto& r : per_start)
    if (r.value > best.value) best = r;
  return best;
}

double eval_majorant(const NormNode& n, Span v, double* grad) {
  Run r;
  if (!fast_runs(n, v, FastCtx{}, &r)) r = v.size() > 48 ? runs_parallel(*n.children[0], v)
                                                          : runs_serial(*n.children[0], v);
  if (grad) {
    zero(grad, v.size());
    if (r.hi > r.lo) {
      double val = eval(*n.children[0], v.subspan(r.lo, r.hi - r.lo), grad + r.lo);
      r.value = std::max(r.value, val);
    }
  }
  return r.value;
}

double eval(const NormNode& n, Span v, double* grad) {
  switch (n.kind) {
    case Kind::kWeightedLp: return eval_lp(n, v, grad);
    case Kind::kSup: return eval_sup(v, grad);
    case Kind::kPrefix: return eval_prefix(n, v, grad);
    case Kind::kInterval: return eval_interval(n, v, grad);
    case Kind::kMaxOf: return eval_maxof(n, v, grad);
    case Kind::kDirectSum: return eval_direct_sum(n, v, grad);
    case Kind::kMajorant: return eval_majorant(n, v, grad);
    case Kind::kPermuted: return eval_permuted(n, v, grad);
  }
  return 0;
}

double floor_of(const NormNode& n, Index i) {
  switch (n.kind) {
    case Kind::kSup: return 1;
    case Kind::kWeightedLp: return std::pow(n.weight_at(i), 1.0 / n.p);
    case Kind::kPrefix: return std::abs(n.coeff->at(i)) / 2;
    case Kind::kInterval: return 0;
    case Kind::kMaxOf: {
      double f = 0;
      for (const auto& c : n.children) f = std::max(f, floor_of(*c, i));
      return f;
    }
    case Kind::kDirectSum:
      return i % 2 == 1 ? floor_of(*n.children[0], (i + 1) / 2) : floor_of(*n.children[1], i / 2);
    case Kind::kMajorant: {
      Entry e{i, 1.0};
      return eval(*n.children[0], Span(&e, 1), nullptr);
    }
    case Kind::kPermuted: return floor_of(*n.children[0], n.perm.apply(i));
  }
  return 0;
}

}  // namespace

double norm_eval(const NormSpec& spec, std::span<const Entry> v) {
  return eval(spec.node(), v, nullptr);
}

double norm_eval(const NormSpec& spec, const SparseVector& x) {
  return eval(spec.node(), x.entries(), nullptr);
}

double norm_subgradient(const NormSpec& spec, std::span<const Entry> v, std::span<double> grad) {
  if (grad.size() != v.size()) throw ContractError("gradient buffer size mismatch");
  return eval(spec.node(), v, grad.data());
}

double coordinate_floor(const NormSpec& spec, Index i) { return floor_of(spec.node(), i); }

double majorant_runs_serial(const NormSpec& inner, std::span<const Entry> v) {
  return runs_serial(inner.node(), v).value;
}

double majorant_runs_parallel(const NormSpec& inner, std::span<const Entry> v) {
  return runs_parallel(inner.node(), v).value;
}

// Dual norm: minimize |a| over the hyperplane c.a = 1 (then |c|_* = 1/min).
// Projected subgradient steps with a Polyak-type level, restarted from
// several feasible points. The upper bound comes from the cutting-plane
// model built from the collected norming functionals.
DualNormResult dual_norm_eval(const NormSpec& spec, const SparseVector& c, Index n_dim,
                              const DualNormOptions& opts) {
  if (n_dim > 64) throw ContractError("dual_norm_eval supports N <= 64");
  for (const auto& e : c.entries())
    if (e.index > n_dim) throw ContractError("supp(c) must lie in [1, N]");
  DualNormResult res;
  if (c.empty()) {
    res.converged = true;
    return res;
  }
  const std::size_t n = static_cast<std::size_t>(n_dim);
  std::vector<double> cv(n, 0.0);
  for (const auto& e : c.entries()) cv[static_cast<std::size_t>(e.index - 1)] = e.value;
  double cc = 0;
  for (double x : cv) cc += x * x;

  std::vector<Entry> buf(n);
  std::vector<double> g(n);
  auto f = [&](const std::vector<double>& a, bool with_grad) {
    for (std::size_t k = 0; k < n; ++k) buf[k] = {static_cast<Index>(k + 1), a[k]};
    return with_grad ? eval(spec.node(), buf, g.data()) : eval(spec.node(), buf, nullptr);
  };
  auto project = [&](std::vector<double>& a) {
    double ca = 0;
    for (std::size_t k = 0; k < n; ++k) ca += cv[k] * a[k];
    double shift = (ca - 1) / cc;
    for (std::size_t k = 0; k < n; ++k) a[k] -= shift * cv[k];
  };

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0, 1);
  std::vector<double> best_a;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cuts;  // norming functionals
  for (int s = 0; s < opts.starts; ++s) {
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = s == 0 ? cv[k] / cc : normal(rng) / std::sqrt(cc);
    project(a);
    double local_best = f(a, false);
    double delta = 0.5 * local_best;
    int stall = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
      double val = f(a, true);
      if (it % 8 == 0 && cuts.size() < 400) cuts.push_back(g);
      if (val < best) best = val, best_a = a;
      if (val < local_best - 1e-15 * local_best) {
        local_best = val;
        stall = 0;
      } else if (++stall > 40) {
        delta *= 0.5;
        stall = 0;
      }
      // Projected subgradient direction.
      double gc = 0;
      for (std::size_t k = 0; k < n; ++k) gc += g[k] * cv[k];
      double gg = 0;
      for (std::size_t k = 0; k < n; ++k) {
        g[k] -= gc / cc * cv[k];
        gg += g[k] * g[k];
      }
      if (gg < 1e-300) break;
      double step = (val - (local_best - delta)) / gg;
      for (std::size_t k = 0; k < n; ++k) a[k] -= step * g[k];
      project(a);
      if (delta < 1e-12 * local_best) break;
    }
  }
  // Norming functional at the best point is the most useful cut.
  f(best_a, true);
  cuts.push_back(g);

  if (!(best > 0) || !std::isfinite(1.0 / best))
    throw DomainError("norm vanishes on the hyperplane c.a = 1; the dual value is infinite");
  res.value = 1.0 / best;
  std::vector<Entry> arg;
  for (std::size_t k = 0; k < n; ++k) arg.push_back({static_cast<Index>(k + 1), best_a[k] / best});
  res.argmax = SparseVector(arg);
  // Value achieved by the stored feasible point, recomputed.
  {
    double num = 0;
    for (std::size_t k = 0; k < n; ++k) num += cv[k] * best_a[k];
    res.value = std::abs(num) / best;
  }

  // Upper bound: c = sum mu_j phi_j + r, so |c|_* <= sum mu_j + sum |r_n| / nu_n.
  std::vector<double> nu(n);
  bool box_ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    nu[k] = coordinate_floor(spec, static_cast<Index>(k + 1));
    if (!(nu[k] > 0)) box_ok = false;
  }
  res.upper = std::numeric_limits<double>::infinity();
  if (box_ok) {
    // maximize c.(ap - am) s.t. phi_j.(ap - am) <= 1, ap_n, am_n <= 1/nu_n.
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const auto& phi : cuts) {
      std::vector<double> row(2 * n);
      for (std::size_t k = 0; k < n; ++k) row[k] = phi[k], row[n + k] = -phi[k];
      rows.push_back(row);
      rhs.push_back(1);
    }
    for (std::size_t k = 0; k < 2 * n; ++k) {
      std::vector<double> row(2 * n, 0.0);
      row[k] = 1;
      rows.push_back(row);
      rhs.push_back(1 / nu[k % n]);
    }
    std::vector<double> obj(2 * n);
    for (std::size_t k = 0; k < n; ++k) obj[k] = cv[k], obj[n + k] = -cv[k];
    auto lp = detail::solve_lp(rows, rhs, obj);
    std::vector<double> r = cv;
    double total = 0;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      double mu = lp.dual[j];
      total += mu;
      for (std::size_t k = 0; k < n; ++k) r[k] -= mu * cuts[j][k];
    }
    for (std::size_t k = 0; k < n; ++k) total += std::abs(r[k]) / nu[k];
    res.upper = total;
  }
  res.converged = res.upper - res.value <= opts.tolerance * res.value;
  return res;
}

}  // namespace greedylab
