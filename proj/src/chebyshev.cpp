#include "greedylab/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"
#include "lp.hpp"

namespace greedylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Affine minorant of u -> |x - y(u)| in residual coordinates r = x_A - u:
// |b + r| >= c + g.r, with g the functional restricted to A.
struct Cut {
  double c;
  std::vector<double> g;
};

class Problem {
 public:
  Problem(const NormSpec& spec, const SparseVector& x, const IndexSet& a) : spec_(spec) {
    IndexSet idx = set_union(x.support(), a);
    buf_.reserve(idx.size());
    for (Index i : idx) {
      if (contains(a, i)) pos_.push_back(buf_.size()), xa_.push_back(x.at(i));
      buf_.push_back({i, x.at(i)});
    }
    grad_.resize(buf_.size());
  }

  std::size_t k() const { return pos_.size(); }
  const std::vector<double>& xa() const { return xa_; }

  // Value at y_A = u, matching the subtraction used by SparseVector.
  double value(const std::vector<double>& u) {
    load(u);
    return norm_eval(spec_, buf_);
  }

  // Value plus the cut through this point.
  double value_cut(const std::vector<double>& u, Cut& cut) {
    load(u);
    double f = norm_subgradient(spec_, buf_, grad_);
    cut.g.assign(k(), 0.0);
    cut.c = 0;
    std::size_t j = 0;
    for (std::size_t q = 0; q < buf_.size(); ++q) {
      if (j < k() && pos_[j] == q) {
        cut.g[j++] = grad_[q];
      } else {
        cut.c += grad_[q] * buf_[q].value;
      }
    }
    return f;
  }

 private:
  void load(const std::vector<double>& u) {
    for (std::size_t j = 0; j < k(); ++j) buf_[pos_[j]].value = xa_[j] - u[j];
  }

  const NormSpec& spec_;
  std::vector<Entry> buf_;
  std::vector<double> grad_;
  std::vector<std::size_t> pos_;
  std::vector<double> xa_;
};

struct Bound {
  double lower = -kInf;
  std::vector<double> trial_r;  // minimizer of the cutting-plane model
  std::vector<double> weights;  // cut multipliers
  bool has_trial = false;
};

// max sum_j l_j c_j - sum_i R_i |sum_j l_j g_j(i)| over l >= 0, sum l <= 1.
// The value is recomputed from the returned weights, so it does not rely on
// the simplex being exact.
Bound certify(const std::vector<Cut>& cuts, const std::vector<double>& radius) {
  const std::size_t k = radius.size(), nc = cuts.size();
  std::vector<std::size_t> svar(k, 0);
  std::size_t nvar = nc;
  for (std::size_t i = 0; i < k; ++i)
    if (std::isfinite(radius[i])) svar[i] = nvar++;
  std::vector<std::vector<double>> a(2 * k + 1, std::vector<double>(nvar, 0.0));
  std::vector<double> b(2 * k + 1, 0.0), obj(nvar, 0.0);
  for (std::size_t j = 0; j < nc; ++j) {
    obj[j] = cuts[j].c;
    for (std::size_t i = 0; i < k; ++i) {
      a[2 * i][j] = cuts[j].g[i];
      a[2 * i + 1][j] = -cuts[j].g[i];
    }
    a[2 * k][j] = 1;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(radius[i])) continue;
    a[2 * i][svar[i]] = -1;
    a[2 * i + 1][svar[i]] = -1;
    obj[svar[i]] = -radius[i];
  }
  b[2 * k] = 1;
  auto sol = detail::solve_lp(a, b, obj);
  Bound out;
  if (!sol.optimal) return out;
  std::vector<double> lam(nc);
  double total = 0;
  for (std::size_t j = 0; j < nc; ++j) total += lam[j] = std::max(0.0, sol.primal[j]);
  if (total > 1)
    for (double& l : lam) l /= total;
  double lb = 0;
  for (std::size_t j = 0; j < nc; ++j) lb += lam[j] * cuts[j].c;
  for (std::size_t i = 0; i < k; ++i) {
    double psi = 0;
    for (std::size_t j = 0; j < nc; ++j) psi += lam[j] * cuts[j].g[i];
    if (psi == 0) continue;
    lb -= radius[i] * std::abs(psi);  // -inf when the radius is unbounded
  }
  out.lower = lb;
  out.weights = std::move(lam);
  out.trial_r.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.trial_r[i] = sol.dual[2 * i + 1] - sol.dual[2 * i];
  out.has_trial = true;
  return out;
}

constexpr std::size_t kMaxCuts = 160;

// Keeps the cuts carrying weight in the last certificate plus the newest.
void prune(std::vector<Cut>& cuts, const Bound& last) {
  std::vector<Cut> kept;
  for (std::size_t j = 0; j < last.weights.size() && j < cuts.size(); ++j)
    if (last.weights[j] > 0) kept.push_back(cuts[j]);
  std::size_t room = kMaxCuts / 2 > kept.size() ? kMaxCuts / 2 - kept.size() : 0;
  std::size_t from = cuts.size() > room ? cuts.size() - room : 0;
  for (std::size_t j = std::max(from, last.weights.size()); j < cuts.size(); ++j) kept.push_back(cuts[j]);
  cuts = std::move(kept);
}

// Midpoint of the optimal segment through u along coordinate 0 (|A| = 1).
std::vector<double> face_midpoint(Problem& p, const std::vector<double>& u, double f, double reach) {
  double tol = 1e-13 * std::max(1.0, f);
  auto on_face = [&](double v) { return p.value({v}) <= f + tol; };
  double ends[2];
  for (int side = 0; side < 2; ++side) {
    double dir = side == 0 ? -1 : 1;
    double lo = 0, hi = reach;
    if (on_face(u[0] + dir * hi)) {
      ends[side] = u[0] + dir * hi;
      continue;
    }
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (on_face(u[0] + dir * mid) ? lo : hi) = mid;
    }
    ends[side] = u[0] + dir * lo;
  }
  std::vector<double> m{0.5 * (ends[0] + ends[1])};
  return p.value(m) <= f + tol ? m : u;
}

}  // namespace

ChebResult chebyshev_best(const NormSpec& spec, const SparseVector& x, const IndexSet& a, const ChebOptions& opts) {
  if (a.size() > 32) throw ContractError("chebyshev_best supports |A| <= 32");
  ChebResult res;
  if (is_subset(x.support(), a)) {
    res.y = x;
    res.method = "exact";
    return res;
  }
  if (a.empty()) {
    res.error = norm_eval(spec, x);
    res.method = "exact";
    return res;
  }

  Problem prob(spec, x, a);
  const std::size_t k = prob.k();
  const double target_rel = k <= 3 ? opts.small_rel_gap : opts.rel_gap;
  std::vector<Cut> cuts;
  Cut cut;

  // Start from y = P_A(x) first so that ties keep the projection.
  std::vector<double> best_u = prob.xa();
  double best = prob.value(best_u);
  const double proj_error = best;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-0.5, 1.5);
  double scale = std::max(x.max_abs(), 1e-300);
  std::vector<std::vector<double>> starts{prob.xa(), std::vector<double>(k, 0.0)};
  for (int s = 0; s < opts.random_starts; ++s) {
    std::vector<double> u(k);
    for (std::size_t j = 0; j < k; ++j) u[j] = prob.xa()[j] * unif(rng) + 0.1 * scale * (unif(rng) - 0.5);
    starts.push_back(std::move(u));
  }

  auto consider = [&](const std::vector<double>& u, double f) {
    if (f < best) best = f, best_u = u;
  };

  for (auto& u : starts) {
    double local = prob.value(u);
    double delta = 0.25 * local;
    int stall = 0;
    for (int it = 0; it < opts.iters_per_start; ++it) {
      double f = prob.value_cut(u, cut);
      consider(u, f);
      if (f < local * (1 - 1e-12)) {
        local = f;
        stall = 0;
      } else if (++stall > 12) {
        delta *= 0.5;
        stall = 0;
      }
      double gg = 0;
      for (double v : cut.g) gg += v * v;
      bool keep = it % 4 == 0 || f <= best;
      if (keep && cuts.size() < 400) cuts.push_back(cut);
      if (gg == 0) break;  // flat in the A-directions: optimal
      double step = (f - (local - delta)) / gg;
      // The gradient in u is -g.
      for (std::size_t j = 0; j < k; ++j) u[j] += step * cut.g[j];
      if (delta < 1e-14 * std::max(local, 1e-300)) break;
    }
  }

  std::vector<double> radius(k);
  auto update_radius = [&] {
    for (std::size_t j = 0; j < k; ++j) {
      double nu = coordinate_floor(spec, a[j]);
      radius[j] = nu > 0 ? best / nu : kInf;
    }
  };
  auto target = [&] { return target_rel * std::max(1.0, best); };

  prob.value_cut(best_u, cut);
  cuts.push_back(cut);
  update_radius();
  Bound bound = certify(cuts, radius);
  double lower = bound.lower;
  for (int round = 0; round < opts.cut_rounds && best - std::max(lower, 0.0) > target(); ++round) {
    if (bound.has_trial) {
      std::vector<double> u(k);
      for (std::size_t j = 0; j < k; ++j) u[j] = prob.xa()[j] - bound.trial_r[j];
      consider(u, prob.value_cut(u, cut));
      cuts.push_back(cut);
    }
    // Polyak steps from the incumbent aimed halfway down to the lower bound.
    std::vector<double> u = best_u;
    for (int it = 0; it < 12; ++it) {
      double f = prob.value_cut(u, cut);
      consider(u, f);
      cuts.push_back(cut);
      double gg = 0;
      for (double v : cut.g) gg += v * v;
      if (gg == 0) break;
      double level = std::max(lower, 0.0);
      level += 0.5 * (best - level);
      if (f <= level) break;
      double step = (f - level) / gg;
      for (std::size_t j = 0; j < k; ++j) u[j] += step * cut.g[j];
    }
    if (cuts.size() > kMaxCuts) prune(cuts, bound);
    update_radius();
    Bound next = certify(cuts, radius);
    if (next.lower > lower) lower = next.lower;
    if (next.has_trial) bound = std::move(next);
  }
  res.method = "subgradient";

  if (k == 1) {
    double reach = std::isfinite(radius[0]) ? 2 * radius[0] + std::abs(prob.xa()[0]) : 4 * scale + best;
    best_u = face_midpoint(prob, best_u, best, reach);
    best = prob.value(best_u);
  }

  std::vector<Entry> ye;
  for (std::size_t j = 0; j < k; ++j) ye.push_back({a[j], best_u[j]});
  res.y = SparseVector(std::move(ye));
  res.error = norm_eval(spec, x - res.y);
  if (res.error > proj_error) {
    res.y = project(x, a);
    res.error = norm_eval(spec, x - res.y);
  }
  res.gap = std::max(0.0, res.error - std::max(lower, 0.0));
  res.flagged = res.gap > target_rel * std::max(1.0, res.error);
  return res;
}

}  // namespace greedylab
