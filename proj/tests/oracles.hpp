// Independent brute-force oracles used by the tests.
#ifndef GREEDYLAB_TESTS_ORACLES_HPP_
#define GREEDYLAB_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "greedylab/norm_eval.hpp"

namespace greedylab::testing {

// Dense evaluation on coordinates 1..a.size() straight from the definitions:
// every m for prefix sups, every [k, m] for majorants.
inline double dense_norm(const NormNode& n, const std::vector<double>& a) {
  const std::size_t N = a.size();
  switch (n.kind) {
    case NormNode::Kind::kWeightedLp: {
      double s = 0;
      for (std::size_t i = 0; i < N; ++i) s += n.weight->at(i + 1) * std::pow(std::abs(a[i]), n.p);
      return std::pow(s, 1 / n.p);
    }
    case NormNode::Kind::kSup: {
      double m = 0;
      for (double v : a) m = std::max(m, std::abs(v));
      return m;
    }
    case NormNode::Kind::kPrefix: {
      double s = 0, m = 0;
      for (std::size_t i = 0; i < N; ++i) {
        s += n.coeff->at(i + 1) * a[i];
        m = std::max(m, std::abs(s));
      }
      return m;
    }
    case NormNode::Kind::kInterval: {
      double m = 0;
      for (const auto& iv : n.intervals) {
        double s = 0;
        for (Index i = iv.lo; i <= iv.hi && i <= N; ++i) s += n.coeff->at(i) * a[static_cast<std::size_t>(i - 1)];
        m = std::max(m, std::abs(s));
      }
      return m;
    }
    case NormNode::Kind::kMaxOf: {
      double m = 0;
      for (const auto& c : n.children) m = std::max(m, dense_norm(*c, a));
      return m;
    }
    case NormNode::Kind::kDirectSum: {
      std::vector<double> l((N + 1) / 2), r(N / 2);
      for (std::size_t i = 0; i < N; ++i) (i % 2 == 0 ? l[i / 2] : r[i / 2]) = a[i];
      return std::max(dense_norm(*n.children[0], l), dense_norm(*n.children[1], r));
    }
    case NormNode::Kind::kMajorant: {
      double m = 0;
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = k; j < N; ++j) {
          std::vector<double> r(N, 0.0);
          for (std::size_t i = k; i <= j; ++i) r[i] = a[i];
          m = std::max(m, dense_norm(*n.children[0], r));
        }
      return m;
    }
    case NormNode::Kind::kPermuted: {
      std::size_t size = N;
      for (const auto& pr : n.perm.pairs) size = std::max(size, static_cast<std::size_t>(pr.second));
      std::vector<double> b(size, 0.0);
      for (std::size_t i = 0; i < N; ++i) b[static_cast<std::size_t>(n.perm.apply(i + 1) - 1)] = a[i];
      return dense_norm(*n.children[0], b);
    }
  }
  return 0;
}

inline double dense_norm(const NormSpec& s, const SparseVector& x, std::size_t N) {
  std::vector<double> a(N, 0.0);
  for (const auto& e : x.entries()) a[static_cast<std::size_t>(e.index - 1)] = e.value;
  return dense_norm(s.node(), a);
}

// Minimizes a convex function of k <= 3 variables on a shrinking grid.
// Returns the best value found.
inline double grid_minimize(const std::function<double(const std::vector<double>&)>& f, std::vector<double> center,
                            double radius, int points = 21, int rounds = 60) {
  const std::size_t k = center.size();
  double best = f(center);
  if (k == 0) return best;
  for (int round = 0; round < rounds; ++round) {
    std::vector<double> best_pt = center;
    std::vector<int> idx(k, 0);
    double h = 2 * radius / (points - 1);
    while (true) {
      std::vector<double> p(k);
      for (std::size_t d = 0; d < k; ++d) p[d] = center[d] - radius + h * idx[d];
      double v = f(p);
      if (v < best) best = v, best_pt = p;
      std::size_t d = 0;
      while (d < k && ++idx[d] == points) idx[d++] = 0;
      if (d == k) break;
    }
    center = best_pt;
    radius = std::max(radius * 0.5, 1e-12);
  }
  return best;
}

// Dual norm at N <= 3 by maximizing c.a / |a| over a refined grid of the
// cube surface.
inline double grid_dual_norm(const NormSpec& s, const std::vector<double>& c) {
  const std::size_t N = c.size();
  auto ratio = [&](const std::vector<double>& a) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < N; ++i) e.push_back({static_cast<Index>(i + 1), a[i]});
    double nrm = norm_eval(s, e);
    if (nrm == 0) return 0.0;
    double dot = 0;
    for (std::size_t i = 0; i < N; ++i) dot += c[i] * a[i];
    return std::abs(dot) / nrm;
  };
  // Maximizing a 0-homogeneous ratio: search the box [-1,1]^N coarse, then refine.
  double best = grid_minimize([&](const std::vector<double>& a) { return -ratio(a); }, std::vector<double>(N, 0.0),
                              1.0, 41, 50);
  return -best;
}

}  // namespace greedylab::testing

#endif  // GREEDYLAB_TESTS_ORACLES_HPP_
