#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace greedylab::detail {

LpSolution solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    const std::vector<double>& c, int max_pivots) {
  const std::size_t m = a.size(), n = c.size(), cols = n + m + 1;
  // Row-major tableau; row m is the objective row (reduced costs).
  std::vector<double> t((m + 1) * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t k) -> double& { return t[r * cols + k]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < n; ++k) at(r, k) = a[r][k];
    at(r, n + r) = 1;
    at(r, cols - 1) = b[r] < 0 ? 0 : b[r];
    basis[r] = n + r;
  }
  for (std::size_t k = 0; k < n; ++k) at(m, k) = -c[k];

  const double eps = 1e-12;
  LpSolution sol;
  int degenerate_run = 0;
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    bool bland = degenerate_run > 50;
    std::size_t enter = cols;
    double best = -eps;
    for (std::size_t k = 0; k + 1 < cols; ++k) {
      if (at(m, k) < best) {
        enter = k;
        if (bland) break;
        best = at(m, k);
      }
    }
    if (enter == cols) {
      sol.optimal = true;
      break;
    }
    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      double coef = at(r, enter);
      if (coef > eps) {
        double q = at(r, cols - 1) / coef;
        if (q < ratio - 1e-15 || (q <= ratio + 1e-15 && leave < m && basis[r] < basis[leave])) {
          ratio = q;
          leave = r;
        }
      }
    }
    if (leave == m) break;  // unbounded; cannot happen for the bounded problems used here
    degenerate_run = ratio < eps ? degenerate_run + 1 : 0;
    double pv = at(leave, enter);
    for (std::size_t k = 0; k < cols; ++k) at(leave, k) /= pv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      double f = at(r, enter);
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) at(r, k) -= f * at(leave, k);
    }
    basis[leave] = enter;
  }
  sol.primal.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) sol.primal[basis[r]] = std::max(0.0, at(r, cols - 1));
  sol.dual.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) sol.dual[r] = std::max(0.0, at(m, n + r));
  sol.value = at(m, cols - 1);
  return sol;
}

}  // namespace greedylab::detail
