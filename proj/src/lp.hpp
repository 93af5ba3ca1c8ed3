#ifndef GREEDYLAB_SRC_LP_HPP_
#define GREEDYLAB_SRC_LP_HPP_

#include <vector>

namespace greedylab::detail {

struct LpSolution {
  bool optimal = false;
  double value = 0;
  std::vector<double> primal;  // z
  std::vector<double> dual;    // one multiplier per constraint row, >= 0
};

// Dense tableau simplex for
//   maximize c.z  subject to  A z <= b,  z >= 0,
// with b >= 0 so that the origin is feasible. Callers must not trust the
// returned numbers blindly: they re-evaluate any bound they derive.
LpSolution solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    const std::vector<double>& c, int max_pivots = 20000);

}  // namespace greedylab::detail

#endif  // GREEDYLAB_SRC_LP_HPP_
