#ifndef GREEDYLAB_CHEBYSHEV_HPP_
#define GREEDYLAB_CHEBYSHEV_HPP_

#include <cstdint>
#include <string>

#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"

namespace greedylab {

struct ChebOptions {
  int iters_per_start = 120;
  int random_starts = 2;
  int cut_rounds = 150;  // cutting-plane refinements after the descent
  std::uint64_t seed = 1;
  double rel_gap = 1e-4;        // target gap / max(1, error)
  double small_rel_gap = 1e-6;  // target when |A| <= 3
};

struct ChebResult {
  SparseVector y;  // supp(y) inside A
  double error = 0;  // norm of x - y
  double gap = 0;    // error minus a certified lower bound on the infimum
  std::string method;
  bool flagged = false;  // gap target missed within the budget

  double lower() const { return error - gap; }
};

// Best approximation of x by vectors supported in A, |A| <= 32.
ChebResult chebyshev_best(const NormSpec& spec, const SparseVector& x, const IndexSet& a,
                          const ChebOptions& opts = {});

}  // namespace greedylab

#endif  // GREEDYLAB_CHEBYSHEV_HPP_
