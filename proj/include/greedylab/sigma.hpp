#ifndef GREEDYLAB_SIGMA_HPP_
#define GREEDYLAB_SIGMA_HPP_

#include <cstddef>

#include "greedylab/chebyshev.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"
#include "greedylab/weight.hpp"

namespace greedylab {

enum class Exec { kSerial, kParallel };

inline constexpr std::size_t kMaxPool = 24;

// Minimizer of an exhaustive or branch-and-bound support search. Ties are
// broken toward the lexicographically smallest support.
struct SupportSearch {
  double value = 0;
  IndexSet support;
  SparseVector y;        // approximant realizing value
  double gap = 0;        // certified Chebyshev gap at the minimizer (0 for projections)
  bool flagged = false;  // some evaluated Chebyshev problem missed its gap target
  IndexSet pool;
  std::size_t evaluations = 0;
};

struct SigmaOptions {
  ChebOptions cheb;
  ChebOptions bound_cheb{60, 1, 40, 1, 1e-3, 1e-3};  // cheaper solves for pruning bounds
  Exec exec = Exec::kParallel;
};

// min over B in pool, |B| <= m, of the Chebyshev error on B. An upper bound
// on the unrestricted best m-term error; requires supp(x) in pool, |pool| <= 24.
SupportSearch sigma_m_search(const NormSpec& spec, const SparseVector& x, std::size_t m, const IndexSet& pool,
                             const SigmaOptions& opts = {});
double sigma_m(const NormSpec& spec, const SparseVector& x, std::size_t m, const IndexSet& pool);

// Same search over an arbitrary pool (supp(x) need not be inside it), as
// used for approximants avoiding a given set.
SupportSearch sigma_m_search_in(const NormSpec& spec, const SparseVector& x, std::size_t m, const IndexSet& pool,
                                const SigmaOptions& opts = {});

// Same with the constraint w(B) <= budget.
SupportSearch weighted_sigma_search(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget,
                                    const IndexSet& pool, const SigmaOptions& opts = {});
double weighted_sigma(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget,
                      const IndexSet& pool);

// min over B in supp(x), |B| <= m, of |x - P_B(x)|; |supp(x)| <= 24.
SupportSearch sigma_tilde_search(const NormSpec& spec, const SparseVector& x, std::size_t m,
                                 Exec exec = Exec::kParallel);
double sigma_tilde_m(const NormSpec& spec, const SparseVector& x, std::size_t m);

// min over B in items, |B| <= m, of |x - P_B(x)|; |items| <= 24.
SupportSearch projection_search_in(const NormSpec& spec, const SparseVector& x, const IndexSet& items, std::size_t m,
                                   Exec exec = Exec::kParallel);

// min over B in supp(x), w(B) <= budget, of |x - P_B(x)|.
SupportSearch weighted_projection_search(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget,
                                         Exec exec = Exec::kParallel);
double weighted_projection_error(const NormSpec& spec, const SparseVector& x, const Weight& w, double budget);

}  // namespace greedylab

#endif  // GREEDYLAB_SIGMA_HPP_
