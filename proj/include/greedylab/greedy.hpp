#ifndef GREEDYLAB_GREEDY_HPP_
#define GREEDYLAB_GREEDY_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "greedylab/sparse_vector.hpp"

namespace greedylab {

// Restriction of x to A.
SparseVector project(const SparseVector& x, const IndexSet& a);

// The m largest coefficients in modulus, ties toward smaller indices. When
// m exceeds the support the set is padded with the smallest unused indices.
IndexSet natural_greedy_set(const SparseVector& x, std::size_t m);

// min_{j in A} |x_j| >= t * max_{j not in A} |x_j|.
bool is_greedy_set(const SparseVector& x, const IndexSet& a, double t);

struct GreedyEnumOptions {
  std::size_t max_m = 20;
  std::size_t max_results = 1000000;
  // Indices allowed as padding when m > |supp(x)|. Empty means the natural
  // padding (smallest unused indices) is the only choice.
  IndexSet padding_pool;
};

// All m-element t-greedy sets, sorted lexicographically. Throws BudgetError
// rather than truncating.
std::vector<IndexSet> enumerate_greedy_sets(const SparseVector& x, std::size_t m, double t,
                                            const GreedyEnumOptions& opts = {});

// Number of sets enumerate_greedy_sets would return (no padding case only).
double count_greedy_sets(const SparseVector& x, std::size_t m, double t);

using SetPredicate = std::function<bool(const IndexSet&)>;

// Smallest-first search for an s-greedy B containing A whose coefficients
// all satisfy |x_j| >= s^2 min_{i in A} |x_i| and which the predicate accepts.
IndexSet greedy_superset_s2(const SparseVector& x, const IndexSet& a, double s, const SetPredicate& accept);

}  // namespace greedylab

#endif  // GREEDYLAB_GREEDY_HPP_
