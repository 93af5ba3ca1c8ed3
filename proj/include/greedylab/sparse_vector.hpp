#ifndef GREEDYLAB_SPARSE_VECTOR_HPP_
#define GREEDYLAB_SPARSE_VECTOR_HPP_

#include <span>
#include <utility>
#include <vector>

#include "greedylab/types.hpp"

namespace greedylab {

struct Entry {
  Index index;
  double value;
};

// Finite-support coefficient map. Entries are kept sorted by index and no
// stored coefficient is zero.
class SparseVector {
 public:
  SparseVector() = default;
  // Zeros are dropped; duplicate indices or index 0 throw ContractError.
  explicit SparseVector(std::vector<Entry> entries);
  // Coefficients v[0], v[1], ... on indices first, first+1, ...
  static SparseVector from_dense(const std::vector<double>& v, Index first = 1);
  // Sign indicator sum_{n in A} eps_n e_n; signs empty means all +1.
  static SparseVector indicator(const IndexSet& a, const std::vector<int>& signs = {});
  static SparseVector unit(Index n);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  IndexSet support() const;
  double at(Index n) const;
  double max_abs() const;

  SparseVector restrict_to(const IndexSet& a) const;
  SparseVector scaled(double t) const;

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b);
  friend SparseVector operator-(const SparseVector& a, const SparseVector& b);
  friend bool operator==(const SparseVector& a, const SparseVector& b);

 private:
  std::vector<Entry> entries_;
};

// Signs of the coefficients on A (the sign pattern eps(x) of x).
std::vector<int> sign_pattern(const SparseVector& x, const IndexSet& a);

}  // namespace greedylab

#endif  // GREEDYLAB_SPARSE_VECTOR_HPP_
