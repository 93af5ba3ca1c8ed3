#ifndef GREEDYLAB_TYPES_HPP_
#define GREEDYLAB_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace greedylab {

// Basis index. Indices start at 1 and go up to 2^127 - 1.
using Index = unsigned __int128;

inline constexpr Index kMaxIndex = (static_cast<Index>(1) << 127) - 1;

using IndexSet = std::vector<Index>;  // sorted, no duplicates

// Violated precondition or malformed input.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a mathematical function (e.g. index 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A search would exceed its configured size; never answered partially.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Result does not fit the 127-bit index range.
class CapacityError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

std::string index_to_string(Index n);
Index parse_index(const std::string& s);  // throws ContractError

// Long double approximation of n, used when evaluating weights and rules.
inline long double index_to_real(Index n) {
  return static_cast<long double>(n);
}

// Sorts and removes duplicates.
IndexSet make_index_set(std::vector<Index> v);
bool contains(const IndexSet& s, Index n);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
bool disjoint(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);

// Formats a double with 17 significant digits.
std::string format_real(double v);
// Parses a decimal string (or a JSON number rendered as text).
double parse_real(const std::string& s);

}  // namespace greedylab

#endif  // GREEDYLAB_TYPES_HPP_
