#include "greedylab/sparse_vector.hpp"

#include <algorithm>
#include <cmath>

namespace greedylab {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index == 0) throw ContractError("index 0 is not a basis index");
    if (i > 0 && entries[i].index == entries[i - 1].index)
      throw ContractError("duplicate index " + index_to_string(entries[i].index));
    if (!std::isfinite(entries[i].value)) throw ContractError("non-finite coefficient");
    if (entries[i].value != 0) entries_.push_back(entries[i]);
  }
}

SparseVector SparseVector::from_dense(const std::vector<double>& v, Index first) {
  std::vector<Entry> e;
  e.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e.push_back({first + i, v[i]});
  return SparseVector(std::move(e));
}

SparseVector SparseVector::indicator(const IndexSet& a, const std::vector<int>& signs) {
  if (!signs.empty() && signs.size() != a.size())
    throw ContractError("sign pattern length does not match the set");
  std::vector<Entry> e;
  e.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    e.push_back({a[i], signs.empty() ? 1.0 : (signs[i] < 0 ? -1.0 : 1.0)});
  return SparseVector(std::move(e));
}

SparseVector SparseVector::unit(Index n) { return SparseVector({{n, 1.0}}); }

IndexSet SparseVector::support() const {
  IndexSet s;
  s.reserve(entries_.size());
  for (const auto& e : entries_) s.push_back(e.index);
  return s;
}

double SparseVector::at(Index n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const Entry& e, Index k) { return e.index < k; });
  return (it != entries_.end() && it->index == n) ? it->value : 0.0;
}

double SparseVector::max_abs() const {
  double m = 0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

SparseVector SparseVector::restrict_to(const IndexSet& a) const {
  SparseVector out;
  for (const auto& e : entries_)
    if (contains(a, e.index)) out.entries_.push_back(e);
  return out;
}

SparseVector SparseVector::scaled(double t) const {
  SparseVector out;
  if (t == 0) return out;
  out.entries_ = entries_;
  for (auto& e : out.entries_) e.value *= t;
  // Underflow can produce zeros.
  std::erase_if(out.entries_, [](const Entry& e) { return e.value == 0; });
  return out;
}

static SparseVector combine(const SparseVector& a, const SparseVector& b, double sign) {
  std::vector<Entry> out;
  auto x = a.entries(), y = b.entries();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].index < x[i].index) {
      out.push_back({y[j].index, sign * y[j].value});
      ++j;
    } else {
      out.push_back({x[i].index, x[i].value + sign * y[j].value});
      ++i, ++j;
    }
  }
  return SparseVector(std::move(out));
}

SparseVector operator+(const SparseVector& a, const SparseVector& b) { return combine(a, b, 1); }
SparseVector operator-(const SparseVector& a, const SparseVector& b) { return combine(a, b, -1); }

bool operator==(const SparseVector& a, const SparseVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.entries_[i].index != b.entries_[i].index || a.entries_[i].value != b.entries_[i].value)
      return false;
  return true;
}

std::vector<int> sign_pattern(const SparseVector& x, const IndexSet& a) {
  std::vector<int> s;
  s.reserve(a.size());
  for (Index n : a) s.push_back(x.at(n) < 0 ? -1 : 1);
  return s;
}

}  // namespace greedylab
