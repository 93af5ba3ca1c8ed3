#include "greedylab/norm_spec.hpp"

#include <algorithm>
#include <cmath>

namespace greedylab {

namespace {

constexpr std::size_t kTableSize = 4096;

bool in_any_interval(const std::vector<Interval>& iv, Index n, std::size_t* which) {
  auto it = std::upper_bound(iv.begin(), iv.end(), n,
                             [](Index k, const Interval& a) { return k < a.lo; });
  if (it == iv.begin()) return false;
  --it;
  if (n > it->hi) return false;
  *which = static_cast<std::size_t>(it - iv.begin());
  return true;
}

bool preserves_intervals(const NormNode& n, const Permutation& perm) {
  if (n.kind == NormNode::Kind::kInterval) {
    for (const auto& [from, to] : perm.pairs) {
      std::size_t a = 0, b = 0;
      bool ia = in_any_interval(n.intervals, from, &a);
      bool ib = in_any_interval(n.intervals, to, &b);
      if (ia != ib || (ia && a != b)) return false;
    }
    return true;
  }
  for (const auto& c : n.children)
    if (!preserves_intervals(*c, perm)) return false;
  return true;
}

}  // namespace

CoeffRule CoeffRule::power(double exponent) {
  if (!(exponent > 0) || !std::isfinite(exponent))
    throw ContractError("power rule exponent must be positive");
  CoeffRule r;
  r.kind_ = Kind::kPower;
  r.exponent_ = exponent;
  auto t = std::make_shared<std::vector<double>>(kTableSize);
  for (std::size_t n = 1; n <= kTableSize; ++n)
    (*t)[n - 1] = std::pow(static_cast<double>(n), -exponent);
  r.table_ = t;
  return r;
}

CoeffRule CoeffRule::tabulated(std::vector<double> values, Index first) {
  if (first == 0) throw ContractError("tabulated rule must start at index >= 1");
  for (double v : values)
    if (!std::isfinite(v)) throw ContractError("tabulated rule values must be finite");
  CoeffRule r;
  r.kind_ = Kind::kTabulated;
  r.first_ = first;
  r.values_ = std::make_shared<const std::vector<double>>(std::move(values));
  return r;
}

double CoeffRule::at(Index n) const {
  if (kind_ == Kind::kPower) {
    if (n >= 1 && n <= kTableSize) return (*table_)[static_cast<std::size_t>(n - 1)];
    return static_cast<double>(std::pow(index_to_real(n), -static_cast<long double>(exponent_)));
  }
  if (n < first_ || n - first_ >= values_->size()) return 0;
  return (*values_)[static_cast<std::size_t>(n - first_)];
}

Permutation Permutation::from_pairs(std::vector<std::pair<Index, Index>> pairs) {
  std::erase_if(pairs, [](const auto& pr) { return pr.first == pr.second; });
  std::sort(pairs.begin(), pairs.end());
  std::vector<Index> from, to;
  for (const auto& [a, b] : pairs) {
    if (a == 0 || b == 0) throw ContractError("permutation uses index 0");
    from.push_back(a);
    to.push_back(b);
  }
  std::sort(to.begin(), to.end());
  if (std::adjacent_find(from.begin(), from.end()) != from.end() || from != to)
    throw ContractError("permutation pairs do not form a bijection of a finite set");
  Permutation p;
  p.pairs = std::move(pairs);
  return p;
}

Index Permutation::apply(Index n) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), n,
                             [](const auto& pr, Index k) { return pr.first < k; });
  return (it != pairs.end() && it->first == n) ? it->second : n;
}

double NormNode::weight_at(Index n) const {
  if (n >= 1 && n <= weight_table->size()) return (*weight_table)[static_cast<std::size_t>(n - 1)];
  return weight->at(n);
}

NormSpec NormSpec::weighted_lp(double p, const Weight& w) {
  if (!(p >= 1) || !std::isfinite(p)) throw ContractError("WeightedLp needs p in [1, inf)");
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kWeightedLp;
  n->p = p;
  n->weight = std::make_shared<const Weight>(w);
  auto t = std::make_shared<std::vector<double>>(kTableSize);
  for (std::size_t i = 1; i <= kTableSize; ++i) (*t)[i - 1] = w.at(i);
  n->weight_table = t;
  return NormSpec(n);
}

NormSpec NormSpec::sup() {
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kSup;
  return NormSpec(n);
}

NormSpec NormSpec::prefix(const CoeffRule& c) {
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kPrefix;
  n->coeff = std::make_shared<const CoeffRule>(c);
  return NormSpec(n);
}

NormSpec NormSpec::interval(std::vector<Interval> intervals, const CoeffRule& c) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].lo == 0 || intervals[i].lo > intervals[i].hi)
      throw ContractError("interval must satisfy 1 <= lo <= hi");
    if (i > 0 && intervals[i].lo <= intervals[i - 1].hi)
      throw ContractError("intervals must be ordered and disjoint");
  }
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kInterval;
  n->intervals = std::move(intervals);
  n->coeff = std::make_shared<const CoeffRule>(c);
  return NormSpec(n);
}

NormSpec NormSpec::max_of(const std::vector<NormSpec>& children) {
  if (children.empty()) throw ContractError("MaxOf needs at least one child");
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kMaxOf;
  for (const auto& c : children) n->children.push_back(c.ptr());
  return NormSpec(n);
}

NormSpec NormSpec::direct_sum(const NormSpec& left, const NormSpec& right) {
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kDirectSum;
  n->children = {left.ptr(), right.ptr()};
  return NormSpec(n);
}

NormSpec NormSpec::majorant(const NormSpec& inner) {
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kMajorant;
  n->children = {inner.ptr()};
  return NormSpec(n);
}

NormSpec NormSpec::permuted(const NormSpec& inner, const Permutation& perm) {
  auto n = std::make_shared<NormNode>();
  n->kind = NormNode::Kind::kPermuted;
  n->children = {inner.ptr()};
  n->perm = perm;
  n->perm_preserves_intervals = preserves_intervals(inner.node(), perm);
  return NormSpec(n);
}

std::string node_kind_name(NormNode::Kind k) {
  switch (k) {
    case NormNode::Kind::kWeightedLp: return "weighted_lp";
    case NormNode::Kind::kSup: return "sup";
    case NormNode::Kind::kPrefix: return "prefix";
    case NormNode::Kind::kInterval: return "interval";
    case NormNode::Kind::kMaxOf: return "max_of";
    case NormNode::Kind::kDirectSum: return "direct_sum";
    case NormNode::Kind::kMajorant: return "majorant";
    case NormNode::Kind::kPermuted: return "permuted";
  }
  return "?";
}

}  // namespace greedylab
