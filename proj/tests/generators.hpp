// Hand-rolled random generators for property tests.
#ifndef GREEDYLAB_TESTS_GENERATORS_HPP_
#define GREEDYLAB_TESTS_GENERATORS_HPP_

#include <algorithm>
#include <random>

#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"

namespace greedylab::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
inline int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

inline Weight random_weight(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return Weight::constant(uniform(rng, 0.2, 3));
    case 1: return Weight::formula_w1();
    default: {
      std::vector<double> v(static_cast<std::size_t>(uniform_int(rng, 1, 6)));
      for (auto& x : v) x = uniform(rng, 0.1, 2);
      return Weight::explicit_list(v, uniform_int(rng, 0, 1) ? TailRule::kRepeatLast : TailRule::kInvSqrtDecay);
    }
  }
}

inline CoeffRule random_coeff(Rng& rng) {
  if (uniform_int(rng, 0, 2) > 0) return CoeffRule::power(uniform_int(rng, 0, 1) ? 0.75 : uniform(rng, 0.2, 1.5));
  std::vector<double> v(static_cast<std::size_t>(uniform_int(rng, 4, 24)));
  for (auto& x : v) x = uniform(rng, -1.5, 1.5);
  return CoeffRule::tabulated(v, static_cast<Index>(uniform_int(rng, 1, 3)));
}

inline std::vector<Interval> random_intervals(Rng& rng, int max_index) {
  std::vector<Interval> iv;
  Index at = static_cast<Index>(uniform_int(rng, 1, 3));
  while (at <= static_cast<Index>(max_index)) {
    Index len = static_cast<Index>(uniform_int(rng, 1, 6));
    iv.push_back({at, at + len - 1});
    at += len + static_cast<Index>(uniform_int(rng, 0, 2));
  }
  if (iv.empty()) iv.push_back({1, 2});
  return iv;
}

inline Permutation random_permutation(Rng& rng, int max_index) {
  std::vector<Index> from;
  for (int i = 1; i <= max_index; ++i)
    if (uniform_int(rng, 0, 1)) from.push_back(static_cast<Index>(i));
  std::vector<Index> to = from;
  std::shuffle(to.begin(), to.end(), rng);
  std::vector<std::pair<Index, Index>> pairs;
  for (std::size_t k = 0; k < from.size(); ++k) pairs.emplace_back(from[k], to[k]);
  return Permutation::from_pairs(pairs);
}

inline NormSpec random_leaf(Rng& rng, NormNode::Kind kind) {
  switch (kind) {
    case NormNode::Kind::kWeightedLp: {
      const double ps[] = {1, 1.5, 2, 3};
      return NormSpec::weighted_lp(ps[uniform_int(rng, 0, 3)], random_weight(rng));
    }
    case NormNode::Kind::kSup: return NormSpec::sup();
    case NormNode::Kind::kPrefix: return NormSpec::prefix(random_coeff(rng));
    default: return NormSpec::interval(random_intervals(rng, 30), random_coeff(rng));
  }
}

// Random tree over every node kind. Leaves may be seminorms.
inline NormSpec random_spec(Rng& rng, int depth = 2) {
  int k = uniform_int(rng, 0, depth > 0 ? 7 : 3);
  switch (k) {
    case 0: return random_leaf(rng, NormNode::Kind::kWeightedLp);
    case 1: return random_leaf(rng, NormNode::Kind::kSup);
    case 2: return random_leaf(rng, NormNode::Kind::kPrefix);
    case 3: return random_leaf(rng, NormNode::Kind::kInterval);
    case 4: {
      std::vector<NormSpec> c;
      int n = uniform_int(rng, 1, 3);
      for (int i = 0; i < n; ++i) c.push_back(random_spec(rng, depth - 1));
      return NormSpec::max_of(c);
    }
    case 5: return NormSpec::direct_sum(random_spec(rng, depth - 1), random_spec(rng, depth - 1));
    case 6: return NormSpec::majorant(random_spec(rng, depth - 1));
    default: return NormSpec::permuted(random_spec(rng, depth - 1), random_permutation(rng, 12));
  }
}

// A spec of the given kind whose descendants are genuine norms
// (dominating the sup norm), so coordinate floors are positive.
inline NormSpec random_norm_of_kind(Rng& rng, NormNode::Kind kind) {
  auto base = [&] { return NormSpec::max_of({NormSpec::sup(), random_leaf(rng, NormNode::Kind::kPrefix)}); };
  switch (kind) {
    case NormNode::Kind::kWeightedLp:
    case NormNode::Kind::kSup:
      return random_leaf(rng, kind);
    case NormNode::Kind::kPrefix:
      return base();
    case NormNode::Kind::kInterval:
      return NormSpec::max_of({NormSpec::sup(), random_leaf(rng, NormNode::Kind::kInterval)});
    case NormNode::Kind::kMaxOf:
      return NormSpec::max_of({random_leaf(rng, NormNode::Kind::kWeightedLp), random_leaf(rng, NormNode::Kind::kPrefix),
                               random_leaf(rng, NormNode::Kind::kInterval)});
    case NormNode::Kind::kDirectSum:
      return NormSpec::direct_sum(base(), random_leaf(rng, NormNode::Kind::kWeightedLp));
    case NormNode::Kind::kMajorant:
      return NormSpec::majorant(base());
    case NormNode::Kind::kPermuted:
      return NormSpec::permuted(base(), random_permutation(rng, 10));
  }
  return NormSpec::sup();
}

inline SparseVector random_vector(Rng& rng, int max_index, int max_size) {
  std::vector<Index> idx;
  int k = uniform_int(rng, 0, max_size);
  for (int i = 0; i < k; ++i) idx.push_back(static_cast<Index>(uniform_int(rng, 1, max_index)));
  idx = make_index_set(idx);
  std::normal_distribution<double> nd(0, 1);
  std::vector<Entry> e;
  for (Index i : idx) e.push_back({i, nd(rng)});
  return SparseVector(e);
}

}  // namespace greedylab::testing

#endif  // GREEDYLAB_TESTS_GENERATORS_HPP_
