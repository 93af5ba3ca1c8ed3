#ifndef GREEDYLAB_RAND_HPP_
#define GREEDYLAB_RAND_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "greedylab/types.hpp"

namespace greedylab::detail {

// Platform-independent stream: the same seed gives the same doubles
// everywhere, unlike std distributions.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  SplitMix s(a * 0x2545f4914f6cdd1dULL + b);
  s.next();
  return s.next();
}

template <class T>
void shuffle(SplitMix& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// k distinct elements of pool, returned sorted.
inline IndexSet sample_subset(SplitMix& rng, const IndexSet& pool, std::size_t k) {
  std::vector<Index> p(pool.begin(), pool.end());
  if (k > p.size()) k = p.size();
  for (std::size_t i = 0; i < k; ++i) std::swap(p[i], p[i + rng.below(p.size() - i)]);
  p.resize(k);
  return make_index_set(std::move(p));
}

}  // namespace greedylab::detail

#endif  // GREEDYLAB_RAND_HPP_
