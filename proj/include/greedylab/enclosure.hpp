#ifndef GREEDYLAB_ENCLOSURE_HPP_
#define GREEDYLAB_ENCLOSURE_HPP_

#include <string>

#include "greedylab/types.hpp"

namespace greedylab {

struct Enclosure {
  double lo = 0, hi = 0;
  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
};

// Positive decreasing rules with certified integral bounds.
enum class SeriesRule {
  kInvNLog,  // 1 / (n log(n+1))
  kW1,       // n^{-1/2} log(n+1), decreasing for n >= 4
  kPow34,    // n^{-3/4}
};

std::string series_rule_name(SeriesRule r);
SeriesRule parse_series_rule(const std::string& name);
long double series_term(SeriesRule r, Index n);
// Smallest index from which the rule is decreasing.
Index series_decreasing_from(SeriesRule r);

// Ranges up to this length are summed term by term (lo == hi).
inline constexpr Index kDirectSumLimit = 1000000;

// lo <= sum_{n=a}^{b} f(n) <= hi. Longer ranges use
// int_a^{b+1} f <= sum <= f(a) + int_a^b f with rounding padded outward.
// ContractError if a > b, a == 0 or the rule is not decreasing on [a, b].
Enclosure interval_sum_certified(SeriesRule rule, Index a, Index b);

// The integral sandwich alone, whatever the range length.
Enclosure interval_sum_sandwich(SeriesRule rule, Index a, Index b);

// Memoizes interval_sum_certified results in a JSON file. Enabled by the CLI
// when GREEDYLAB_CACHE is set.
void enable_enclosure_cache(const std::string& path);
void flush_enclosure_cache();

}  // namespace greedylab

#endif  // GREEDYLAB_ENCLOSURE_HPP_
