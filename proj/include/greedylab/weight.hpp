#ifndef GREEDYLAB_WEIGHT_HPP_
#define GREEDYLAB_WEIGHT_HPP_

#include <memory>
#include <vector>

#include "greedylab/types.hpp"

namespace greedylab {

// What an explicit weight does past the end of its list.
enum class TailRule {
  kRepeatLast,    // w_n = w_L for n > L
  kInvSqrtDecay,  // w_n = w_L * (L / n)^{1/2} for n > L; tends to 0
};

// Positive sequence w_1, w_2, ... Immutable; copies share structure.
class Weight {
 public:
  enum class Kind { kConstant, kFormulaW1, kExplicit, kCombined };

  static Weight constant(double c);
  // w_n = n^{-1/2} log(n+1).
  static Weight formula_w1();
  static Weight explicit_list(std::vector<double> values, TailRule tail);
  // W_{2n-1} = odd_n, W_{2n} = even_n.
  static Weight combined(const Weight& odd, const Weight& even);

  Kind kind() const;
  double at(Index n) const;  // DomainError for n == 0

  // True for kinds declared to tend to 0.
  bool tends_to_zero() const;

  double constant_value() const;
  const std::vector<double>& values() const;
  TailRule tail() const;
  const Weight& odd() const;
  const Weight& even() const;

 private:
  struct Rep;
  explicit Weight(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

double weight_at(const Weight& w, Index n);
// Sum of w over A; 0 for the empty set.
double weight_measure(const Weight& w, const IndexSet& a);

}  // namespace greedylab

#endif  // GREEDYLAB_WEIGHT_HPP_
