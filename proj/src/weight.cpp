#include "greedylab/weight.hpp"

#include <cmath>

namespace greedylab {

struct Weight::Rep {
  Kind kind;
  double c = 1;
  std::vector<double> values;
  TailRule tail = TailRule::kRepeatLast;
  std::vector<Weight> parts;  // odd, even for kCombined
};

Weight Weight::constant(double c) {
  if (!(c > 0) || !std::isfinite(c)) throw ContractError("constant weight must be positive");
  auto r = std::make_shared<Rep>();
  r->kind = Kind::kConstant;
  r->c = c;
  return Weight(r);
}

Weight Weight::formula_w1() {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::kFormulaW1;
  return Weight(r);
}

Weight Weight::explicit_list(std::vector<double> values, TailRule tail) {
  if (values.empty()) throw ContractError("explicit weight needs at least one value");
  for (double v : values)
    if (!(v > 0) || !std::isfinite(v)) throw ContractError("explicit weight values must be positive");
  auto r = std::make_shared<Rep>();
  r->kind = Kind::kExplicit;
  r->values = std::move(values);
  r->tail = tail;
  return Weight(r);
}

Weight Weight::combined(const Weight& odd, const Weight& even) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::kCombined;
  r->parts = {odd, even};
  return Weight(r);
}

Weight::Kind Weight::kind() const { return rep_->kind; }

double Weight::at(Index n) const {
  if (n == 0) throw DomainError("weight index must be >= 1");
  switch (rep_->kind) {
    case Kind::kConstant:
      return rep_->c;
    case Kind::kFormulaW1: {
      long double x = index_to_real(n);
      return static_cast<double>(std::log1p(x) / std::sqrt(x));
    }
    case Kind::kExplicit: {
      const auto& v = rep_->values;
      if (n <= v.size()) return v[static_cast<std::size_t>(n - 1)];
      if (rep_->tail == TailRule::kRepeatLast) return v.back();
      long double ratio = static_cast<long double>(v.size()) / index_to_real(n);
      return static_cast<double>(v.back() * std::sqrt(ratio));
    }
    case Kind::kCombined:
      if (n % 2 == 1) return rep_->parts[0].at((n + 1) / 2);
      return rep_->parts[1].at(n / 2);
  }
  return 0;
}

bool Weight::tends_to_zero() const {
  switch (rep_->kind) {
    case Kind::kConstant:
      return false;
    case Kind::kFormulaW1:
      return true;
    case Kind::kExplicit:
      return rep_->tail == TailRule::kInvSqrtDecay;
    case Kind::kCombined:
      return odd().tends_to_zero() && even().tends_to_zero();
  }
  return false;
}

double Weight::constant_value() const { return rep_->c; }
const std::vector<double>& Weight::values() const { return rep_->values; }
TailRule Weight::tail() const { return rep_->tail; }

const Weight& Weight::odd() const {
  if (rep_->kind != Kind::kCombined) throw ContractError("not a combined weight");
  return rep_->parts[0];
}

const Weight& Weight::even() const {
  if (rep_->kind != Kind::kCombined) throw ContractError("not a combined weight");
  return rep_->parts[1];
}

double weight_at(const Weight& w, Index n) { return w.at(n); }

double weight_measure(const Weight& w, const IndexSet& a) {
  long double s = 0;
  for (Index n : a) s += w.at(n);
  return static_cast<double>(s);
}

}  // namespace greedylab
