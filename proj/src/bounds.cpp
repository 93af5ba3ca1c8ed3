#include <algorithm>
#include <cmath>
#include <functional>

#include "greedylab/params.hpp"

namespace greedylab {

namespace {

using Inputs = std::map<std::string, double>;

class Args {
 public:
  explicit Args(const Inputs& in) : in_(in) {}

  double operator()(const std::string& name) const {
    auto it = in_.find(name);
    if (it == in_.end()) throw ContractError("missing input '" + name + "'");
    double v = it->second;
    // L_ch(0, s) is defined as 0, so this one input may vanish.
    bool may_vanish = name == "Lch_m_minus_1";
    if (!std::isfinite(v) || v < 0 || (v == 0 && !may_vanish))
      throw ContractError("input '" + name + "' must be positive");
    if ((name == "s" || name == "t") && v > 1) throw ContractError("input '" + name + "' must lie in (0, 1]");
    return v;
  }

 private:
  const Inputs& in_;
};

struct Formula {
  std::vector<std::string> inputs;
  std::function<double(const Args&)> eval;
};

double thm53_k(const Args& a) {
  double c = a("C"), s = a("s");
  return c / s * std::max(2 * c / s, a("lambda") * a("lambda_prime"));
}

const std::map<std::string, Formula>& formulas() {
  static const std::map<std::string, Formula> f = {
      {"prop39_C1",
       {{"C", "s", "lambda", "lambda_prime", "inf_w_inv"},
        [](const Args& a) {
          double l = a("lambda");
          return 3 * a("C") / a("s") * (1 + l * a("lambda_prime")) * l * std::max(2 * a("inf_w_inv"), 1.0);
        }}},
      {"thm314_i",
       {{"C", "M", "s", "t", "lambda", "lambda_prime"},
        [](const Args& a) {
          double c = a("C"), s = a("s"), t = a("t");
          return c * a("M") *
                 std::max(1 + 8 / (t * s) * a("lambda") * a("lambda_prime"), 1 + 6 * c / (t * s * s * s));
        }}},
      {"thm314_ii",
       {{"C", "M", "s", "lambda", "lambda_prime"},
        [](const Args& a) {
          double c = a("C"), s = a("s");
          return 2 / s * c * a("M") * std::max(a("lambda") * a("lambda_prime"), 2 * c / (s * s));
        }}},
      {"thm315_i",
       {{"C", "M", "s", "t"},
        [](const Args& a) {
          double c = a("C"), s = a("s");
          return c * a("M") * (1 + 6 * c / (a("t") * s * s * s));
        }}},
      {"thm315_ii",
       {{"C", "M", "s"},
        [](const Args& a) {
          double c = a("C"), s = a("s");
          return 4 / (s * s * s) * c * c * a("M");
        }}},
      {"thm53_K", {{"C", "s", "lambda", "lambda_prime"}, thm53_k}},
      {"thm53_qg",
       {{"C", "s", "t", "lambda", "lambda_prime"},
        [](const Args& a) {
          double s = a("s");
          return (1 + thm53_k(a) / (a("t") * s * s)) * (1 + a("C"));
        }}},
      {"prop62",
       {{"M", "Lch", "s", "t"},
        [](const Args& a) {
          double l = a("Lch"), s = a("s");
          return a("M") * l * (1 + 2 * l / (a("t") * s * s));
        }}},
      {"prop66_i",
       {{"M", "Lch_2m", "Lch_m", "s", "t"},
        [](const Args& a) {
          double m = a("M"), s = a("s");
          return m * a("Lch_2m") * (1 + 2 * (m + 1) * a("Lch_m") / (a("t") * s * s));
        }}},
      {"prop66_ii",
       {{"M", "Lch_2m", "Lch_m", "s", "t"},
        [](const Args& a) {
          double s = a("s");
          return a("M") * a("Lch_2m") * (1 + 4 * a("Lch_m") / (a("t") * s * s));
        }}},
      {"prop66_iii",
       {{"M", "Lch_2m", "Lch_m_minus_1", "Lch_2", "s", "t"},
        [](const Args& a) {
          double s = a("s");
          return a("M") * a("Lch_2m") * (1 + (4 * a("Lch_m_minus_1") + 2 * a("Lch_2")) / (a("t") * s * s));
        }}},
      {"prop611_i",
       {{"Lch_m", "M", "s"},
        [](const Args& a) {
          double l = a("Lch_m"), m = a("M"), s = a("s");
          return l * l * m * (1 + m) / (s * s);
        }}},
      {"prop611_ii",
       {{"Lch_m", "M", "s"},
        [](const Args& a) {
          double l = a("Lch_m"), s = a("s");
          return 2 * l * l * a("M") / (s * s);
        }}},
      {"prop611_iii",
       {{"Lch_m_minus_1", "M", "s", "lambda", "lambda_prime"},
        [](const Args& a) {
          double l = a("Lch_m_minus_1"), s = a("s");
          return 2 * l * l * a("M") / (s * s) + a("lambda") * a("lambda_prime");
        }}},
      {"cor612_i",
       {{"M", "p_m", "Lch_m", "s"},
        [](const Args& a) {
          double l = a("Lch_m"), m = a("M"), s = a("s");
          return m * a("p_m") + l * l * m * (1 + m) / (s * s);
        }}},
      {"cor612_ii",
       {{"M", "p_m", "Lch_m", "s"},
        [](const Args& a) {
          double l = a("Lch_m"), m = a("M"), s = a("s");
          return m * a("p_m") + 2 * l * l * m / (s * s);
        }}},
      {"cor612_iii",
       {{"M", "p_m", "Lch_m_minus_1", "s", "lambda", "lambda_prime"},
        [](const Args& a) {
          double l = a("Lch_m_minus_1"), m = a("M"), s = a("s");
          return m * a("p_m") + 2 * l * l * m / (s * s) + a("lambda") * a("lambda_prime");
        }}},
      {"remark37",
       {{"kappa", "C"},
        [](const Args& a) {
          double c = a("C");
          return 2 * a("kappa") * c * c;
        }}},
      {"thm321",
       {{"C1", "C2", "C3", "s", "t"},
        [](const Args& a) { return a("C1") * (1 + a("C2") * a("C3") / (a("t") * a("s"))); }}},
  };
  return f;
}

const std::vector<std::string>& all_input_names() {
  static const std::vector<std::string> names = {"C", "M", "s", "t", "lambda", "lambda_prime", "kappa", "inf_w_inv",
                                                 "Lch", "Lch_2m", "Lch_m", "Lch_m_minus_1", "Lch_2", "p_m", "C1",
                                                 "C2", "C3"};
  return names;
}

}  // namespace

const std::vector<std::string>& bound_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const auto& [k, v] : formulas()) t.push_back(k);
    return t;
  }();
  return tags;
}

const std::vector<std::string>& bound_inputs(const std::string& tag) {
  auto it = formulas().find(tag);
  if (it == formulas().end()) throw ContractError("unknown bound formula '" + tag + "'");
  return it->second.inputs;
}

double bound_calculator(const std::string& tag, const std::map<std::string, double>& inputs) {
  auto it = formulas().find(tag);
  if (it == formulas().end()) throw ContractError("unknown bound formula '" + tag + "'");
  const auto& names = all_input_names();
  for (const auto& [k, v] : inputs)
    if (std::find(names.begin(), names.end(), k) == names.end()) throw ContractError("unknown input '" + k + "'");
  return it->second.eval(Args(inputs));
}

}  // namespace greedylab
