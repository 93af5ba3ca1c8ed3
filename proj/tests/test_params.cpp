#include <cmath>
#include <cstring>
#include <map>

#include "doctest.h"
#include "greedylab/examples.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"
#include "greedylab/params.hpp"

using namespace greedylab;

namespace {

IndexSet range_set(Index lo, Index hi) {
  IndexSet s;
  for (Index i = lo; i <= hi; ++i) s.push_back(i);
  return s;
}

std::map<std::string, double> canonical_inputs(const std::string& tag) {
  std::map<std::string, double> in;
  for (const auto& name : bound_inputs(tag)) in[name] = 1;
  return in;
}

EstimatorBudget budget(std::size_t n, std::uint64_t seed = 7) {
  EstimatorBudget b;
  b.candidates = n;
  b.seed = seed;
  return b;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("bound calculator canonical values") {
  // Hand evaluation of each closed form with every input equal to 1.
  const std::map<std::string, double> expected = {
      {"prop39_C1", 12},  {"thm314_i", 9},   {"thm314_ii", 4},   {"thm315_i", 7},    {"thm315_ii", 4},
      {"thm53_K", 2},     {"thm53_qg", 6},   {"prop62", 3},      {"prop66_i", 5},    {"prop66_ii", 5},
      {"prop66_iii", 7},  {"prop611_i", 2},  {"prop611_ii", 2},  {"prop611_iii", 3}, {"cor612_i", 3},
      {"cor612_ii", 3},   {"cor612_iii", 4}, {"remark37", 2},    {"thm321", 2}};
  CHECK(bound_tags().size() == expected.size());
  for (const auto& tag : bound_tags()) {
    CAPTURE(tag);
    REQUIRE(expected.count(tag) == 1);
    CHECK(bound_calculator(tag, canonical_inputs(tag)) == expected.at(tag));
  }
}

TEST_CASE("bound calculator off the canonical point") {
  // 2 * 1.5 * max{1 + 8/(0.8*0.5) * 1.2*1.1, 1 + 6*2/(0.8*0.125)} = 3 * 121
  CHECK(bound_calculator("thm314_i", {{"C", 2}, {"M", 1.5}, {"s", 0.5}, {"t", 0.8}, {"lambda", 1.2},
                                      {"lambda_prime", 1.1}}) == doctest::Approx(363).epsilon(1e-14));
  // 3 * 1/0.5 * (1 + 2*0.5) * 2 * max{0.5, 1}
  CHECK(bound_calculator("prop39_C1", {{"C", 1}, {"s", 0.5}, {"lambda", 2}, {"lambda_prime", 0.5},
                                       {"inf_w_inv", 0.25}}) == doctest::Approx(24).epsilon(1e-14));
  CHECK(bound_calculator("remark37", {{"kappa", 2}, {"C", 1.5}}) == 9);
  // K = 1.5 * max{3, 2}, then (1 + 4.5/0.5) * 2.5
  CHECK(bound_calculator("thm53_qg", {{"C", 1.5}, {"s", 1}, {"t", 0.5}, {"lambda", 1}, {"lambda_prime", 2}}) ==
        doctest::Approx(25).epsilon(1e-14));
  CHECK(bound_calculator("prop611_iii", {{"Lch_m_minus_1", 0}, {"M", 3}, {"s", 1}, {"lambda", 2}, {"lambda_prime", 2}}) ==
        4);
}

TEST_CASE("bound calculator errors and purity") {
  CHECK_THROWS_AS(bound_calculator("thm53_K", {{"C", 1}, {"s", 1}, {"lambda", 1}}), ContractError);
  CHECK_THROWS_AS(bound_calculator("nope", {}), ContractError);
  CHECK_THROWS_AS(bound_calculator("remark37", {{"kappa", 1}, {"C", -1}}), ContractError);
  CHECK_THROWS_AS(bound_calculator("thm315_i", {{"C", 1}, {"M", 1}, {"s", 1.5}, {"t", 1}}), ContractError);
  CHECK_THROWS_AS(bound_calculator("remark37", {{"kappa", 1}, {"C", 1}, {"bogus", 1}}), ContractError);
  std::map<std::string, double> in = {{"C", 1.3}, {"M", 2.7}, {"s", 0.3}, {"t", 0.7}};
  double a = bound_calculator("thm315_i", in), b = bound_calculator("thm315_i", in);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("estimates are reproduced by their witnesses") {
  std::vector<SpacePreset> spaces = {build_xp(2, Weight::formula_w1()), build_example_72()};
  IndexSet pool = range_set(1, 10);
  for (const auto& sp : spaces) {
    for (const auto& kind : parameter_kinds()) {
      CAPTURE(sp.name);
      CAPTURE(kind);
      double t = kind == "L_ch_u" || kind == "L_ch_l" ? 1.0 : 0.5;
      ParameterEstimate e = estimate_parameter(sp.spec, kind, 2, t, budget(60), pool);
      CHECK(e.spec_hash == spec_hash(sp.spec));
      if (e.witnesses.empty()) {
        CHECK(e.lower_bound == 0);
        continue;
      }
      double v = evaluate_witness(sp.spec, kind, 2, e.t_or_s, e.witnesses[0]);
      CHECK(rel(v, e.lower_bound) <= 1e-9);
      // The JSON record carries everything needed to re-check it.
      ParameterEstimate back = estimate_from_json(Json::parse(estimate_to_json(e).dump()));
      CHECK(back.lower_bound == e.lower_bound);
      CHECK(rel(evaluate_witness(sp.spec, kind, 2, back.t_or_s, back.witnesses[0]), e.lower_bound) <= 1e-9);
    }
  }
}

TEST_CASE("estimator contract") {
  NormSpec l2 = NormSpec::weighted_lp(2, Weight::constant(1));
  CHECK_THROWS_AS(estimate_parameter(l2, "nope", 2, 1, budget(5), range_set(1, 5)), ContractError);
  CHECK_THROWS_AS(estimate_parameter(l2, "g_bar", 2, 0, budget(5), range_set(1, 5)), ContractError);
  // Budget zero leaves only the structural witness.
  for (const char* kind : {"g_bar", "L_a", "L", "trunc_qg", "succ", "k_m", "squeeze", "prop_C", "L_ch_u"}) {
    CAPTURE(kind);
    ParameterEstimate e = estimate_parameter(build_example_72().spec, kind, 2, 1, budget(0), range_set(1, 6));
    CHECK(e.lower_bound == 1);
    REQUIRE(e.witnesses.size() == 1);
    CHECK(evaluate_witness(build_example_72().spec, kind, 2, 1, e.witnesses[0]) == 1);
  }
  // A witness that breaks the kind's constraints is rejected.
  Witness w{SparseVector::from_dense({3, 1, 2}), {2}, {}, {}, {}, {}, 0};
  CHECK_THROWS_AS(evaluate_witness(l2, "g_bar", 1, 1, w), ContractError);
  w.a = {1};
  CHECK(evaluate_witness(l2, "g_bar", 1, 1, w) == doctest::Approx(3 / std::sqrt(14.0)));
}

TEST_CASE("estimates are deterministic and monotone in the budget") {
  NormSpec spec = build_example_72().spec;
  IndexSet pool = range_set(1, 12);
  for (const char* kind : {"g_bar", "trunc_qg", "L_a", "squeeze", "k_m"}) {
    CAPTURE(kind);
    double prev = 0;
    for (std::size_t n : {10, 40, 120}) {
      ParameterEstimate e = estimate_parameter(spec, kind, 3, 1, budget(n), pool);
      CHECK(e.lower_bound >= prev);
      prev = e.lower_bound;
      ParameterEstimate again = estimate_parameter(spec, kind, 3, 1, budget(n), pool);
      CHECK(estimate_to_json(e).dump() == estimate_to_json(again).dump());
    }
  }
  // The family itself only grows.
  auto small = candidate_family(budget(30), pool, 3, 1), large = candidate_family(budget(90), pool, 3, 1);
  REQUIRE(large.size() == 90);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
}

TEST_CASE("parameter orderings on a shared family") {
  for (const auto& sp : {build_example_72(), build_xp(3, Weight::formula_w1())}) {
    IndexSet pool = range_set(1, 10);
    for (double t : {1.0, 0.5}) {
      CAPTURE(sp.name);
      CAPTURE(t);
      double lad = estimate_parameter(sp.spec, "L_ad", 2, t, budget(45), pool).lower_bound;
      double la = estimate_parameter(sp.spec, "L_a", 2, t, budget(45), pool).lower_bound;
      double ld = estimate_parameter(sp.spec, "L_d", 2, t, budget(45), pool).lower_bound;
      double l = estimate_parameter(sp.spec, "L", 2, t, budget(45), pool).lower_bound;
      CHECK(lad <= std::min(la, ld));
      CHECK(la <= l);
    }
    // Property (C) from truncation quasi-greediness, both on one family.
    for (std::size_t m : {2, 3}) {
      double tq = estimate_parameter(sp.spec, "trunc_qg", m, 1, budget(90), pool).lower_bound;
      double pc = estimate_parameter(sp.spec, "prop_C", m, 1, budget(90), pool).lower_bound;
      CHECK(pc <= bound_calculator("remark37", {{"kappa", 1}, {"C", tq}}) * (1 + 1e-9));
      CHECK(pc >= tq * (1 - 1e-12));
    }
  }
}

TEST_CASE("unconditional space stays at one") {
  for (const auto& w : {Weight::constant(1), Weight::formula_w1()}) {
    NormSpec x2 = build_xp(2, w).spec;
    for (const char* kind : {"g_bar", "g_hat", "trunc_qg", "succ", "k_m", "prop_C"}) {
      CAPTURE(kind);
      for (std::size_t m : {1, 3}) {
        ParameterEstimate e = estimate_parameter(x2, kind, m, 1, budget(120), range_set(1, 12));
        CHECK(e.lower_bound <= 1 + 1e-9);
      }
    }
  }
}

TEST_CASE("democracy profiles") {
  // X_2: |1_{eps,A}| = max{1, w(A)^{1/2}}, so at an attained measure W both
  // sides equal max{1, sqrt W}.
  Weight w = Weight::explicit_list({0.5, 1, 1.5, 0.25}, TailRule::kRepeatLast);
  ProfileOptions o;
  o.pool = range_set(1, 6);
  std::vector<double> ws = {0.25, 0.75, 1.5, 2.5, 3.75};
  DemocracyProfile prof = democracy_profile(build_xp(2, w).spec, w, ws, o);
  CHECK(prof.exhaustive);
  for (const auto& row : prof.rows) {
    CAPTURE(row.budget);
    double expect = std::max(1.0, std::sqrt(row.budget));
    CHECK(row.max_norm == doctest::Approx(expect).epsilon(1e-12));
    CHECK(row.min_norm == doctest::Approx(expect).epsilon(1e-12));
  }

  // ex72: profile values sit in the sandwich.
  SpacePreset ex = build_example_72();
  std::vector<double> targets = {1, 2, 3};
  DemocracyProfile p72 = democracy_profile(ex.spec, ex.weight, targets, {});
  CHECK(p72.exhaustive);
  for (const auto& row : p72.rows) {
    double wa = weight_measure(ex.weight, row.max_set), wb = weight_measure(ex.weight, row.min_set);
    CHECK(row.max_norm >= std::max(1.0, std::sqrt(wa)) - 1e-12);
    CHECK(row.max_norm <= std::max(1.0, 4 * std::sqrt(wa)) + 1e-12);
    CHECK(row.min_norm >= std::max(1.0, std::sqrt(wb)) - 1e-12);
    CHECK(row.min_norm <= std::max(1.0, 4 * std::sqrt(wb)) + 1e-12);
    CHECK(wa <= row.budget);
    CHECK(wb >= row.budget);
  }
  CHECK(p72.superdemocracy_lb >= 1);
  CHECK(p72.superdemocracy_lb <= 4);

  // A single index.
  ProfileOptions one;
  one.pool = {7};
  DemocracyProfile p1 = democracy_profile(ex.spec, ex.weight, {weight_at(ex.weight, 7)}, one);
  CHECK(p1.rows[0].max_norm == norm_eval(ex.spec, SparseVector::unit(7)));
  CHECK(p1.rows[0].min_norm == norm_eval(ex.spec, SparseVector::unit(7)));

  // Sampling mode gives the same kind of record.
  ProfileOptions sampled;
  sampled.pool = range_set(1, 20);
  sampled.samples = 3000;
  DemocracyProfile ps = democracy_profile(ex.spec, ex.weight, targets, sampled);
  CHECK_FALSE(ps.exhaustive);
  CHECK(ps.rows.size() == targets.size());
}

TEST_CASE("property A") {
  Weight w = Weight::constant(1);
  PropertyAOptions o;
  o.samples = 1500;
  ParameterEstimate x2 = check_property_A(build_xp(2, w).spec, w, o);
  REQUIRE_FALSE(x2.witnesses.empty());
  CHECK(rel(evaluate_property_A_witness(build_xp(2, w).spec, w, x2.witnesses[0]), x2.lower_bound) <= 1e-9);
  // |x + 1_{eps,A}| <= |x + 1_{eps',B}| whenever |A| <= |B| in X_2(1).
  CHECK(x2.lower_bound <= 1 + 1e-9);

  SpacePreset ex = build_example_72();
  ParameterEstimate e72 = check_property_A(ex.spec, ex.weight, o);
  CHECK(std::isfinite(e72.lower_bound));
  CHECK(e72.lower_bound >= 1);
  CHECK(rel(evaluate_property_A_witness(ex.spec, ex.weight, e72.witnesses[0]), e72.lower_bound) <= 1e-9);

  Witness bad{SparseVector::unit(1), {1}, {2}, {}, {1}, {1}, 0};
  CHECK_THROWS_AS(evaluate_property_A_witness(ex.spec, ex.weight, bad), ContractError);
  // Empty A: the ratio |x| / |x + 1_B| is at most 1 in X_2.
  Witness empty_a{SparseVector::from_dense({0.5, 0, 0}), {}, {2, 3}, {}, {}, {1, -1}, 0};
  CHECK(evaluate_property_A_witness(build_xp(2, w).spec, w, empty_a) <= 1);
}

TEST_CASE("bidemocracy") {
  BidemocracyResult sup = bidemocracy_lb(NormSpec::sup(), 2, 4);
  CHECK(sup.primal_norm == 1);
  CHECK(sup.dual_norm == doctest::Approx(2).epsilon(1e-6));
  CHECK(sup.value == doctest::Approx(1).epsilon(1e-6));
  BidemocracyResult one = bidemocracy_lb(build_example_72().spec, 1, 6);
  CHECK(one.value >= 1 - 1e-6);
  // l2: |1_A| |1_B|_* = m exactly.
  BidemocracyResult l2 = bidemocracy_lb(NormSpec::weighted_lp(2, Weight::constant(1)), 3, 8);
  CHECK(l2.value == doctest::Approx(1).epsilon(1e-4));
  CHECK_THROWS_AS(bidemocracy_lb(NormSpec::sup(), 2, 65), ContractError);
}
