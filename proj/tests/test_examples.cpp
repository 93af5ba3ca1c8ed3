#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "greedylab/examples.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"
#include "oracles.hpp"

using namespace greedylab;

namespace {

IndexSet range_set(Index lo, Index hi) {
  IndexSet s;
  for (Index i = lo; i <= hi; ++i) s.push_back(i);
  return s;
}

long double w1(long double n) { return std::log1p(n) / std::sqrt(n); }

// |y_m| / |z_m| straight from the three pieces of the norm.
double ratio_oracle(std::size_t m) {
  long double l2 = 0, py = 0, pz = 0, best_z = 0, sup = 0;
  for (std::size_t n = 1; n <= m; ++n) {
    long double x = static_cast<long double>(n);
    long double c = std::pow(x, -0.25L) / std::log1p(x);
    l2 += w1(x) * c * c;
    py += std::pow(x, -0.75L) * c;
    pz += (n % 2 ? -1 : 1) * std::pow(x, -0.75L) * c;
    best_z = std::max(best_z, std::abs(pz));
    sup = std::max(sup, c);
  }
  long double ny = std::max({std::sqrt(l2), py, sup});
  long double nz = std::max({std::sqrt(l2), best_z, sup});
  return static_cast<double>(ny / nz);
}

long double inv_nlog_sum(Index lo, Index hi) {
  long double s = 0;
  for (Index n = lo; n <= hi; ++n) {
    long double x = index_to_real(n);
    s += 1 / (x * std::log1p(x));
  }
  return s;
}

}  // namespace

TEST_CASE("weighted lp presets") {
  SpacePreset flat = build_xp(2, Weight::constant(1));
  CHECK(norm_eval(flat.spec, SparseVector::indicator(range_set(1, 9))) == doctest::Approx(3).epsilon(1e-15));
  CHECK(norm_eval(flat.spec, SparseVector::unit(5)) == 1);
  SpacePreset x3 = build_xp(3, Weight::formula_w1());
  double expect = std::cbrt(static_cast<double>(w1(1) + w1(2)));
  CHECK(norm_eval(x3.spec, SparseVector::indicator({1, 2}, {1, -1})) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(1.13703).epsilon(1e-5));
  CHECK_THROWS_AS(build_xp(1, Weight::constant(1)), ContractError);
  CHECK(preset_to_json(x3)["name"].is_string());
}

TEST_CASE("ex72 space") {
  SpacePreset ex = build_example_72();
  for (Index n = 1; n <= 100; ++n) CHECK(norm_eval(ex.spec, SparseVector::unit(n)) == doctest::Approx(1).epsilon(1e-15));
  double d = norm_eval(ex.spec, SparseVector::from_dense({1, -1}));
  CHECK(d == doctest::Approx(std::sqrt(static_cast<double>(w1(1) + w1(2)))).epsilon(1e-14));
  CHECK(d >= 1.2124);

  // Dense reference on short vectors.
  std::vector<double> v = {0.3, -1.2, 0.8, 0.1, -0.5, 2.0, -0.7};
  CHECK(norm_eval(ex.spec, SparseVector::from_dense(v)) ==
        doctest::Approx(testing::dense_norm(ex.spec.node(), v)).epsilon(1e-13));
}

TEST_CASE("ex72 witnesses and conditionality ratio") {
  Ex72Pair p = example72_witnesses(50);
  REQUIRE(p.y.size() == 50);
  CHECK(p.y.at(1) == doctest::Approx(1 / std::log(2.0)).epsilon(1e-15));
  CHECK(p.z.at(1) == doctest::Approx(-1 / std::log(2.0)).epsilon(1e-15));
  CHECK(p.z.at(2) == p.y.at(2));

  // The prefix piece of y_m is the full sum of 1/(n log(n+1)).
  double s = static_cast<double>(inv_nlog_sum(1, 50));
  CHECK(norm_eval(build_example_72().spec, p.y) == doctest::Approx(std::max(s, std::sqrt(s))).epsilon(1e-13));

  for (std::size_t m : {1, 2, 10, 100, 2000}) {
    CAPTURE(m);
    CHECK(example72_ratio(m) == doctest::Approx(ratio_oracle(m)).epsilon(1e-12));
  }
  CHECK(example72_ratio(100) == doctest::Approx(1.836).epsilon(1e-3));
  CHECK(example72_ratio(10000) == doctest::Approx(2.015).epsilon(1e-3));
}

TEST_CASE("interval family") {
  IntervalFamily fam = build_intervals_74(2);
  REQUIRE(fam.intervals.size() == 2);
  CHECK(fam.intervals[0].lo == 2);
  CHECK(fam.intervals[0].hi == 9);
  CHECK(fam.intervals[1].lo == 10);
  CHECK(fam.intervals[1].hi == 79355);
  for (std::size_t k = 0; k < fam.intervals.size(); ++k) {
    CAPTURE(k);
    const Interval& iv = fam.intervals[k];
    if (k > 0) CHECK(iv.lo == fam.intervals[k - 1].hi + 1);
    // Smallest endpoint past the target.
    CHECK(inv_nlog_sum(iv.lo, iv.hi) > fam.targets[k]);
    CHECK(inv_nlog_sum(iv.lo, iv.hi - 1) <= fam.targets[k]);
    CHECK(fam.sums[k].lo > fam.targets[k]);
  }
  CHECK(build_intervals_74(1, {}).intervals[0].hi == 9);
  CHECK_THROWS_AS(build_intervals_74(1, {-1}), ContractError);
  CHECK_THROWS_AS(build_intervals_74(4, {1.2, 1.6, 2.0, 100}), CapacityError);

  IntervalFamily three = build_intervals_74(3);
  CHECK(three.intervals[2].lo == 79356);
  CHECK(three.sums[2].lo > 2.0);
  CHECK(three.sums[2].width() < 1e-5);
}

TEST_CASE("ex74 first witness") {
  IntervalFamily fam = build_intervals_74(2);
  Ex74Witness w = example74_zm(fam, 1);
  CHECK(w.explicit_form);
  CHECK(w.z.size() == 8);
  CHECK(w.all_pass());
  for (const auto& c : w.certs) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  // The split is the least j where the tail no longer exceeds the head.
  long double head = inv_nlog_sum(2, 1 + w.split), tail = inv_nlog_sum(2 + w.split, 9);
  CHECK(tail <= head);
  CHECK(inv_nlog_sum(w.split + 1, 9) > inv_nlog_sum(2, w.split));
  CHECK(w.z_norm.lo <= w.z_norm.hi);
  CHECK(norm_eval(build_example_74(fam).spec, w.z) == doctest::Approx(w.z_norm.lo).epsilon(1e-12));
  CHECK(w.qg_ratio().hi < 1);
  CHECK_THROWS_AS(example74_zm(fam, 3), ContractError);
}

TEST_CASE("balanced rearrangement") {
  Rearrangement r = rearrange_prefix_balanced({0.5, -0.4, 0.3, -0.3});
  CHECK(r.achieved_bound <= 0.5);
  std::vector<std::size_t> sorted = r.order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3});

  CHECK(rearrange_prefix_balanced({0.9, -0.8}).achieved_bound == doctest::Approx(0.9));
  Rearrangement pos = rearrange_prefix_balanced({0.1, 0.2, 0.3});
  CHECK(pos.order == std::vector<std::size_t>{0, 1, 2});
  CHECK(pos.achieved_bound == doctest::Approx(0.6));

  // Achieved bound matches the order it reports.
  std::vector<double> t = {0.3, -0.1, 0.25, -0.45, 0.2, -0.2, 0.05};
  Rearrangement q = rearrange_prefix_balanced(t);
  double s = 0, m = 0;
  for (std::size_t i : q.order) m = std::max(m, std::abs(s += t[i]));
  CHECK(q.achieved_bound == doctest::Approx(m).epsilon(1e-15));
  CHECK(q.achieved_bound <= 0.45 + 1e-15);
}

TEST_CASE("majorant and direct sum presets") {
  SpacePreset sum_line{"sum", NormSpec::prefix(CoeffRule::tabulated({1, 1})), Weight::constant(1), Json::object()};
  SpacePreset maj = schauder_majorant(sum_line);
  SparseVector x = SparseVector::from_dense({-1, 2});
  CHECK(norm_eval(sum_line.spec, x) == 1);
  CHECK(norm_eval(maj.spec, x) == 2);

  SpacePreset left{"l2", NormSpec::weighted_lp(2, Weight::constant(1)), Weight::constant(1), Json::object()};
  SpacePreset right{"sup", NormSpec::sup(), Weight::constant(1), Json::object()};
  SpacePreset ds = direct_sum(left, right);
  // Odd coordinates go left, even ones right.
  CHECK(norm_eval(ds.spec, SparseVector::from_dense({3, 1, 4, 2})) == 5);
  CHECK(norm_eval(ds.spec, SparseVector::from_dense({0, 7, 1, -9})) == 9);
}

TEST_CASE("combined construction") {
  Weight wc0 = Weight::formula_w1();
  for (auto v : {Cor78Variant::kAlmostGreedy, Cor78Variant::kSemiNotQgSchauder, Cor78Variant::kSemiNotSchauder}) {
    CAPTURE(cor78_variant_name(v));
    CHECK(parse_cor78_variant(cor78_variant_name(v)) == v);
  }
  SpacePreset c = build_corollary_78(Cor78Variant::kAlmostGreedy, 2, wc0);
  CHECK(weight_at(c.weight, 3) == weight_at(wc0, 2));
  CHECK(weight_at(c.weight, 4) == 1);
  CHECK(norm_eval(c.spec, SparseVector::unit(4)) == 1);
  CHECK_THROWS_AS(build_corollary_78(Cor78Variant::kAlmostGreedy, 2, Weight::constant(1)), ContractError);
  CHECK_THROWS_AS(parse_cor78_variant("other"), ContractError);
  CHECK(preset_by_name("cor78:" + cor78_variant_name(Cor78Variant::kSemiNotSchauder)).name.rfind("cor78:", 0) == 0);
  CHECK_THROWS_AS(preset_by_name("nope"), ContractError);
}

TEST_CASE("verification suites at small sizes") {
  CHECK(verify_xp_exactness(2, Weight::formula_w1(), 6, 50, 1000).pass());
  CHECK(verify_xp_exactness(1.5, Weight::constant(0.5), 6, 50, 1000).pass());
  SuiteResult l71 = verify_lemma71(8, 200, 1000);
  CHECK(l71.pass());
  CHECK(l71.worst <= 4);
  CHECK(verify_ex72_sandwich(3, 10).pass());
  SuiteResult qg = verify_ex72_quasi_greedy(200, 4);
  CHECK(qg.pass());
  CHECK(qg.worst >= 1);
  CHECK(verify_ex72_conditionality({10, 100, 1000}).pass());
  CHECK_FALSE(verify_ex72_conditionality({100, 10}).pass());
  CHECK(verify_lemma75(build_example_72(), 4, 8).pass());
  CHECK(verify_lemma77(build_xp(2, Weight::formula_w1()), build_example_72(), 4, 8).pass());

  IntervalFamily fam = build_intervals_74(2);
  CHECK(verify_ex74_certificates(fam).pass());
  // The trend verdict follows the enclosures of the two ratios.
  Enclosure r1 = example74_zm(fam, 1).qg_ratio(), r2 = example74_zm(fam, 2).qg_ratio();
  bool decreasing = 1 / r2.lo < 1 / r1.hi;
  CHECK(verify_ex74_trend(fam).pass() == decreasing);
}
