#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "greedylab/enclosure.hpp"
#include "greedylab/norm_eval.hpp"
#include "greedylab/spec_json.hpp"
#include "oracles.hpp"

using namespace greedylab;
using namespace greedylab::testing;

namespace {

SparseVector dense(std::vector<double> v) { return SparseVector::from_dense(v); }

NormSpec xp2() { return NormSpec::max_of({NormSpec::sup(), NormSpec::weighted_lp(2, Weight::constant(1))}); }

NormSpec ex72_by_hand() {
  return NormSpec::max_of({NormSpec::weighted_lp(2, Weight::formula_w1()), NormSpec::prefix(CoeffRule::power(0.75)),
                           NormSpec::sup()});
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("weights") {
  CHECK(Weight::formula_w1().at(1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(Weight::constant(1).at(1000000000) == 1);
  Weight u = Weight::explicit_list({1, 2, 3}, TailRule::kRepeatLast);
  Weight v = Weight::constant(7);
  Weight c = Weight::combined(u, v);
  CHECK(c.at(3) == u.at(2));
  CHECK(c.at(4) == v.at(2));
  CHECK(u.at(10) == 3);
  CHECK(Weight::explicit_list({4}, TailRule::kInvSqrtDecay).at(4) == doctest::Approx(2));
  CHECK_THROWS_AS(Weight::formula_w1().at(0), DomainError);
  CHECK_THROWS_AS(Weight::constant(0), ContractError);

  CHECK(weight_measure(Weight::formula_w1(), {}) == 0);
  CHECK(weight_measure(Weight::constant(1), {4, 7, 9}) == 3);
  // log 2 + 2^{-1/2} log 3, evaluated independently.
  CHECK(weight_measure(Weight::formula_w1(), {1, 2}) ==
        doctest::Approx(std::log(2.0) + std::log(3.0) / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("weights tending to zero") {
  CHECK(Weight::formula_w1().tends_to_zero());
  CHECK_FALSE(Weight::constant(2).tends_to_zero());
  CHECK(Weight::explicit_list({1}, TailRule::kInvSqrtDecay).tends_to_zero());
  CHECK_FALSE(Weight::explicit_list({1}, TailRule::kRepeatLast).tends_to_zero());
}

TEST_CASE("sparse vectors") {
  SparseVector x({{3, 0.0}, {1, 2.0}, {2, -1.0}});
  CHECK(x.size() == 2);
  CHECK(x.support() == IndexSet{1, 2});
  CHECK_THROWS_AS(SparseVector({{1, 1.0}, {1, 2.0}}), ContractError);
  CHECK_THROWS_AS(SparseVector({{0, 1.0}}), ContractError);
  CHECK((x - x).empty());
  CHECK((x + SparseVector::unit(2)).at(2) == 0);
  CHECK(x.restrict_to({2, 5}).support() == IndexSet{2});
  Index big = kMaxIndex;
  SparseVector y({{big, 1.5}});
  CHECK(y.at(big) == 1.5);
  CHECK(parse_index(index_to_string(big)) == big);
  CHECK_THROWS_AS(parse_index("170141183460469231731687303715884105728"), CapacityError);
}

TEST_CASE("interval sums") {
  Enclosure e = interval_sum_certified(SeriesRule::kInvNLog, 1, 1);
  CHECK(e.lo == e.hi);
  CHECK(e.lo == doctest::Approx(1.442695).epsilon(1e-6));

  Enclosure p = interval_sum_certified(SeriesRule::kPow34, 1, 16);
  CHECK(p.width() == 0);
  double oracle = 0;
  for (int n = 1; n <= 16; ++n) oracle += std::pow(n, -0.75);
  CHECK(p.lo == doctest::Approx(oracle).epsilon(1e-14));

  // Brute force over 10^7 terms in long double.
  long double brute = 0;
  for (long n = 10000000; n >= 10; --n) brute += 1.0L / (n * std::log1p(static_cast<long double>(n)));
  Enclosure big = interval_sum_certified(SeriesRule::kInvNLog, 10, 10000000);
  CHECK(big.width() > 0);
  CHECK(big.lo <= static_cast<double>(brute));
  CHECK(static_cast<double>(brute) <= big.hi);
  CHECK(big.width() < 0.1);

  CHECK_THROWS_AS(interval_sum_certified(SeriesRule::kW1, 2, 100), ContractError);
  CHECK_THROWS_AS(interval_sum_certified(SeriesRule::kPow34, 5, 4), ContractError);
  CHECK_NOTHROW(interval_sum_certified(SeriesRule::kW1, 4, 100));
}

TEST_CASE("integral sandwich contains the direct sum") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    SeriesRule r = static_cast<SeriesRule>(uniform_int(rng, 0, 2));
    Index a = static_cast<Index>(uniform_int(rng, 4, 5000));
    Index b = a + static_cast<Index>(uniform_int(rng, 0, 20000));
    Enclosure s = interval_sum_sandwich(r, a, b);
    Enclosure d = interval_sum_certified(r, a, b);
    REQUIRE(d.width() == 0);
    CHECK(s.lo <= d.lo);
    CHECK(d.lo <= s.hi);
  }
  // Huge indices stay finite and ordered.
  Enclosure h = interval_sum_certified(SeriesRule::kInvNLog, 100000, kMaxIndex);
  CHECK(h.lo < h.hi);
  CHECK(std::isfinite(h.hi));
}

TEST_CASE("norm evaluation examples") {
  CHECK(norm_eval(NormSpec::sup(), dense({3, -5, 2})) == 5);
  CHECK(norm_eval(xp2(), SparseVector::indicator({1, 2, 3, 4})) == doctest::Approx(2).epsilon(1e-15));
  CHECK(norm_eval(ex72_by_hand(), SparseVector::unit(5)) == 1);
  CHECK(norm_eval(NormSpec::prefix(CoeffRule::power(0.75)), dense({1, -1})) == 1);
  CHECK(norm_eval(xp2(), SparseVector()) == 0);
  // e_1 - e_2 in the diamond part: (w_1 + w_2)^{1/2}.
  CHECK(norm_eval(ex72_by_hand(), dense({1, -1})) == doctest::Approx(1.21244).epsilon(1e-5));
}

TEST_CASE("norm evaluation agrees with the dense oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 600; ++trial) {
    NormSpec s = random_spec(rng);
    SparseVector x = random_vector(rng, 14, 8);
    double lib = norm_eval(s, x);
    double oracle = dense_norm(s, x, 14);
    CHECK(rel_close(lib, oracle, 1e-12));
  }
}

TEST_CASE("homogeneity and triangle inequality") {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    NormSpec s = random_spec(rng);
    SparseVector x = random_vector(rng, 30, 10), y = random_vector(rng, 30, 10);
    double t = uniform(rng, -5, 5);
    CHECK(rel_close(norm_eval(s, x.scaled(t)), std::abs(t) * norm_eval(s, x), 1e-12));
    CHECK(norm_eval(s, x + y) <= norm_eval(s, x) + norm_eval(s, y) + 1e-12);
  }
}

TEST_CASE("MaxOf dominance is exact") {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<NormSpec> ch;
    for (int i = 0; i < 3; ++i) ch.push_back(random_spec(rng, 1));
    SparseVector x = random_vector(rng, 30, 10);
    double m = 0;
    for (const auto& c : ch) m = std::max(m, norm_eval(c, x));
    CHECK(norm_eval(NormSpec::max_of(ch), x) == m);
  }
}

TEST_CASE("majorant fast path matches run enumeration") {
  Rng rng(10);
  for (int trial = 0; trial < 400; ++trial) {
    NormSpec inner = random_spec(rng, 2);
    NormSpec maj = NormSpec::majorant(inner);
    SparseVector x = random_vector(rng, 30, 12);
    double fast = norm_eval(maj, x);
    double serial = majorant_runs_serial(inner, x.entries());
    double par = majorant_runs_parallel(inner, x.entries());
    CHECK(rel_close(fast, serial, 1e-12));
    CHECK(par == serial);
  }
}

TEST_CASE("majorant is monotone under prefixes") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    NormSpec maj = NormSpec::majorant(random_spec(rng, 1));
    SparseVector x = random_vector(rng, 30, 10);
    double full = norm_eval(maj, x);
    IndexSet supp = x.support();
    for (std::size_t k = 0; k < supp.size(); ++k) {
      IndexSet prefix(supp.begin(), supp.begin() + static_cast<std::ptrdiff_t>(k));
      CHECK(norm_eval(maj, x.restrict_to(prefix)) <= full + 1e-12);
    }
  }
}

TEST_CASE("majorant sign-indicator bound over subsets") {
  NormSpec inner = ex72_by_hand();
  NormSpec maj = NormSpec::majorant(inner);
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    IndexSet a;
    for (int i = 1; i <= 12; ++i)
      if (uniform_int(rng, 0, 2) == 0) a.push_back(static_cast<Index>(i));
    if (a.size() > 8) a.resize(8);
    std::vector<int> eps(a.size());
    for (auto& e : eps) e = uniform_int(rng, 0, 1) ? 1 : -1;
    double best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << a.size()); ++mask) {
      IndexSet b;
      std::vector<int> eb;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (mask >> i & 1) b.push_back(a[i]), eb.push_back(eps[i]);
      best = std::max(best, norm_eval(inner, SparseVector::indicator(b, eb)));
    }
    CHECK(norm_eval(maj, SparseVector::indicator(a, eps)) <= best + 1e-12);
  }
}

TEST_CASE("subgradients are norming functionals") {
  Rng rng(14);
  for (int trial = 0; trial < 400; ++trial) {
    NormSpec s = random_spec(rng);
    SparseVector x = random_vector(rng, 20, 8);
    std::vector<Entry> v(x.entries().begin(), x.entries().end());
    // Add explicit zero coordinates.
    for (int extra = 0; extra < 3; ++extra) {
      Index i = static_cast<Index>(uniform_int(rng, 1, 20));
      if (x.at(i) == 0 && std::none_of(v.begin(), v.end(), [&](const Entry& e) { return e.index == i; }))
        v.push_back({i, 0.0});
    }
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    std::vector<double> g(v.size());
    double val = norm_subgradient(s, v, g);
    double phi_v = 0;
    for (std::size_t k = 0; k < v.size(); ++k) phi_v += g[k] * v[k].value;
    CHECK(rel_close(phi_v, val, 1e-11));
    for (int probe = 0; probe < 10; ++probe) {
      std::vector<Entry> u = v;
      double phi_u = 0;
      for (std::size_t k = 0; k < u.size(); ++k) {
        u[k].value = uniform(rng, -2, 2);
        phi_u += g[k] * u[k].value;
      }
      CHECK(std::abs(phi_u) <= norm_eval(s, u) * (1 + 1e-11) + 1e-12);
    }
  }
}

TEST_CASE("coordinate floors are valid") {
  Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    NormSpec s = random_spec(rng);
    SparseVector x = random_vector(rng, 20, 8);
    for (const auto& e : x.entries())
      CHECK(coordinate_floor(s, e.index) * std::abs(e.value) <= norm_eval(s, x) * (1 + 1e-12) + 1e-14);
  }
}

TEST_CASE("dual norm") {
  auto r1 = dual_norm_eval(NormSpec::sup(), SparseVector::indicator({1, 2}), 2);
  CHECK(r1.value == doctest::Approx(2).epsilon(1e-4));
  CHECK(r1.converged);
  auto r2 = dual_norm_eval(NormSpec::weighted_lp(2, Weight::constant(1)), SparseVector::unit(1), 1);
  CHECK(r2.value == doctest::Approx(1).epsilon(1e-4));
  auto r3 = dual_norm_eval(xp2(), SparseVector::indicator({1, 2, 3}), 3);
  double oracle = grid_dual_norm(xp2(), {1, 1, 1});
  CHECK(r3.value == doctest::Approx(oracle).epsilon(1e-4));
  CHECK(r3.value <= r3.upper * (1 + 1e-12));
  CHECK_THROWS_AS(dual_norm_eval(NormSpec::sup(), SparseVector::unit(5), 3), ContractError);
}

TEST_CASE("dual norm dominates feasible points and matches the grid at N <= 3") {
  Rng rng(16);
  for (int trial = 0; trial < 12; ++trial) {
    NormSpec s = random_norm_of_kind(rng, static_cast<NormNode::Kind>(trial % 8));
    std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    std::vector<double> c(n);
    for (auto& v : c) v = uniform(rng, -2, 2);
    auto res = dual_norm_eval(s, SparseVector::from_dense(c), n);
    double oracle = grid_dual_norm(s, c);
    CHECK(res.value <= oracle * (1 + 1e-9) + 1e-12);
    CHECK(res.value >= oracle * (1 - 1e-4));
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<double> a(n);
      for (auto& v : a) v = uniform(rng, -1, 1);
      double nrm = norm_eval(s, SparseVector::from_dense(a));
      if (nrm == 0) continue;
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += a[i] * c[i];
      CHECK(res.value >= std::abs(dot) / nrm * (1 - 1e-9));
    }
  }
}

TEST_CASE("json round trip") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    NormSpec s = random_spec(rng);
    Json doc = norm_document(s);
    NormSpec back = norm_from_document(Json::parse(doc.dump()));
    CHECK(norm_document(back).dump() == doc.dump());
    CHECK(spec_hash(back) == spec_hash(s));
    SparseVector x = random_vector(rng, 30, 8);
    CHECK(norm_eval(back, x) == norm_eval(s, x));
    CHECK(vector_from_json(vector_to_json(x)) == x);
  }
  Json bad = {{"spec_version", 1}, {"norm", {{"node", "max_of"}, {"children", {{{"node", "weighted_lp"}, {"p", "0.5"}, {"weight", {{"kind", "formula_w1"}}}}}}}}};
  try {
    norm_from_document(bad);
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).rfind("/norm/children/0", 0) == 0);
  }
  CHECK_THROWS_AS(norm_from_document(Json{{"spec_version", 2}}), ContractError);
}
