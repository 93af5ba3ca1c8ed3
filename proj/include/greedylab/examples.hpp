#ifndef GREEDYLAB_EXAMPLES_HPP_
#define GREEDYLAB_EXAMPLES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "greedylab/enclosure.hpp"
#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"
#include "greedylab/spec_json.hpp"
#include "greedylab/weight.hpp"

namespace greedylab {

struct SpacePreset {
  std::string name;
  NormSpec spec;
  Weight weight;
  Json metadata;
};

Json preset_to_json(const SpacePreset& p);

// max{sup, (sum w_n |a_n|^p)^{1/p}}, p > 1.
SpacePreset build_xp(double p, const Weight& w);

// max{l2 weighted by w1, sup_k |sum_{n<=k} n^{-3/4} a_n|, sup} with w1.
SpacePreset build_example_72();

struct Ex72Pair {
  SparseVector y;  // sum_{n<=m} n^{-1/4} log^{-1}(n+1) e_n
  SparseVector z;  // same with sign (-1)^n
};
Ex72Pair example72_witnesses(std::size_t m);
// |y_m| / |z_m| in the ex72 norm.
double example72_ratio(std::size_t m);

// ---- interval family ----

struct IntervalFamily {
  std::vector<Interval> intervals;
  std::vector<Enclosure> sums;  // sum over A_m of 1/(n log(n+1))
  std::vector<double> targets;
};

// A_1 starts at 2, each later interval right after the previous one; each
// endpoint is the smallest found whose certified sum exceeds its target.
// CapacityError when an endpoint would pass kMaxIndex.
IntervalFamily build_intervals_74(std::size_t count, std::vector<double> targets = {1.2, 1.6, 2.0});

// max{l2 weighted by w1, sup_m |sum_{n in A_m} n^{-3/4} a_n|, sup} with w1.
SpacePreset build_example_74(const IntervalFamily& fam);

// Terms shorter than this are enumerated; longer ones stay symbolic.
inline constexpr Index kExplicitTermLimit = 1000000;

struct Certificate {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
  std::string note;
};

struct Ex74Witness {
  std::size_t m = 0;  // 1-based position in the family
  Interval range{0, 0};
  bool explicit_form = false;
  SparseVector z;      // empty in symbolic form
  Index split = 0;     // j_m: number of leading + signs
  Enclosure total;     // S_m
  Enclosure head;      // sum over E_m
  Enclosure tail;      // sum over A_m \ E_m
  Enclosure z_norm;    // |z_m|
  Enclosure pe_norm;   // |P_{E_m}(z_m)|
  std::vector<Certificate> certs;
  bool all_pass() const;
  // |P_E z| / |z|, as an enclosure.
  Enclosure qg_ratio() const;
};

Ex74Witness example74_zm(const IntervalFamily& fam, std::size_t m);

struct Rearrangement {
  std::vector<std::size_t> order;  // order[k] = term placed at position k
  double achieved_bound = 0;       // max |prefix sum|
};
Rearrangement rearrange_prefix_balanced(const std::vector<double>& terms);

// ex74 space reordered per interval by the balanced rearrangement of
// z_m (explicit intervals only; symbolic ones keep the identity), then
// wrapped in the Schauder majorant. Metadata records each achieved bound.
SpacePreset build_example_76(const IntervalFamily& fam);

SpacePreset schauder_majorant(const SpacePreset& p);
SpacePreset direct_sum(const SpacePreset& left, const SpacePreset& right);

enum class Cor78Variant { kAlmostGreedy, kSemiNotQgSchauder, kSemiNotSchauder };
Cor78Variant parse_cor78_variant(const std::string& s);
std::string cor78_variant_name(Cor78Variant v);
SpacePreset build_corollary_78(Cor78Variant v, double p, const Weight& w_c0);

// Presets by name: "xp" (p = 2, w1), "ex72", "ex74", "ex76", "sum"
// (X_2(w1) with ex72), "cor78:<variant>".
SpacePreset preset_by_name(const std::string& name);

// ---- verification suites ----

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t violations = 0;
  double worst = 0;  // worst observed value of the checked quantity
  double limit = 0;
  std::string detail;
  bool pass() const { return violations == 0 && cases > 0; }
};

// | |1_{eps,A}| - max{1, w(A)^{1/p}} | / max{1, w(A)^{1/p}} over exhaustive A
// in {1..n_small} with all signs and random A in {1..max_index}.
SuiteResult verify_xp_exactness(double p, const Weight& w, std::size_t n_small = 10, std::size_t samples = 1000,
                                Index max_index = 10000, std::uint64_t seed = 1);

// sum_A n^{-3/4} / (sum_A n^{-1/2} log(n+1))^{1/2} <= 4.
SuiteResult verify_lemma71(std::size_t n_small = 12, std::size_t samples = 10000, Index max_index = 100000,
                           std::uint64_t seed = 1);

// max{1, w1(A)^{1/2}} <= |1_{eps,A}| <= max{1, 4 w1(A)^{1/2}}.
SuiteResult verify_ex72_sandwich(std::size_t max_size = 8, Index n = 20, double tol = 1e-10);

// |P_A x| <= 6 |x| + tol over greedy A with |A| <= max_m.
SuiteResult verify_ex72_quasi_greedy(std::size_t candidates = 10000, std::size_t max_m = 8, std::uint64_t seed = 1,
                                     double tol = 1e-9);

// r(m) strictly increasing along ms.
SuiteResult verify_ex72_conditionality(const std::vector<std::size_t>& ms = {100, 10000, 1000000});

// All certificates of every z_m of the family.
SuiteResult verify_ex74_certificates(const IntervalFamily& fam);
// |z_m| / |P_{E_m} z_m| decreasing in m (compared on enclosures).
SuiteResult verify_ex74_trend(const IntervalFamily& fam);

// Majorant bound, unit norms and the interleaved-sum identity over
// exhaustive |A| <= max_size in {1..n}.
SuiteResult verify_lemma75(const SpacePreset& base, std::size_t max_size = 8, Index n = 10, double tol = 1e-12);
SuiteResult verify_lemma77(const SpacePreset& left, const SpacePreset& right, std::size_t max_size = 8, Index n = 12,
                           double tol = 1e-12);

}  // namespace greedylab

#endif  // GREEDYLAB_EXAMPLES_HPP_
