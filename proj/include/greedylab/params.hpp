#ifndef GREEDYLAB_PARAMS_HPP_
#define GREEDYLAB_PARAMS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"
#include "greedylab/spec_json.hpp"
#include "greedylab/weight.hpp"

namespace greedylab {

// Which fields are meaningful depends on the kind:
//   x, a        g_bar g_hat k_m trunc_qg
//   x, a, eps   prop_C (signs on a)
//   x, a, b, eps  squeeze (signs on b)
//   x, a, b     L_a L_ad succ (x is the sign indicator on a for succ)
//   x, a, y     L_ch_u L_ch_l L L_d (y realizes the denominator)
//   x, a, b, eps, eps_b  property_A (x is the base vector)
struct Witness {
  SparseVector x;
  IndexSet a;
  IndexSet b;
  SparseVector y;
  std::vector<int> eps;
  std::vector<int> eps_b;
  double value = 0;
};

struct EstimatorBudget {
  std::size_t candidates = 200;
  std::uint64_t seed = 1;
  std::size_t max_sets = 256;  // greedy sets examined per candidate and size
};

struct ParameterEstimate {
  std::string kind;
  std::size_t m = 0;
  double t_or_s = 1;
  double lower_bound = 0;
  std::vector<Witness> witnesses;  // the first one realizes lower_bound
  EstimatorBudget budget;
  IndexSet pool;
  std::string spec_hash;
  std::size_t evaluated = 0;  // candidates examined, including supplied ones
  std::string note;
};

const std::vector<std::string>& parameter_kinds();
// False for kinds whose definition has no threshold t (t_or_s is then 1).
bool parameter_uses_t(const std::string& kind);

// Sound lower bound on the named parameter, maximized over a seeded
// candidate family (random decay vectors, perturbations of greedy
// projections, small grid vectors) plus the supplied extra vectors.
ParameterEstimate estimate_parameter(const NormSpec& spec, const std::string& kind, std::size_t m, double t,
                                     const EstimatorBudget& budget, const IndexSet& pool,
                                     const std::vector<SparseVector>& extra = {});

// Recomputes the defining ratio of a witness from scratch. Throws
// ContractError when the witness does not satisfy the kind's constraints.
double evaluate_witness(const NormSpec& spec, const std::string& kind, std::size_t m, double t, const Witness& w);

// Candidate vectors used by estimate_parameter, in evaluation order.
std::vector<SparseVector> candidate_family(const EstimatorBudget& budget, const IndexSet& pool, std::size_t m,
                                           double t);

Json estimate_to_json(const ParameterEstimate& e);
ParameterEstimate estimate_from_json(const Json& j);

// ---- democracy-type profiles ----

struct ProfileOptions {
  IndexSet pool;  // default {1..12}
  std::size_t exhaustive_limit = 600000;  // (set, sign) pairs before sampling
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  bool signs = true;  // false: democracy variant with eps = 1
};

struct ProfileRow {
  double budget = 0;
  double min_norm = 0;  // over w(A) >= budget
  double max_norm = 0;  // over w(A) <= budget
  double ratio = 0;     // max_norm / min_norm
  IndexSet min_set, max_set;
  std::vector<int> min_eps, max_eps;
};

struct DemocracyProfile {
  std::vector<ProfileRow> rows;
  double superdemocracy_lb = 0;  // max ratio over rows
  bool exhaustive = false;
};

DemocracyProfile democracy_profile(const NormSpec& spec, const Weight& w, const std::vector<double>& measures,
                                   const ProfileOptions& opts = {});

struct PropertyAOptions {
  IndexSet pool;  // default {1..10}
  std::size_t samples = 4000;
  std::uint64_t seed = 1;
};

// Lower bound for the least C with |x + 1_{eps,A}| <= C |x + 1_{eps',B}|
// over |x|_inf <= 1, w(A) <= w(B), A, B, supp(x) pairwise disjoint.
ParameterEstimate check_property_A(const NormSpec& spec, const Weight& w, const PropertyAOptions& opts = {});
double evaluate_property_A_witness(const NormSpec& spec, const Weight& w, const Witness& wit);

struct BidemocracyResult {
  double value = 0;
  double primal_norm = 0;  // |1_A|
  double dual_norm = 0;    // achieved |1_B|_*
  IndexSet a, b;
  bool converged = true;
};

BidemocracyResult bidemocracy_lb(const NormSpec& spec, std::size_t m, Index n_dim, std::size_t dual_samples = 8,
                                 std::uint64_t seed = 1);

// ---- closed-form constants ----

const std::vector<std::string>& bound_tags();
const std::vector<std::string>& bound_inputs(const std::string& tag);
double bound_calculator(const std::string& tag, const std::map<std::string, double>& inputs);

}  // namespace greedylab

#endif  // GREEDYLAB_PARAMS_HPP_
