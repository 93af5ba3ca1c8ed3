#ifndef GREEDYLAB_NORM_EVAL_HPP_
#define GREEDYLAB_NORM_EVAL_HPP_

#include <cstdint>
#include <span>

#include "greedylab/norm_spec.hpp"
#include "greedylab/sparse_vector.hpp"

namespace greedylab {

double norm_eval(const NormSpec& spec, const SparseVector& x);
// Entries sorted by index; explicit zeros are allowed.
double norm_eval(const NormSpec& spec, std::span<const Entry> v);

// Evaluates the norm and writes a norming functional phi (phi(v) = |v|,
// dual norm <= 1) restricted to the coordinates of v into grad.
double norm_subgradient(const NormSpec& spec, std::span<const Entry> v, std::span<double> grad);

// nu >= 0 with |a| >= nu * |a_i| for every a. 0 when no bound is known
// (e.g. a lone interval functional, which is only a seminorm).
double coordinate_floor(const NormSpec& spec, Index i);

// Majorant of inner evaluated by enumerating all runs of the support. The
// serial version is the reference for the closed-form fast paths used by
// norm_eval; the parallel one splits the run starts across OpenMP threads.
double majorant_runs_serial(const NormSpec& inner, std::span<const Entry> v);
double majorant_runs_parallel(const NormSpec& inner, std::span<const Entry> v);

struct DualNormOptions {
  int max_iters = 4000;
  int starts = 4;
  std::uint64_t seed = 1;
  double tolerance = 1e-4;  // relative width required to report convergence
};

struct DualNormResult {
  double value = 0;   // achieved by a feasible point; a valid lower bound
  double upper = 0;   // certified upper bound (inf when unavailable)
  bool converged = false;
  SparseVector argmax;  // feasible a with |a| <= 1 realizing value
};

// sup { |sum c_n a_n| : |a| <= 1, supp(a) in [1, N] }, N <= 64.
DualNormResult dual_norm_eval(const NormSpec& spec, const SparseVector& c, Index n_dim,
                              const DualNormOptions& opts = {});

}  // namespace greedylab

#endif  // GREEDYLAB_NORM_EVAL_HPP_
