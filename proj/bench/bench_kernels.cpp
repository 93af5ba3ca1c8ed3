// Serial reference vs OpenMP kernels: wall time and result equality.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "greedylab/examples.hpp"
#include "greedylab/norm_eval.hpp"
#include "greedylab/sigma.hpp"

using namespace greedylab;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

bool same(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

int mismatches = 0;

void row(const std::string& name, double serial, double parallel, bool equal) {
  if (!equal) ++mismatches;
  std::printf("%-34s %10.4f %10.4f %7.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
              equal ? "identical" : "MISMATCH");
}

SparseVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> nd(0, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = nd(rng) / (1 + 0.1 * static_cast<double>(&x - v.data()));
  return SparseVector::from_dense(v);
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, repetitions: %d\n", omp_get_max_threads(), reps);
  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial s", "openmp s", "speedup");
  std::mt19937_64 rng(1);

  const NormSpec ex72 = build_example_72().spec;
  const NormSpec prefix = NormSpec::max_of({NormSpec::sup(), NormSpec::prefix(CoeffRule::power(0.75))});
  for (std::size_t n : {250, 1000}) {
    SparseVector x = random_vector(rng, n);
    double a = 0, b = 0;
    double ts = seconds([&] { a = majorant_runs_serial(prefix, x.entries()); }, reps);
    double tp = seconds([&] { b = majorant_runs_parallel(prefix, x.entries()); }, reps);
    row("majorant runs n=" + std::to_string(n), ts, tp, same(a, b));
  }

  for (std::size_t n : {14, 18}) {
    SparseVector x = random_vector(rng, n);
    SupportSearch s, p;
    SigmaOptions so;
    so.exec = Exec::kSerial;
    SigmaOptions po;
    po.exec = Exec::kParallel;
    IndexSet pool = x.support();
    double ts = seconds([&] { s = sigma_m_search(ex72, x, 3, pool, so); }, reps);
    double tp = seconds([&] { p = sigma_m_search(ex72, x, 3, pool, po); }, reps);
    row("sigma_m ex72 |pool|=" + std::to_string(n) + " m=3", ts, tp, same(s.value, p.value) && s.support == p.support);
  }

  for (std::size_t n : {16, 20}) {
    SparseVector x = random_vector(rng, n);
    SupportSearch s, p;
    double ts = seconds([&] { s = sigma_tilde_search(ex72, x, 4, Exec::kSerial); }, reps);
    double tp = seconds([&] { p = sigma_tilde_search(ex72, x, 4, Exec::kParallel); }, reps);
    row("sigma_tilde ex72 |supp|=" + std::to_string(n) + " m=4", ts, tp, same(s.value, p.value) && s.support == p.support);
  }

  {
    SparseVector x = random_vector(rng, 18);
    const Weight w = Weight::formula_w1();
    SupportSearch s, p;
    double ts = seconds([&] { s = weighted_projection_search(ex72, x, w, 3.0, Exec::kSerial); }, reps);
    double tp = seconds([&] { p = weighted_projection_search(ex72, x, w, 3.0, Exec::kParallel); }, reps);
    row("weighted projection ex72 W=3", ts, tp, same(s.value, p.value) && s.support == p.support);
  }

  std::printf("%d mismatches\n", mismatches);
  return mismatches == 0 ? 0 : 1;
}
