#include "greedylab/enclosure.hpp"

#include <cfloat>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>

#include "json.hpp"

namespace greedylab {

namespace {

long double ld(Index n) { return index_to_real(n); }

// Antiderivatives bracketing int f: lower_F'(x) <= f(x) <= upper_F'(x).
long double lower_antiderivative(SeriesRule r, long double x) {
  switch (r) {
    case SeriesRule::kInvNLog:  // 1/((x+1) log(x+1)) <= f
      return std::log(std::log1p(x));
    case SeriesRule::kW1:
      return 2 * std::sqrt(x) * std::log1p(x) - 4 * std::sqrt(x) + 4 * std::atan(std::sqrt(x));
    case SeriesRule::kPow34:
      return 4 * std::pow(x, 0.25L);
  }
  return 0;
}

long double upper_antiderivative(SeriesRule r, long double x) {
  switch (r) {
    case SeriesRule::kInvNLog:  // f <= 1/(x log x), x >= 2
      return std::log(std::log(x));
    default:
      return lower_antiderivative(r, x);
  }
}

double round_down(long double v) {
  double d = static_cast<double>(v);
  return static_cast<long double>(d) > v ? std::nextafter(d, -INFINITY) : d;
}

double round_up(long double v) {
  double d = static_cast<double>(v);
  return static_cast<long double>(d) < v ? std::nextafter(d, INFINITY) : d;
}

struct Cache {
  std::mutex mu;
  std::string path;
  std::map<std::string, Enclosure> entries;
  bool dirty = false;
};

Cache& cache() {
  static Cache c;
  return c;
}

std::string cache_key(SeriesRule r, Index a, Index b) {
  return series_rule_name(r) + ":" + index_to_string(a) + ":" + index_to_string(b);
}

Enclosure sandwich(SeriesRule rule, Index a, Index b);

Enclosure compute(SeriesRule rule, Index a, Index b) {
  if (b - a < kDirectSumLimit) {
    // Neumaier summation, smallest terms first.
    long double s = 0, comp = 0;
    for (Index n = b;; --n) {
      long double t = series_term(rule, n);
      long double u = s + t;
      comp += std::abs(s) >= std::abs(t) ? (s - u) + t : (t - u) + s;
      s = u;
      if (n == a) break;
    }
    double v = static_cast<double>(s + comp);
    return {v, v};
  }
  return sandwich(rule, a, b);
}

Enclosure sandwich(SeriesRule rule, Index a, Index b) {
  if (rule == SeriesRule::kInvNLog && a == 1) {
    if (b == 1) {
      long double f1 = series_term(rule, 1);
      return {round_down(f1), round_up(f1)};
    }
    Enclosure rest = sandwich(rule, 2, b);
    long double f1 = series_term(rule, 1);
    return {round_down(f1 + rest.lo), round_up(f1 + rest.hi)};
  }
  long double xa = ld(a), xb = ld(b);
  long double lo_hi = lower_antiderivative(rule, xb + 1), lo_lo = lower_antiderivative(rule, xa);
  long double up_hi = upper_antiderivative(rule, xb), up_lo = upper_antiderivative(rule, xa);
  long double lo = lo_hi - lo_lo;
  long double hi = series_term(rule, a) + (up_hi - up_lo);
  long double pad_lo = 64 * LDBL_EPSILON * (std::abs(lo_hi) + std::abs(lo_lo) + 1);
  long double pad_hi = 64 * LDBL_EPSILON * (std::abs(up_hi) + std::abs(up_lo) + 1);
  return {round_down(lo - pad_lo), round_up(hi + pad_hi)};
}

}  // namespace

std::string series_rule_name(SeriesRule r) {
  switch (r) {
    case SeriesRule::kInvNLog: return "inv_n_log";
    case SeriesRule::kW1: return "w1";
    case SeriesRule::kPow34: return "pow_3_4";
  }
  return "?";
}

SeriesRule parse_series_rule(const std::string& name) {
  for (SeriesRule r : {SeriesRule::kInvNLog, SeriesRule::kW1, SeriesRule::kPow34})
    if (series_rule_name(r) == name) return r;
  throw ContractError("unknown series rule: " + name);
}

long double series_term(SeriesRule r, Index n) {
  long double x = ld(n);
  switch (r) {
    case SeriesRule::kInvNLog: return 1 / (x * std::log1p(x));
    case SeriesRule::kW1: return std::log1p(x) / std::sqrt(x);
    case SeriesRule::kPow34: return std::pow(x, -0.75L);
  }
  return 0;
}

Index series_decreasing_from(SeriesRule r) { return r == SeriesRule::kW1 ? 4 : 1; }

Enclosure interval_sum_certified(SeriesRule rule, Index a, Index b) {
  if (a == 0 || a > b) throw ContractError("interval sum needs 1 <= a <= b");
  if (a < series_decreasing_from(rule))
    throw ContractError("rule " + series_rule_name(rule) + " is not decreasing on the requested range");
  Cache& c = cache();
  std::optional<std::string> key;
  {
    std::lock_guard<std::mutex> lock(c.mu);
    if (!c.path.empty()) {
      key = cache_key(rule, a, b);
      auto it = c.entries.find(*key);
      if (it != c.entries.end()) return it->second;
    }
  }
  Enclosure e = compute(rule, a, b);
  if (key) {
    std::lock_guard<std::mutex> lock(c.mu);
    c.entries[*key] = e;
    c.dirty = true;
  }
  return e;
}

Enclosure interval_sum_sandwich(SeriesRule rule, Index a, Index b) {
  if (a == 0 || a > b) throw ContractError("interval sum needs 1 <= a <= b");
  if (a < series_decreasing_from(rule))
    throw ContractError("rule " + series_rule_name(rule) + " is not decreasing on the requested range");
  return sandwich(rule, a, b);
}

void enable_enclosure_cache(const std::string& path) {
  Cache& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.path = path;
  c.entries.clear();
  std::ifstream in(path);
  if (!in) return;
  try {
    auto j = nlohmann::json::parse(in);
    for (auto& [k, v] : j.items())
      c.entries[k] = {parse_real(v.at(0).get<std::string>()), parse_real(v.at(1).get<std::string>())};
  } catch (const std::exception&) {
    c.entries.clear();  // unreadable cache is ignored and rewritten
  }
}

void flush_enclosure_cache() {
  Cache& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.path.empty() || !c.dirty) return;
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, e] : c.entries) j[k] = {format_real(e.lo), format_real(e.hi)};
  std::ofstream out(c.path);
  out << j.dump(1) << "\n";
  c.dirty = false;
}

}  // namespace greedylab
