#include "greedylab/report.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "greedylab/norm_eval.hpp"
#include "greedylab/sigma.hpp"

namespace greedylab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ContractError((path.empty() ? "/" : path) + ": " + msg);
}

std::string fmt(double v) { return format_real(v); }
std::string num(std::size_t v) { return std::to_string(v); }

IndexSet first_indices(std::size_t n) {
  IndexSet s;
  for (std::size_t i = 1; i <= n; ++i) s.push_back(i);
  return s;
}

std::uint64_t u64_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!s.empty() && s.size() <= 20 && std::all_of(s.begin(), s.end(), ::isdigit)) {
      try {
        return std::stoull(s);
      } catch (const std::exception&) {
      }
    }
  }
  fail(path, "expected an unsigned integer");
}

std::size_t size_from_json(const Json& j, const std::string& path) {
  std::uint64_t v = u64_from_json(j, path);
  if (v == 0) fail(path, "must be positive");
  return static_cast<std::size_t>(v);
}

// ---- output requests: "<name> [key value]..." ----

struct OutputSpec {
  std::string name;
  std::map<std::string, std::string> args;
};

const std::map<std::string, std::vector<std::string>>& output_keys() {
  static const std::map<std::string, std::vector<std::string>> k = {
      {"params", {}},
      {"democracy_profile", {}},
      {"property_A", {}},
      {"bidemocracy", {"n"}},
      {"bounds", {}},
      {"ex72_ratio", {"m"}},
      {"ex76_rearrangement", {"count"}},
      {"xp_exactness", {"p", "weight", "exhaustive", "samples", "max_index"}},
      {"lemma71", {"exhaustive", "samples", "max_index"}},
      {"ex72_sandwich", {"max_size", "n"}},
      {"ex72_quasi_greedy", {"candidates", "max_m"}},
      {"ex72_conditionality", {"m"}},
      {"ex74_certificates", {"count"}},
      {"ex74_trend", {"count"}},
      {"lemma75", {"base", "max_size", "n"}},
      {"lemma77", {"left", "right", "max_size", "n"}},
  };
  return k;
}

OutputSpec parse_output(const std::string& s, const std::string& path) {
  std::istringstream is(s);
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  if (tok.empty()) fail(path, "empty output request");
  auto it = output_keys().find(tok[0]);
  if (it == output_keys().end()) fail(path, "unknown output '" + tok[0] + "'");
  if (tok.size() % 2 == 0) fail(path, "arguments must come in key value pairs");
  OutputSpec o{tok[0], {}};
  for (std::size_t i = 1; i < tok.size(); i += 2) {
    if (std::find(it->second.begin(), it->second.end(), tok[i]) == it->second.end())
      fail(path, "output '" + tok[0] + "' takes no argument '" + tok[i] + "'");
    o.args[tok[i]] = tok[i + 1];
  }
  return o;
}

std::size_t arg_size(const OutputSpec& o, const std::string& key, std::size_t dflt) {
  auto it = o.args.find(key);
  if (it == o.args.end()) return dflt;
  return size_from_json(Json(it->second), "/" + o.name + "/" + key);
}

Index arg_index(const OutputSpec& o, const std::string& key, Index dflt) {
  auto it = o.args.find(key);
  return it == o.args.end() ? dflt : parse_index(it->second);
}

std::vector<std::size_t> arg_sizes(const OutputSpec& o, const std::string& key, std::vector<std::size_t> dflt) {
  auto it = o.args.find(key);
  if (it == o.args.end()) return dflt;
  std::vector<std::size_t> out;
  std::stringstream ss(it->second);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(size_from_json(Json(part), "/" + o.name + "/" + key));
  return out;
}

// Checks argument values eagerly so bad requests fail as config errors.
void validate_output(const OutputSpec& o, const std::string& path) {
  try {
    for (const auto& [k, v] : o.args) {
      if (k == "p") {
        if (!(parse_real(v) > 1)) fail(path, "p must exceed 1");
      } else if (k == "weight") {
        if (v != "constant" && v != "w1") fail(path, "weight must be 'constant' or 'w1'");
      } else if (k == "base" || k == "left" || k == "right") {
        resolve_space(Json(v), path);
      } else if (k == "m") {
        arg_sizes(o, k, {});
      } else if (k == "max_index" || k == "n") {
        parse_index(v);
      } else {
        arg_size(o, k, 1);
      }
    }
  } catch (const ContractError& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    fail(path, msg);
  }
}

// ---- task results ----

struct SuiteRow {
  std::string args;
  SuiteResult r;
};

struct Partial {
  std::string table;  // empty: no table rows
  std::vector<std::vector<std::string>> rows;
  std::vector<LabeledEstimate> estimates;
  std::vector<SuiteRow> suites;
  std::vector<std::string> errors;
  Json certificates = Json::array();
  bool failed = false;
};

struct TableDef {
  std::vector<std::string> columns;
  std::vector<std::string> descriptions;
};

const std::map<std::string, TableDef>& table_defs() {
  static const std::map<std::string, TableDef> d = {
      {"params",
       {{"space", "kind", "m", "t", "lower_bound", "reevaluated", "evaluated", "note", "error"},
        {"space label", "parameter kind", "m", "threshold t (1 when unused)", "sound lower bound",
         "defining ratio recomputed from the first witness", "candidates examined", "estimator note",
         "error message when the row failed"}}},
      {"democracy_profile",
       {{"W", "min_norm", "max_norm", "ratio"},
        {"measure budget", "min |1_{eps,A}| over w(A) >= W", "max |1_{eps,A}| over w(A) <= W",
         "max_norm / min_norm"}}},
      {"property_A",
       {{"space", "lower_bound", "reevaluated", "evaluated", "error"},
        {"space label", "lower bound for the Property (A) constant", "ratio recomputed from the witness",
         "candidates examined", "error message"}}},
      {"bidemocracy",
       {{"space", "m", "n", "value", "primal_norm", "dual_norm", "converged", "error"},
        {"space label", "set size", "dimension", "|1_A| |1_B|_* / m", "|1_A|", "achieved |1_B|_*",
         "dual solver converged", "error message"}}},
      {"bounds",
       {{"tag", "inputs", "value"},
        {"formula tag", "inputs at the canonical point (all ones)", "closed-form constant"}}},
      {"ex72_ratio", {{"m", "ratio"}, {"m", "|y_m| / |z_m|"}}},
      {"ex76_rearrangement",
       {{"interval", "rearranged", "achieved_bound", "contains_index_1"},
        {"position in the interval family", "interval was reordered",
         "max |prefix sum| after the balanced rearrangement", "interval contains index 1"}}},
      {"ex74_certificates",
       {{"m", "lo", "hi", "form", "split", "certificate", "lhs", "rhs", "pass", "note"},
        {"position in the interval family", "first index", "last index", "explicit or symbolic",
         "number of leading + signs", "certificate name", "checked quantity", "bound", "lhs within bound",
         "certificate note"}}},
      {"suites",
       {{"suite", "args", "cases", "violations", "worst", "limit", "pass", "detail"},
        {"suite name", "arguments", "cases checked", "violations", "worst observed value", "limit",
         "zero violations", "suite detail"}}},
  };
  return d;
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  return out;
}

std::string suite_args(const OutputSpec& o) {
  std::string s;
  for (const auto& [k, v] : o.args) s += (s.empty() ? "" : " ") + k + "=" + v;
  return s;
}

Partial suite_partial(const OutputSpec& o, SuiteResult r) {
  Partial p;
  p.suites.push_back({suite_args(o), std::move(r)});
  p.failed = !p.suites.back().r.pass();
  return p;
}

Weight measure_for(const ExperimentConfig& c, const SpacePreset& sp) { return c.weight ? *c.weight : sp.weight; }

template <class F>
void guarded(Partial& p, const std::string& what, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    p.errors.push_back(what + ": " + e.what());
    p.failed = true;
  }
}

using Task = std::function<Partial()>;

void expand(const ExperimentConfig& c, const OutputSpec& o, std::vector<Task>& tasks) {
  const IndexSet pool = first_indices(c.budget.pool);
  const EstimatorBudget eb{c.budget.candidates, c.seed, c.budget.max_sets};
  const std::string& n = o.name;

  if (n == "params") {
    for (const auto& sp : c.spaces)
      for (const auto& kind : c.kinds)
        for (std::size_t m : c.ms) {
          std::vector<double> ts = parameter_uses_t(kind) ? c.ts : std::vector<double>{1.0};
          for (double t : ts)
            tasks.push_back([&sp, kind, m, t, eb, pool] {
              Partial p;
              p.table = "params";
              std::vector<std::string> row = {sp.name, kind, num(m), fmt(t), "", "", "", "", ""};
              guarded(p, sp.name + " " + kind + " m=" + num(m), [&] {
                ParameterEstimate e = estimate_parameter(sp.spec, kind, m, t, eb, pool);
                double re = e.witnesses.empty() ? e.lower_bound
                                                : evaluate_witness(sp.spec, kind, m, e.t_or_s, e.witnesses[0]);
                row = {sp.name, kind, num(m), fmt(e.t_or_s), fmt(e.lower_bound),
                       e.witnesses.empty() ? "" : fmt(re), num(e.evaluated), e.note, ""};
                p.estimates.push_back({sp.name, std::move(e), re});
              });
              if (!p.errors.empty()) row.back() = p.errors.back();
              p.rows.push_back(std::move(row));
              return p;
            });
        }
  } else if (n == "democracy_profile") {
    for (const auto& sp : c.spaces)
      tasks.push_back([&c, &sp, pool] {
        Partial p;
        p.table = "democracy_profile." + sanitize(sp.name);
        guarded(p, sp.name + " democracy_profile", [&] {
          ProfileOptions po;
          po.pool = pool;
          po.samples = c.budget.profile_samples;
          po.seed = c.seed;
          DemocracyProfile prof = democracy_profile(sp.spec, measure_for(c, sp), c.measures, po);
          for (const auto& r : prof.rows) p.rows.push_back({fmt(r.budget), fmt(r.min_norm), fmt(r.max_norm), fmt(r.ratio)});
        });
        return p;
      });
  } else if (n == "property_A") {
    for (const auto& sp : c.spaces)
      tasks.push_back([&c, &sp] {
        Partial p;
        p.table = "property_A";
        std::vector<std::string> row = {sp.name, "", "", "", ""};
        guarded(p, sp.name + " property_A", [&] {
          PropertyAOptions po;
          po.pool = first_indices(std::min<std::size_t>(c.budget.pool, 10));
          po.samples = c.budget.property_a_samples;
          po.seed = c.seed;
          Weight w = measure_for(c, sp);
          ParameterEstimate e = check_property_A(sp.spec, w, po);
          double re = e.witnesses.empty() ? e.lower_bound : evaluate_property_A_witness(sp.spec, w, e.witnesses[0]);
          row = {sp.name, fmt(e.lower_bound), e.witnesses.empty() ? "" : fmt(re), num(e.evaluated), ""};
          p.estimates.push_back({sp.name, std::move(e), re});
        });
        if (!p.errors.empty()) row.back() = p.errors.back();
        p.rows.push_back(std::move(row));
        return p;
      });
  } else if (n == "bidemocracy") {
    const Index dim = arg_index(o, "n", 8);
    for (const auto& sp : c.spaces)
      for (std::size_t m : c.ms)
        tasks.push_back([&c, &sp, m, dim] {
          Partial p;
          p.table = "bidemocracy";
          std::vector<std::string> row = {sp.name, num(m), index_to_string(dim), "", "", "", "", ""};
          guarded(p, sp.name + " bidemocracy m=" + num(m), [&] {
            BidemocracyResult r = bidemocracy_lb(sp.spec, m, dim, 8, c.seed);
            row = {sp.name, num(m), index_to_string(dim), fmt(r.value), fmt(r.primal_norm), fmt(r.dual_norm),
                   r.converged ? "true" : "false", ""};
          });
          if (!p.errors.empty()) row.back() = p.errors.back();
          p.rows.push_back(std::move(row));
          return p;
        });
  } else if (n == "bounds") {
    tasks.push_back([] {
      Partial p;
      p.table = "bounds";
      for (const auto& tag : bound_tags()) {
        std::map<std::string, double> in;
        std::string desc;
        for (const auto& name : bound_inputs(tag)) {
          in[name] = 1;
          desc += (desc.empty() ? "" : ";") + name + "=1";
        }
        p.rows.push_back({tag, desc, fmt(bound_calculator(tag, in))});
      }
      return p;
    });
  } else if (n == "ex72_ratio") {
    for (std::size_t m : arg_sizes(o, "m", {100, 10000, 1000000}))
      tasks.push_back([m] {
        Partial p;
        p.table = "ex72_ratio";
        p.rows.push_back({num(m), fmt(example72_ratio(m))});
        return p;
      });
  } else if (n == "ex76_rearrangement") {
    const std::size_t count = arg_size(o, "count", 3);
    tasks.push_back([count] {
      Partial p;
      p.table = "ex76_rearrangement";
      guarded(p, "ex76_rearrangement", [&] {
        SpacePreset ex = build_example_76(build_intervals_74(count));
        for (const auto& b : ex.metadata["rearrangement"])
          p.rows.push_back({num(b["interval"].get<std::size_t>()), b["rearranged"].get<bool>() ? "true" : "false",
                            b.contains("achieved_bound") ? b["achieved_bound"].get<std::string>() : "",
                            b.contains("contains_index_1") ? (b["contains_index_1"].get<bool>() ? "true" : "false")
                                                           : ""});
      });
      return p;
    });
  } else if (n == "xp_exactness") {
    std::vector<double> ps = o.args.count("p") ? std::vector<double>{parse_real(o.args.at("p"))}
                                               : std::vector<double>{2, 3};
    std::vector<std::string> ws = o.args.count("weight") ? std::vector<std::string>{o.args.at("weight")}
                                                         : std::vector<std::string>{"constant", "w1"};
    for (double pp : ps)
      for (const auto& wn : ws)
        tasks.push_back([o, pp, wn, seed = c.seed] {
          OutputSpec oo = o;
          oo.args["p"] = fmt(pp);
          oo.args["weight"] = wn;
          Weight w = wn == "w1" ? Weight::formula_w1() : Weight::constant(1);
          return suite_partial(oo, verify_xp_exactness(pp, w, arg_size(o, "exhaustive", 10), arg_size(o, "samples", 1000),
                                                       arg_index(o, "max_index", 10000), seed));
        });
  } else if (n == "lemma71") {
    tasks.push_back([o, seed = c.seed] {
      return suite_partial(o, verify_lemma71(arg_size(o, "exhaustive", 12), arg_size(o, "samples", 10000),
                                             arg_index(o, "max_index", 100000), seed));
    });
  } else if (n == "ex72_sandwich") {
    tasks.push_back([o] { return suite_partial(o, verify_ex72_sandwich(arg_size(o, "max_size", 8), arg_index(o, "n", 20))); });
  } else if (n == "ex72_quasi_greedy") {
    tasks.push_back([o, seed = c.seed] {
      return suite_partial(o, verify_ex72_quasi_greedy(arg_size(o, "candidates", 10000), arg_size(o, "max_m", 8), seed));
    });
  } else if (n == "ex72_conditionality") {
    tasks.push_back([o] { return suite_partial(o, verify_ex72_conditionality(arg_sizes(o, "m", {100, 10000, 1000000}))); });
  } else if (n == "ex74_certificates") {
    const std::size_t count = arg_size(o, "count", 3);
    tasks.push_back([o, count] {
      Partial p;
      guarded(p, "ex74_certificates", [&] {
        IntervalFamily fam = build_intervals_74(count);
        p = suite_partial(o, verify_ex74_certificates(fam));
        p.table = "ex74_certificates";
        for (std::size_t m = 1; m <= fam.intervals.size(); ++m) {
          Ex74Witness w = example74_zm(fam, m);
          for (const auto& cert : w.certs) {
            p.rows.push_back({num(m), index_to_string(w.range.lo), index_to_string(w.range.hi),
                              w.explicit_form ? "explicit" : "symbolic", index_to_string(w.split), cert.name,
                              fmt(cert.lhs), fmt(cert.rhs), cert.pass ? "true" : "false", cert.note});
            p.certificates.push_back({{"m", m}, {"name", cert.name}, {"lhs", fmt(cert.lhs)}, {"rhs", fmt(cert.rhs)},
                                      {"pass", cert.pass}, {"note", cert.note}});
            if (!cert.pass) p.failed = true;
          }
        }
      });
      return p;
    });
  } else if (n == "ex74_trend") {
    const std::size_t count = arg_size(o, "count", 3);
    tasks.push_back([o, count] { return suite_partial(o, verify_ex74_trend(build_intervals_74(count))); });
  } else if (n == "lemma75") {
    tasks.push_back([o] {
      SpacePreset base = resolve_space(Json(o.args.count("base") ? o.args.at("base") : "ex74"));
      return suite_partial(o, verify_lemma75(base, arg_size(o, "max_size", 8), arg_index(o, "n", 10)));
    });
  } else if (n == "lemma77") {
    tasks.push_back([o] {
      SpacePreset l = resolve_space(Json(o.args.count("left") ? o.args.at("left") : "xp"));
      SpacePreset r = resolve_space(Json(o.args.count("right") ? o.args.at("right") : "ex72"));
      return suite_partial(o, verify_lemma77(l, r, arg_size(o, "max_size", 8), arg_index(o, "n", 12)));
    });
  }
}

Json suite_to_json(const SuiteRow& s) {
  return {{"suite", s.r.name}, {"args", s.args},          {"cases", s.r.cases},  {"violations", s.r.violations},
          {"worst", fmt(s.r.worst)}, {"limit", fmt(s.r.limit)}, {"pass", s.r.pass()}, {"detail", s.r.detail}};
}

}  // namespace

BudgetProfile budget_profile(const std::string& name) {
  if (name == "smoke") return {"smoke", 40, 8, 64, 500, 4000};
  if (name == "default") return {};
  if (name == "full") return {"full", 1000, 16, 1024, 20000, 100000};
  throw ContractError("unknown budget profile '" + name + "' (smoke, default, full)");
}

const std::vector<std::string>& default_outputs() {
  static const std::vector<std::string> o = {
      "params",        "democracy_profile",  "property_A",        "bidemocracy",         "bounds",
      "ex72_ratio",    "ex76_rearrangement", "xp_exactness",      "lemma71 exhaustive 12", "ex72_sandwich",
      "ex72_quasi_greedy", "ex72_conditionality", "ex74_certificates", "ex74_trend", "lemma75", "lemma77"};
  return o;
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.space_sources = {"xp", "ex72"};
  for (const auto& s : c.space_sources) c.spaces.push_back(resolve_space(s));
  c.outputs = default_outputs();
  c.kinds = parameter_kinds();
  return c;
}

SpacePreset resolve_space(const Json& source, const std::string& path) {
  if (source.is_string()) {
    const std::string s = source.get<std::string>();
    if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
      Json j;
      try {
        j = Json::parse(s);
      } catch (const Json::exception& e) {
        fail(path, std::string("inline space is not valid JSON: ") + e.what());
      }
      return resolve_space(j, path);
    }
    if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
      std::ifstream in(s);
      if (!in) fail(path, "cannot open '" + s + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::exception& e) {
        fail(path, "'" + s + "' is not valid JSON: " + e.what());
      }
      SpacePreset sp = resolve_space(j, path);
      if (sp.name == "inline") sp.name = std::filesystem::path(s).stem().string();
      return sp;
    }
    try {
      SpacePreset sp = preset_by_name(s);
      sp.name = s;
      return sp;
    } catch (const ContractError& e) {
      fail(path, e.what());
    }
  }
  if (!source.is_object()) fail(path, "expected a preset name or a space object");
  if (source.contains("norm") && !source.contains("spec_version")) {
    // Space object: {"name", "norm", "weight"}.
    for (const auto& [k, v] : source.items())
      if (k != "name" && k != "norm" && k != "weight" && k != "metadata") fail(path + "/" + k, "unknown key");
    SpacePreset sp{"inline", norm_from_json(source["norm"], path + "/norm"), Weight::constant(1), Json::object()};
    if (source.contains("weight")) sp.weight = weight_from_json(source["weight"], path + "/weight");
    if (source.contains("name")) {
      if (!source["name"].is_string()) fail(path + "/name", "expected a string");
      sp.name = source["name"].get<std::string>();
    }
    return sp;
  }
  if (source.contains("spec_version")) {
    try {
      return {"inline", norm_from_document(source), Weight::constant(1), Json::object()};
    } catch (const ContractError& e) {
      std::string msg = e.what();
      fail(path, msg);
    }
  }
  return {"inline", norm_from_json(source, path), Weight::constant(1), Json::object()};
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail("", "config must be an object");
  ExperimentConfig c = default_config();
  static const std::vector<std::string> keys = {"space", "weight", "seed", "budget", "outputs",
                                                "kinds", "m",      "t",    "measures"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail("/" + k, "unknown key");

  if (j.contains("space")) {
    const Json& s = j["space"];
    c.spaces.clear();
    c.space_sources.clear();
    if (s.is_array()) {
      if (s.empty()) fail("/space", "needs at least one space");
      for (std::size_t i = 0; i < s.size(); ++i) {
        c.spaces.push_back(resolve_space(s[i], "/space/" + std::to_string(i)));
        c.space_sources.push_back(s[i]);
      }
    } else {
      c.spaces.push_back(resolve_space(s, "/space"));
      c.space_sources.push_back(s);
    }
    for (std::size_t i = 0; i < c.spaces.size(); ++i)
      for (std::size_t k = 0; k < i; ++k)
        if (c.spaces[i].name == c.spaces[k].name) c.spaces[i].name += "#" + std::to_string(i);
  }
  if (j.contains("weight")) c.weight = weight_from_json(j["weight"], "/weight");
  if (j.contains("seed")) c.seed = u64_from_json(j["seed"], "/seed");
  if (j.contains("budget")) {
    const Json& b = j["budget"];
    if (b.is_string()) {
      try {
        c.budget = budget_profile(b.get<std::string>());
      } catch (const ContractError& e) {
        fail("/budget", e.what());
      }
    } else if (b.is_object()) {
      if (b.contains("profile")) {
        if (!b["profile"].is_string()) fail("/budget/profile", "expected a string");
        try {
          c.budget = budget_profile(b["profile"].get<std::string>());
        } catch (const ContractError& e) {
          fail("/budget/profile", e.what());
        }
      }
      for (const auto& [k, v] : b.items()) {
        const std::string p = "/budget/" + k;
        if (k == "profile") continue;
        if (k == "candidates") c.budget.candidates = size_from_json(v, p);
        else if (k == "pool") c.budget.pool = size_from_json(v, p);
        else if (k == "max_sets") c.budget.max_sets = size_from_json(v, p);
        else if (k == "property_a_samples") c.budget.property_a_samples = size_from_json(v, p);
        else if (k == "profile_samples") c.budget.profile_samples = size_from_json(v, p);
        else fail(p, "unknown key");
      }
      if (c.budget.pool > kMaxPool) fail("/budget/pool", "at most " + std::to_string(kMaxPool));
    } else {
      fail("/budget", "expected a profile name or an object");
    }
  }
  auto string_list = [&](const char* key) {
    const Json& v = j[key];
    const std::string p = std::string("/") + key;
    if (!v.is_array()) fail(p, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) fail(p + "/" + std::to_string(i), "expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  };
  if (j.contains("outputs")) {
    c.outputs = string_list("outputs");
    if (c.outputs.empty()) fail("/outputs", "needs at least one output");
  }
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    const std::string p = "/outputs/" + std::to_string(i);
    validate_output(parse_output(c.outputs[i], p), p);
  }
  if (j.contains("kinds")) {
    c.kinds = string_list("kinds");
    for (std::size_t i = 0; i < c.kinds.size(); ++i) {
      const auto& ks = parameter_kinds();
      if (std::find(ks.begin(), ks.end(), c.kinds[i]) == ks.end())
        fail("/kinds/" + std::to_string(i), "unknown parameter kind '" + c.kinds[i] + "'");
    }
  }
  if (j.contains("m")) {
    if (!j["m"].is_array() || j["m"].empty()) fail("/m", "expected a nonempty array");
    c.ms.clear();
    for (std::size_t i = 0; i < j["m"].size(); ++i) c.ms.push_back(size_from_json(j["m"][i], "/m/" + std::to_string(i)));
  }
  auto real_list = [&](const char* key, auto ok, const char* what) {
    const std::string p = std::string("/") + key;
    if (!j[key].is_array() || j[key].empty()) fail(p, "expected a nonempty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j[key].size(); ++i) {
      double v = real_from_json(j[key][i], p + "/" + std::to_string(i));
      if (!ok(v)) fail(p + "/" + std::to_string(i), what);
      out.push_back(v);
    }
    return out;
  };
  if (j.contains("t")) c.ts = real_list("t", [](double v) { return v > 0 && v <= 1; }, "t must lie in (0, 1]");
  if (j.contains("measures"))
    c.measures = real_list("measures", [](double v) { return v >= 0 && std::isfinite(v); }, "must be finite, >= 0");
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json ms = Json::array(), ts = Json::array(), ws = Json::array();
  for (auto m : c.ms) ms.push_back(m);
  for (double t : c.ts) ts.push_back(fmt(t));
  for (double w : c.measures) ws.push_back(fmt(w));
  Json j = {{"space", c.space_sources},
            {"seed", c.seed},
            {"budget",
             {{"profile", c.budget.name},
              {"candidates", c.budget.candidates},
              {"pool", c.budget.pool},
              {"max_sets", c.budget.max_sets},
              {"property_a_samples", c.budget.property_a_samples},
              {"profile_samples", c.budget.profile_samples}}},
            {"outputs", c.outputs},
            {"kinds", c.kinds},
            {"m", ms},
            {"t", ts},
            {"measures", ws}};
  if (c.weight) j["weight"] = weight_to_json(*c.weight);
  return j;
}

ReportBundle run_report(const ExperimentConfig& config, int jobs) {
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < config.outputs.size(); ++i) {
    const std::string p = "/outputs/" + std::to_string(i);
    OutputSpec o = parse_output(config.outputs[i], p);
    validate_output(o, p);
    expand(config, o, tasks);
  }

  std::vector<Partial> parts(tasks.size());
  const int workers = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    try {
      parts[i] = tasks[i]();
    } catch (const std::exception& e) {
      parts[i].errors.push_back(e.what());
      parts[i].failed = true;
    }
  }

  ReportBundle b;
  std::map<std::string, std::size_t> table_at;
  Json certs = Json::array();
  std::vector<SuiteRow> suites;
  for (auto& p : parts) {
    if (!p.table.empty()) {
      auto it = table_at.find(p.table);
      if (it == table_at.end()) {
        const std::string base = p.table.substr(0, p.table.find('.'));
        const TableDef& def = table_defs().at(base);
        it = table_at.emplace(p.table, b.tables.size()).first;
        b.tables.push_back({p.table + ".csv", def.columns, def.descriptions, {}});
      }
      auto& rows = b.tables[it->second].rows;
      rows.insert(rows.end(), p.rows.begin(), p.rows.end());
    }
    for (auto& e : p.estimates) b.estimates.push_back(std::move(e));
    for (auto& s : p.suites) suites.push_back(std::move(s));
    for (auto& e : p.errors) b.errors.push_back(std::move(e));
    for (auto& c : p.certificates) certs.push_back(std::move(c));
    b.failed = b.failed || p.failed;
  }
  if (!suites.empty()) {
    const TableDef& def = table_defs().at("suites");
    Table t{"suites.csv", def.columns, def.descriptions, {}};
    for (const auto& s : suites) {
      t.rows.push_back({s.r.name, s.args, num(s.r.cases), num(s.r.violations), fmt(s.r.worst), fmt(s.r.limit),
                        s.r.pass() ? "true" : "false", s.r.detail});
      b.suites.push_back(s.r);
    }
    b.tables.push_back(std::move(t));
  }

  Json spaces = Json::array(), estimates = Json::array(), suite_json = Json::array();
  for (const auto& sp : config.spaces)
    spaces.push_back({{"name", sp.name}, {"spec_hash", spec_hash(sp.spec)}, {"space", preset_to_json(sp)}});
  for (const auto& e : b.estimates)
    estimates.push_back({{"space", e.space},
                         {"reevaluated", e.estimate.witnesses.empty() ? Json() : Json(fmt(e.reevaluated))},
                         {"estimate", estimate_to_json(e.estimate)}});
  for (const auto& s : suites) suite_json.push_back(suite_to_json(s));
  b.summary = {{"config", config_to_json(config)}, {"spaces", spaces},     {"estimates", estimates},
               {"suites", suite_json},              {"certificates", certs}, {"errors", b.errors},
               {"failed", b.failed}};

  Json tables = Json::array();
  for (const auto& t : b.tables) {
    Json cols = Json::array();
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      cols.push_back({{"name", t.columns[i]}, {"description", t.descriptions[i]}});
    tables.push_back({{"file", t.file}, {"rows", t.rows.size()}, {"columns", cols}});
  }
  b.manifest = {{"format", "csv, reals as decimal strings with 17 significant digits"},
                {"summary", "summary.json"},
                {"tables", tables}};
  return b;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string& f = fields[i];
    if (i) out += ',';
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  return out + "\n";
}

void write_bundle(const ReportBundle& b, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) throw ContractError("cannot write '" + (std::filesystem::path(dir) / name).string() + "'");
    out << body;
  };
  for (const auto& t : b.tables) {
    std::string body = csv_line(t.columns);
    for (const auto& r : t.rows) body += csv_line(r);
    write(t.file, body);
  }
  write("manifest.json", b.manifest.dump(2) + "\n");
  write("summary.json", b.summary.dump(2) + "\n");
}

}  // namespace greedylab
