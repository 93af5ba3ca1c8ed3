#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "greedylab/chebyshev.hpp"
#include "greedylab/enclosure.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/norm_eval.hpp"
#include "greedylab/report.hpp"
#include "greedylab/sigma.hpp"

using namespace greedylab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 0;
  std::string budget;
};

struct Inputs {
  std::string space;
  std::string x;
  std::string dense;
  std::string set;
  std::size_t m = 1;
  double t = 1;
  std::string kind;
  double measure = 1;
  std::size_t pool = 0;
  std::size_t candidates = 0;
  std::size_t limit = 1000000;
  std::string tag;
  std::vector<std::string> bound_inputs;
  std::vector<std::string> suite;
};

ExperimentConfig load_config(const Globals& g) {
  ExperimentConfig c = default_config();
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw ContractError(g.config_path + ": cannot open");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ContractError(g.config_path + ": invalid JSON: " + e.what());
    }
    try {
      c = config_from_json(j);
    } catch (const ContractError& e) {
      throw ContractError(g.config_path + ": " + e.what());
    }
  }
  if (g.seed) c.seed = *g.seed;
  if (!g.budget.empty()) c.budget = budget_profile(g.budget);
  return c;
}

SpacePreset pick_space(const Inputs& in, const ExperimentConfig& c) {
  if (!in.space.empty()) return resolve_space(Json(in.space), "--space");
  return c.spaces.front();
}

SparseVector pick_vector(const Inputs& in) {
  if (!in.x.empty() && !in.dense.empty()) throw ContractError("--x and --dense are exclusive");
  if (!in.x.empty()) {
    Json j;
    try {
      j = Json::parse(in.x);
    } catch (const Json::exception& e) {
      throw ContractError(std::string("--x: invalid JSON: ") + e.what());
    }
    return vector_from_json(j, "--x");
  }
  if (!in.dense.empty()) {
    std::vector<double> v;
    std::stringstream ss(in.dense);
    for (std::string part; std::getline(ss, part, ',');) v.push_back(parse_real(part));
    return SparseVector::from_dense(v);
  }
  throw ContractError("a vector is required (--x or --dense)");
}

IndexSet parse_set(const std::string& s) {
  std::vector<Index> v;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) v.push_back(parse_index(part));
  return make_index_set(std::move(v));
}

IndexSet first_indices(std::size_t n) {
  IndexSet s;
  for (std::size_t i = 1; i <= n; ++i) s.push_back(i);
  return s;
}

std::string set_cell(const IndexSet& a) {
  std::string s;
  for (Index i : a) s += (s.empty() ? "" : ";") + index_to_string(i);
  return s;
}

// One-shot result: a single table to stdout, or a bundle under --out.
int emit(const Globals& g, const std::string& name, Table t, Json summary, bool failed = false) {
  t.file = name + ".csv";
  if (g.out.empty()) {
    std::cout << csv_line(t.columns);
    for (const auto& r : t.rows) std::cout << csv_line(r);
  } else {
    ReportBundle b;
    b.tables.push_back(t);
    b.summary = std::move(summary);
    Json cols = Json::array();
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      cols.push_back({{"name", t.columns[i]}, {"description", t.descriptions[i]}});
    b.manifest = {{"format", "csv, reals as decimal strings with 17 significant digits"},
                  {"summary", "summary.json"},
                  {"tables", Json::array({{{"file", t.file}, {"rows", t.rows.size()}, {"columns", cols}}})}};
    write_bundle(b, g.out);
  }
  return failed ? kCheckFailed : kOk;
}

std::string fmt(double v) { return format_real(v); }

int cmd_space_eval(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  SpacePreset sp = pick_space(in, c);
  SparseVector x = pick_vector(in);
  double v = norm_eval(sp.spec, x);
  Table t{"", {"space", "spec_hash", "norm"}, {"space label", "hash of the norm tree", "|x|"}, {}};
  t.rows.push_back({sp.name, spec_hash(sp.spec), fmt(v)});
  return emit(g, "space_eval", t, {{"space", preset_to_json(sp)}, {"x", vector_to_json(x)}, {"norm", fmt(v)}});
}

int cmd_space_show(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  SpacePreset sp = pick_space(in, c);
  std::cout << preset_to_json(sp).dump(2) << "\n";
  return kOk;
}

int cmd_greedy_sets(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  SpacePreset sp = pick_space(in, c);
  SparseVector x = pick_vector(in);
  GreedyEnumOptions o;
  o.max_results = in.limit;
  std::vector<IndexSet> sets = enumerate_greedy_sets(x, in.m, in.t, o);
  Table t{"",
          {"rank", "set", "projection_norm", "residual_norm"},
          {"position in lexicographic order", "greedy set", "|P_A x|", "|x - P_A x|"},
          {}};
  Json js = Json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    SparseVector p = project(x, sets[i]);
    t.rows.push_back({std::to_string(i + 1), set_cell(sets[i]), fmt(norm_eval(sp.spec, p)),
                      fmt(norm_eval(sp.spec, x - p))});
    js.push_back(index_set_to_json(sets[i]));
  }
  return emit(g, "greedy_sets", t,
              {{"x", vector_to_json(x)}, {"m", in.m}, {"t", fmt(in.t)}, {"natural", index_set_to_json(natural_greedy_set(x, in.m))}, {"sets", js}});
}

int cmd_cheb(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  SpacePreset sp = pick_space(in, c);
  SparseVector x = pick_vector(in);
  IndexSet a = parse_set(in.set);
  ChebOptions o;
  o.seed = c.seed;
  ChebResult r = chebyshev_best(sp.spec, x, a, o);
  Table t{"",
          {"space", "set", "error", "lower", "gap", "method", "flagged"},
          {"space label", "support constraint", "|x - y|", "certified lower bound", "error - lower", "solver path",
           "gap target missed"},
          {}};
  t.rows.push_back({sp.name, set_cell(a), fmt(r.error), fmt(r.lower()), fmt(r.gap), r.method, r.flagged ? "true" : "false"});
  return emit(g, "cheb", t,
              {{"space", sp.name}, {"x", vector_to_json(x)}, {"set", index_set_to_json(a)}, {"y", vector_to_json(r.y)},
               {"error", fmt(r.error)}, {"gap", fmt(r.gap)}, {"method", r.method}, {"flagged", r.flagged}});
}

int cmd_sigma(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  SpacePreset sp = pick_space(in, c);
  SparseVector x = pick_vector(in);
  const std::string kind = in.kind.empty() ? "sigma" : in.kind;
  IndexSet pool = in.pool ? first_indices(in.pool) : x.support();
  SupportSearch r;
  if (kind == "sigma") r = sigma_m_search(sp.spec, x, in.m, pool);
  else if (kind == "sigma_tilde") r = sigma_tilde_search(sp.spec, x, in.m);
  else if (kind == "weighted_sigma") r = weighted_sigma_search(sp.spec, x, sp.weight, in.measure, pool);
  else if (kind == "weighted_projection") r = weighted_projection_search(sp.spec, x, sp.weight, in.measure);
  else throw ContractError("--kind must be sigma, sigma_tilde, weighted_sigma or weighted_projection");
  Table t{"",
          {"space", "kind", "value", "support", "gap", "flagged", "evaluations"},
          {"space label", "search kind", "minimal error found", "minimizing support", "certified gap at the minimizer",
           "some solve missed its gap target", "supports evaluated"},
          {}};
  t.rows.push_back({sp.name, kind, fmt(r.value), set_cell(r.support), fmt(r.gap), r.flagged ? "true" : "false",
                    std::to_string(r.evaluations)});
  return emit(g, "sigma", t,
              {{"space", sp.name}, {"kind", kind}, {"x", vector_to_json(x)}, {"value", fmt(r.value)},
               {"support", index_set_to_json(r.support)}, {"y", vector_to_json(r.y)}});
}

int cmd_param(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  SpacePreset sp = pick_space(in, c);
  if (in.kind.empty()) throw ContractError("--kind is required");
  EstimatorBudget b{in.candidates ? in.candidates : c.budget.candidates, c.seed, c.budget.max_sets};
  IndexSet pool = first_indices(in.pool ? in.pool : c.budget.pool);
  ParameterEstimate e;
  double re;
  if (in.kind == "property_A") {
    PropertyAOptions o;
    o.pool = pool;
    o.samples = in.candidates ? in.candidates : c.budget.property_a_samples;
    o.seed = c.seed;
    e = check_property_A(sp.spec, sp.weight, o);
    re = e.witnesses.empty() ? e.lower_bound : evaluate_property_A_witness(sp.spec, sp.weight, e.witnesses[0]);
  } else {
    e = estimate_parameter(sp.spec, in.kind, in.m, in.t, b, pool);
    re = e.witnesses.empty() ? e.lower_bound : evaluate_witness(sp.spec, in.kind, in.m, e.t_or_s, e.witnesses[0]);
  }
  Table t{"",
          {"space", "kind", "m", "t", "lower_bound", "reevaluated", "evaluated", "note"},
          {"space label", "parameter kind", "m", "threshold", "sound lower bound", "ratio recomputed from the witness",
           "candidates examined", "estimator note"},
          {}};
  t.rows.push_back({sp.name, e.kind, std::to_string(e.m), fmt(e.t_or_s), fmt(e.lower_bound),
                    e.witnesses.empty() ? "" : fmt(re), std::to_string(e.evaluated), e.note});
  return emit(g, "param", t, {{"space", sp.name}, {"estimate", estimate_to_json(e)}});
}

int cmd_bounds(const Globals& g, const Inputs& in) {
  Table t{"", {"tag", "inputs", "value"}, {"formula tag", "inputs used", "closed-form constant"}, {}};
  Json js = Json::array();
  std::vector<std::string> tags = in.tag.empty() ? bound_tags() : std::vector<std::string>{in.tag};
  std::map<std::string, double> given;
  for (const auto& kv : in.bound_inputs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ContractError("--input expects name=value, got '" + kv + "'");
    given[kv.substr(0, eq)] = parse_real(kv.substr(eq + 1));
  }
  for (const auto& tag : tags) {
    std::map<std::string, double> args;
    if (in.tag.empty() && given.empty()) {
      for (const auto& n : bound_inputs(tag)) args[n] = 1;
    } else {
      args = given;
    }
    std::string desc;
    for (const auto& [k, v] : args) desc += (desc.empty() ? "" : ";") + k + "=" + fmt(v);
    double v = bound_calculator(tag, args);
    t.rows.push_back({tag, desc, fmt(v)});
    js.push_back({{"tag", tag}, {"inputs", desc}, {"value", fmt(v)}});
  }
  return emit(g, "bounds", t, {{"bounds", js}});
}

int cmd_example_verify(const Globals& g, const Inputs& in) {
  ExperimentConfig c = load_config(g);
  if (in.suite.empty()) throw ContractError("example verify needs a suite name");
  std::string req;
  for (const auto& s : in.suite) req += (req.empty() ? "" : " ") + s;
  Json j = config_to_json(c);
  j["outputs"] = Json::array({req});
  ExperimentConfig one = config_from_json(j);
  ReportBundle b = run_report(one, g.jobs);
  if (!g.out.empty()) {
    write_bundle(b, g.out);
  } else {
    for (const auto& t : b.tables) {
      if (b.tables.size() > 1) std::cout << "# " << t.file << "\n";
      std::cout << csv_line(t.columns);
      for (const auto& r : t.rows) std::cout << csv_line(r);
    }
  }
  for (const auto& e : b.errors) std::cerr << "error: " << e << "\n";
  return b.failed ? kCheckFailed : kOk;
}

int cmd_report(const Globals& g) {
  ExperimentConfig c = load_config(g);
  ReportBundle b = run_report(c, g.jobs);
  const std::string dir = g.out.empty() ? "report" : g.out;
  write_bundle(b, dir);
  for (const auto& s : b.suites)
    std::cerr << (s.pass() ? "PASS " : "FAIL ") << s.name << " worst=" << fmt(s.worst) << "\n";
  for (const auto& e : b.errors) std::cerr << "error: " << e << "\n";
  std::cerr << "wrote " << b.tables.size() << " tables to " << dir << "\n";
  return b.failed ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedylab: greedy approximation experiments on sequence spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Inputs in;
  app.add_option("--config", g.config_path, "experiment config (JSON)");
  app.add_option("--seed", g.seed, "seed for every randomized search");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--jobs", g.jobs, "worker threads (0: all)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", g.budget, "budget profile: smoke, default, full");

  auto add_space = [&](CLI::App* s) { s->add_option("--space", in.space, "preset name, JSON file or inline JSON"); };
  auto add_vector = [&](CLI::App* s) {
    s->add_option("--x", in.x, "sparse vector as JSON [[index, value], ...]");
    s->add_option("--dense", in.dense, "dense vector a_1,a_2,...");
  };

  CLI::App* space = app.add_subcommand("space", "norm evaluation");
  space->require_subcommand(1);
  CLI::App* space_eval = space->add_subcommand("eval", "evaluate |x|");
  add_space(space_eval);
  add_vector(space_eval);
  CLI::App* space_show = space->add_subcommand("show", "print a space as JSON");
  add_space(space_show);

  CLI::App* greedy = app.add_subcommand("greedy", "greedy sets");
  greedy->require_subcommand(1);
  CLI::App* greedy_sets = greedy->add_subcommand("sets", "enumerate m-t-greedy sets");
  add_space(greedy_sets);
  add_vector(greedy_sets);
  greedy_sets->add_option("--m", in.m, "set size")->required();
  greedy_sets->add_option("--t", in.t, "weakness parameter in (0, 1]");
  greedy_sets->add_option("--limit", in.limit, "maximum number of sets");

  CLI::App* cheb = app.add_subcommand("cheb", "best approximation supported in a set");
  add_space(cheb);
  add_vector(cheb);
  cheb->add_option("--set", in.set, "support constraint a,b,c")->required();

  CLI::App* sigma = app.add_subcommand("sigma", "best m-term and weighted approximation errors");
  add_space(sigma);
  add_vector(sigma);
  sigma->add_option("--m", in.m, "number of terms");
  sigma->add_option("--kind", in.kind, "sigma, sigma_tilde, weighted_sigma, weighted_projection");
  sigma->add_option("--measure", in.measure, "weight budget for the weighted kinds");
  sigma->add_option("--pool", in.pool, "search pool {1..N} (default: supp x)");

  CLI::App* param = app.add_subcommand("param", "lower bound for a greedy-type parameter");
  add_space(param);
  param->add_option("--kind", in.kind, "parameter kind or property_A")->required();
  param->add_option("--m", in.m, "m");
  param->add_option("--t", in.t, "threshold t or s");
  param->add_option("--candidates", in.candidates, "candidate count (default from the budget)");
  param->add_option("--pool", in.pool, "pool {1..N} (default from the budget)");

  CLI::App* example = app.add_subcommand("example", "example constructions");
  example->require_subcommand(1);
  CLI::App* verify = example->add_subcommand("verify", "run a verification suite, e.g. 'lemma71 exhaustive 12'");
  verify->add_option("suite", in.suite, "suite name followed by key value pairs")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form constants");
  bounds->add_option("--tag", in.tag, "formula tag (default: all at the canonical point)");
  bounds->add_option("--input", in.bound_inputs, "name=value, repeatable");

  CLI::App* report = app.add_subcommand("report", "run a config and write a report bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (const char* cache = std::getenv("GREEDYLAB_CACHE"); cache && *cache) enable_enclosure_cache(cache);
  if (g.jobs > 0) omp_set_num_threads(g.jobs);

  int rc = kOk;
  try {
    if (*space_eval) rc = cmd_space_eval(g, in);
    else if (*space_show) rc = cmd_space_show(g, in);
    else if (*greedy_sets) rc = cmd_greedy_sets(g, in);
    else if (*cheb) rc = cmd_cheb(g, in);
    else if (*sigma) rc = cmd_sigma(g, in);
    else if (*param) rc = cmd_param(g, in);
    else if (*verify) rc = cmd_example_verify(g, in);
    else if (*bounds) rc = cmd_bounds(g, in);
    else if (*report) rc = cmd_report(g);
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kCheckFailed;
  }
  if (std::getenv("GREEDYLAB_CACHE")) flush_enclosure_cache();
  return rc;
}
