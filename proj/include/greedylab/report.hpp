#ifndef GREEDYLAB_REPORT_HPP_
#define GREEDYLAB_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/examples.hpp"
#include "greedylab/params.hpp"
#include "greedylab/spec_json.hpp"

namespace greedylab {

// Named size presets: "smoke", "default", "full".
struct BudgetProfile {
  std::string name = "default";
  std::size_t candidates = 200;  // estimator candidates per (kind, m, t)
  std::size_t pool = 12;         // indices {1..pool} for estimators and profiles
  std::size_t max_sets = 256;
  std::size_t property_a_samples = 4000;
  std::size_t profile_samples = 20000;
};
BudgetProfile budget_profile(const std::string& name);  // ContractError if unknown

struct ExperimentConfig {
  std::vector<SpacePreset> spaces;
  std::vector<Json> space_sources;  // as given, echoed into the summary
  std::optional<Weight> weight;     // measure for profiles and Property (A); default: each space's own
  std::uint64_t seed = 1;
  BudgetProfile budget;
  std::vector<std::string> outputs;
  std::vector<std::string> kinds;  // default: all
  std::vector<std::size_t> ms = {1, 2, 3};
  std::vector<double> ts = {1, 0.5};
  std::vector<double> measures = {1, 2, 3, 4, 6};
};

// Outputs of the default report, in order.
const std::vector<std::string>& default_outputs();
ExperimentConfig default_config();

// Strict schema: unknown keys and wrong types throw ContractError whose
// message starts with the JSON pointer of the offending value.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);

// "ex72", "xp:3", a path to a JSON file, or inline JSON (a space object, a
// norm document or a bare norm node).
SpacePreset resolve_space(const Json& source, const std::string& path = "");

struct Table {
  std::string file;
  std::vector<std::string> columns;
  std::vector<std::string> descriptions;
  std::vector<std::vector<std::string>> rows;
};

struct LabeledEstimate {
  std::string space;
  ParameterEstimate estimate;
  double reevaluated = 0;
};

struct ReportBundle {
  std::vector<Table> tables;
  std::vector<LabeledEstimate> estimates;
  std::vector<SuiteResult> suites;
  std::vector<std::string> errors;  // per-row failures, run continued
  Json summary;
  Json manifest;
  bool failed = false;  // some suite, certificate or row failed
};

// Runs the requested outputs on up to `jobs` workers (0: OpenMP default).
// Rows are ordered by input order whatever the completion order.
ReportBundle run_report(const ExperimentConfig& config, int jobs = 0);

// One CSV per table plus manifest.json and summary.json.
void write_bundle(const ReportBundle& b, const std::string& dir);

std::string csv_line(const std::vector<std::string>& fields);

}  // namespace greedylab

#endif  // GREEDYLAB_REPORT_HPP_
