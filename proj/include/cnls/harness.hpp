#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cnls/diagnostics.hpp"
#include "cnls/functionals.hpp"
#include "cnls/solver.hpp"

namespace cnls {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitGridRejected = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitGateViolated = 4;
inline constexpr int kExitPropertyFailed = 5;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::string parameter;  // amplitude | width | lambda
  std::vector<double> values;
};

struct ExperimentConfig {
  int dim = 5;
  int grid_n = 4096;
  double grid_r_max = 100.0;
  SolverConfig solver;
  std::vector<FieldSpec> initial_data;
  std::vector<double> virial_radii;
  std::optional<SweepConfig> sweep;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  json raw;  // as loaded, echoed into summaries
};

// Strict parse: unknown keys anywhere are errors.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const json& j);

// --- serialization ---------------------------------------------------------

std::string format_double(double x);  // 17 significant digits, round-trip exact
std::string trace_to_csv(const SimulationTrace& trace);

// Parses a trace CSV back into its numeric columns (header + rows).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(const std::string& text);

json threshold_to_json(const ThresholdResult& r);
json report_to_json(const FunctionalReport& rep);
json outcome_to_json(const OutcomeReport& rep);
const char* outcome_kind_name(OutcomeKind k);

void write_file(const std::string& dir, const std::string& name, const std::string& content);

// --- verification suite ----------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::vector<CheckResult> run_verification_suite(const ExperimentConfig& cfg);

// --- commands ---------------------------------------------------------------

int cmd_threshold(const ExperimentConfig& cfg);
int cmd_classify(const ExperimentConfig& cfg);
int cmd_simulate(const ExperimentConfig& cfg, int jobs);
int cmd_dichotomy(const ExperimentConfig& cfg, int jobs);
int cmd_verify(const ExperimentConfig& cfg);

}  // namespace cnls
