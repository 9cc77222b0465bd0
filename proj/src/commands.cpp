#include <algorithm>
#include <cmath>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cnls/harness.hpp"

namespace cnls {

namespace {

// ThresholdResult cross-checks for a given dimension.
bool threshold_ok(const ThresholdResult& r, int dim) {
  const double via_grad = r.grad_w_norm_sq / dim;
  const double via_sobolev = std::pow(r.sobolev_constant, -dim) / dim;
  if (!(std::abs(r.m - via_grad) <= 1e-10 * r.m)) return false;
  if (!(std::abs(r.m - via_sobolev) <= 1e-4 * r.m)) return false;
  if (!(std::abs(r.kc_of_w) <= 1e-4 * r.grad_w_norm_sq)) return false;
  return true;
}

FieldSpec apply_sweep_value(const FieldSpec& base, const std::string& parameter, double value) {
  FieldSpec spec = base;
  if (auto* g = std::get_if<GaussianSpec>(&spec)) {
    if (parameter == "amplitude")
      g->amplitude = value;
    else if (parameter == "width")
      g->width = value;
    else
      throw ConfigError("sweep: parameter 'lambda' does not apply to gaussian data");
  } else if (auto* s = std::get_if<ScaledGroundStateSpec>(&spec)) {
    if (parameter == "amplitude")
      s->amplitude = value;
    else if (parameter == "lambda")
      s->lambda = value;
    else
      throw ConfigError("sweep: parameter 'width' does not apply to ground_state data");
  } else {
    throw ConfigError("sweep: sampled data cannot be swept");
  }
  return spec;
}

json spec_to_json(const FieldSpec& spec) {
  json j;
  if (const auto* g = std::get_if<GaussianSpec>(&spec)) {
    j["type"] = "gaussian";
    j["amplitude"] = {g->amplitude.real(), g->amplitude.imag()};
    j["width"] = g->width;
  } else if (const auto* s = std::get_if<ScaledGroundStateSpec>(&spec)) {
    j["type"] = "ground_state";
    j["amplitude"] = {s->amplitude.real(), s->amplitude.imag()};
    j["lambda"] = s->lambda;
  } else {
    j["type"] = "sampled";
  }
  return j;
}

std::string run_index_name(const char* stem, std::size_t k, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%03zu.%s", stem, k, ext);
  return buf;
}

}  // namespace

int cmd_threshold(const ExperimentConfig& cfg) {
  ThresholdResult res;
  try {
    const RadialGrid grid = make_grid(cfg.dim, cfg.grid_n, cfg.grid_r_max);
    res = threshold(grid);
  } catch (const GridTooCoarseError& e) {
    std::cerr << "threshold: " << e.what() << "\n";
    return kExitGridRejected;
  } catch (const std::invalid_argument& e) {
    std::cerr << "threshold: grid rejected: " << e.what() << "\n";
    return kExitGridRejected;
  }
  const json j = threshold_to_json(res);
  write_file(cfg.output_dir, "threshold.json", j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return threshold_ok(res, cfg.dim) ? kExitOk : kExitPropertyFailed;
}

int cmd_classify(const ExperimentConfig& cfg) {
  if (cfg.initial_data.empty()) {
    std::cerr << "classify: config has no initial_data\n";
    return kExitConfig;
  }
  ThresholdResult th;
  try {
    th = threshold(make_grid(cfg.dim, cfg.grid_n, cfg.grid_r_max));
  } catch (const std::exception& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return kExitGridRejected;
  }
  json rows = json::array();
  std::cout << "idx  mass           energy         k              h              membership\n";
  for (std::size_t k = 0; k < cfg.initial_data.size(); ++k) {
    const FunctionalReport rep = report_of_spec(cfg.initial_data[k], cfg.dim);
    const Membership mem = classify_membership(rep, th.m);
    json row;
    row["datum"] = spec_to_json(cfg.initial_data[k]);
    row["mass"] = rep.mass;
    row["energy"] = rep.energy;
    row["k"] = rep.k;
    row["h"] = rep.h;
    row["membership"] = membership_name(mem);
    rows.push_back(std::move(row));
    char line[160];
    std::snprintf(line, sizeof(line), "%-4zu %-14.8g %-14.8g %-14.8g %-14.8g %s", k, rep.mass,
                  rep.energy, rep.k, rep.h, membership_name(mem));
    std::cout << line << "\n";
  }
  json out;
  out["m"] = th.m;
  out["rows"] = std::move(rows);
  write_file(cfg.output_dir, "classify.json", out.dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const ExperimentConfig& cfg, int jobs) {
  if (cfg.initial_data.empty()) {
    std::cerr << "simulate: config has no initial_data\n";
    return kExitConfig;
  }
  ThresholdResult th;
  GridPtr grid;
  try {
    grid = make_shared_grid(cfg.dim, cfg.grid_n, cfg.grid_r_max);
    th = threshold(*grid);
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return kExitGridRejected;
  }

  const std::size_t nd = cfg.initial_data.size();
  std::vector<SimulationTrace> traces(nd);
  std::vector<std::string> errors(nd);
  std::vector<char> failed(nd, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
#endif
  for (long long k = 0; k < static_cast<long long>(nd); ++k) {
    try {
      traces[k] = evolve(cfg.initial_data[k], grid, cfg.solver, cfg.virial_radii);
    } catch (SolverError& e) {
      traces[k] = std::move(e.partial_trace);
      errors[k] = e.what();
      failed[k] = 1;
    } catch (const std::exception& e) {
      errors[k] = e.what();
      failed[k] = 1;
    }
  }
  (void)jobs;

  json summary;
  summary["config"] = cfg.raw;
  summary["m"] = th.m;
  summary["runs"] = json::array();
  bool any_failed = false;
  for (std::size_t k = 0; k < nd; ++k) {
    write_file(cfg.output_dir, run_index_name("trace", k, "csv"), trace_to_csv(traces[k]));
    json run;
    run["datum"] = spec_to_json(cfg.initial_data[k]);
    if (failed[k]) {
      any_failed = true;
      run["error"] = errors[k];
    }
    if (!traces[k].reports.empty()) {
      const FunctionalReport& r0 = traces[k].reports.front();
      run["initial"] = report_to_json(r0);
      run["membership"] = membership_name(classify_membership(r0, th.m));
      run["outcome_kind"] = outcome_kind_name(traces[k].outcome.kind);
      run["t_stop"] = traces[k].outcome.t_stop;
      run["outcome"] = outcome_to_json(classify_outcome(traces[k], th.m));
    }
    write_file(cfg.output_dir, run_index_name("summary", k, "json"),
               run.dump(2) + "\n");
    summary["runs"].push_back(std::move(run));
    std::cout << "run " << k << ": "
              << (failed[k] ? "error" : outcome_kind_name(traces[k].outcome.kind)) << "\n";
  }
  write_file(cfg.output_dir, "run_summary.json", summary.dump(2) + "\n");
  return any_failed ? kExitSolver : kExitOk;
}

int cmd_dichotomy(const ExperimentConfig& cfg, int jobs) {
  if (!cfg.sweep || cfg.sweep->values.empty()) {
    std::cerr << "dichotomy: config needs a sweep with values\n";
    return kExitConfig;
  }
  if (cfg.initial_data.empty()) {
    std::cerr << "dichotomy: config needs an initial_data template\n";
    return kExitConfig;
  }
  ThresholdResult th;
  GridPtr grid;
  try {
    grid = make_shared_grid(cfg.dim, cfg.grid_n, cfg.grid_r_max);
    th = threshold(*grid);
  } catch (const std::exception& e) {
    std::cerr << "dichotomy: " << e.what() << "\n";
    return kExitGridRejected;
  }

  struct Row {
    double value = 0.0;
    FunctionalReport rep;
    Membership membership = Membership::AboveThreshold;
    bool simulated = false;
    OutcomeReport outcome;
    OutcomeKind kind = OutcomeKind::ReachedTFinal;
    double t_stop = 0.0;
    std::string error;
  };

  const auto& sw = *cfg.sweep;
  std::vector<Row> rows(sw.values.size());
  for (std::size_t k = 0; k < sw.values.size(); ++k) {
    rows[k].value = sw.values[k];
    const FieldSpec spec = apply_sweep_value(cfg.initial_data[0], sw.parameter, sw.values[k]);
    rows[k].rep = report_of_spec(spec, cfg.dim);
    rows[k].membership = classify_membership(rows[k].rep, th.m);
  }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
#endif
  for (long long k = 0; k < static_cast<long long>(rows.size()); ++k) {
    Row& row = rows[k];
    if (row.membership == Membership::AboveThreshold) continue;  // skipped for simulation
    const FieldSpec spec = apply_sweep_value(cfg.initial_data[0], sw.parameter, row.value);
    try {
      const SimulationTrace tr = evolve(spec, grid, cfg.solver, cfg.virial_radii);
      row.simulated = true;
      row.kind = tr.outcome.kind;
      row.t_stop = tr.outcome.t_stop;
      row.outcome = classify_outcome(tr, th.m);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  (void)jobs;

  // Consistency gate: below the threshold, a completed K^- run must not be
  // dispersive, and a confirmed blow-up must not sit in K^+.
  bool gate_violated = false;
  std::string gate_reason;
  for (const auto& row : rows) {
    if (!row.simulated) continue;
    if (row.membership == Membership::KMinus &&
        row.outcome.classification == OutcomeClass::DispersiveConfirmed) {
      gate_violated = true;
      gate_reason = "KMinus run classified DispersiveConfirmed at value " +
                    format_double(row.value);
    }
    if (row.outcome.classification == OutcomeClass::BlowUpConfirmed &&
        row.membership == Membership::KPlus) {
      gate_violated = true;
      gate_reason = "KPlus run classified BlowUpConfirmed at value " + format_double(row.value);
    }
  }

  std::ostringstream csv;
  csv << "parameter,E,K,membership,outcome\n";
  json jrows = json::array();
  for (const auto& row : rows) {
    const std::string outcome = !row.error.empty()
                                    ? "error"
                                    : (row.simulated ? outcome_class_name(row.outcome.classification)
                                                     : "skipped");
    csv << format_double(row.value) << ',' << format_double(row.rep.energy) << ','
        << format_double(row.rep.k) << ',' << membership_name(row.membership) << ',' << outcome
        << "\n";
    json jr;
    jr["value"] = row.value;
    jr["energy"] = row.rep.energy;
    jr["k"] = row.rep.k;
    jr["membership"] = membership_name(row.membership);
    jr["outcome"] = outcome;
    if (row.simulated) {
      jr["outcome_kind"] = outcome_kind_name(row.kind);
      jr["t_stop"] = row.t_stop;
      jr["evidence"] = outcome_to_json(row.outcome);
    }
    jrows.push_back(std::move(jr));
  }
  write_file(cfg.output_dir, "dichotomy.csv", csv.str());
  json out;
  out["config"] = cfg.raw;
  out["m"] = th.m;
  out["gate_violated"] = gate_violated;
  if (gate_violated) out["gate_reason"] = gate_reason;
  out["rows"] = std::move(jrows);
  write_file(cfg.output_dir, "dichotomy.json", out.dump(2) + "\n");
  std::cout << csv.str();
  if (gate_violated) {
    std::cerr << "dichotomy: gate violated: " << gate_reason << "\n";
    return kExitGateViolated;
  }
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg) {
  std::vector<CheckResult> results;
  try {
    results = run_verification_suite(cfg);
  } catch (const GridTooCoarseError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kExitGridRejected;
  }
  json checks = json::array();
  bool all_ok = true;
  std::string first_failure;
  for (const auto& r : results) {
    json c;
    c["name"] = r.name;
    c["passed"] = r.passed;
    c["measured"] = r.measured;
    c["tolerance"] = r.tolerance;
    if (!r.detail.empty()) c["detail"] = r.detail;
    checks.push_back(std::move(c));
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << r.measured
              << " tol=" << r.tolerance << "\n";
    if (!r.passed && first_failure.empty()) first_failure = r.name;
    all_ok = all_ok && r.passed;
  }
  json out;
  out["seed"] = cfg.seed;
  out["dim"] = cfg.dim;
  out["grid"] = {{"n", cfg.grid_n}, {"r_max", cfg.grid_r_max}};
  out["all_passed"] = all_ok;
  out["checks"] = std::move(checks);
  write_file(cfg.output_dir, "verify.json", out.dump(2) + "\n");
  if (!all_ok) {
    std::cerr << "verify: first violated invariant: " << first_failure << "\n";
    return kExitPropertyFailed;
  }
  return kExitOk;
}

}  // namespace cnls
