#include <fstream>
#include <set>

#include "cnls/harness.hpp"

namespace cnls {

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("config: unknown key '" + key + "' in " + where);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError("config: " + where + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError("config: " + where + " must be an integer");
  return j.get<int>();
}

cplx as_amplitude(const json& j, const std::string& where) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("config: " + where + " must be a number or [re, im]");
}

FieldSpec parse_datum(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError("config: " + where + " must be an object with a 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "gaussian") {
    require_keys(j, {"type", "amplitude", "width"}, where);
    GaussianSpec g;
    g.amplitude = as_amplitude(j.at("amplitude"), where + ".amplitude");
    g.width = as_number(j.at("width"), where + ".width");
    if (!(g.width > 0.0)) throw ConfigError("config: " + where + ".width must be positive");
    return g;
  }
  if (type == "ground_state") {
    require_keys(j, {"type", "amplitude", "lambda"}, where);
    ScaledGroundStateSpec s;
    s.amplitude = as_amplitude(j.at("amplitude"), where + ".amplitude");
    s.lambda = j.contains("lambda") ? as_number(j.at("lambda"), where + ".lambda") : 0.0;
    return s;
  }
  throw ConfigError("config: " + where + ".type must be 'gaussian' or 'ground_state'");
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  require_keys(j, {"dim", "grid", "solver", "initial_data", "virial_radii", "sweep",
                   "output_dir", "seed"},
               "top level");
  ExperimentConfig cfg;
  cfg.raw = j;
  if (!j.contains("dim") || !j.contains("grid"))
    throw ConfigError("config: 'dim' and 'grid' are required");
  cfg.dim = as_int(j.at("dim"), "dim");

  const json& gj = j.at("grid");
  require_keys(gj, {"n", "r_max"}, "grid");
  cfg.grid_n = as_int(gj.at("n"), "grid.n");
  cfg.grid_r_max = as_number(gj.at("r_max"), "grid.r_max");

  if (j.contains("solver")) {
    const json& sj = j.at("solver");
    require_keys(sj, {"dt", "t_final", "blowup_factor", "dt_min", "observe_every",
                      "boundary_tol", "sponge"},
                 "solver");
    if (sj.contains("dt")) cfg.solver.dt = as_number(sj.at("dt"), "solver.dt");
    if (sj.contains("t_final")) cfg.solver.t_final = as_number(sj.at("t_final"), "solver.t_final");
    if (sj.contains("blowup_factor"))
      cfg.solver.blowup_factor = as_number(sj.at("blowup_factor"), "solver.blowup_factor");
    if (sj.contains("dt_min")) cfg.solver.dt_min = as_number(sj.at("dt_min"), "solver.dt_min");
    if (sj.contains("observe_every"))
      cfg.solver.observe_every = as_int(sj.at("observe_every"), "solver.observe_every");
    if (sj.contains("boundary_tol"))
      cfg.solver.boundary_tol = as_number(sj.at("boundary_tol"), "solver.boundary_tol");
    if (sj.contains("sponge")) {
      if (!sj.at("sponge").is_boolean()) throw ConfigError("config: solver.sponge must be a bool");
      cfg.solver.sponge = sj.at("sponge").get<bool>();
    }
    try {
      cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  if (j.contains("initial_data")) {
    const json& arr = j.at("initial_data");
    if (!arr.is_array()) throw ConfigError("config: initial_data must be an array");
    for (std::size_t k = 0; k < arr.size(); ++k)
      cfg.initial_data.push_back(parse_datum(arr[k], "initial_data[" + std::to_string(k) + "]"));
  }

  if (j.contains("virial_radii")) {
    const json& arr = j.at("virial_radii");
    if (!arr.is_array()) throw ConfigError("config: virial_radii must be an array");
    for (const auto& v : arr) cfg.virial_radii.push_back(as_number(v, "virial_radii entry"));
  }

  if (j.contains("sweep")) {
    const json& sw = j.at("sweep");
    require_keys(sw, {"parameter", "values"}, "sweep");
    SweepConfig s;
    if (!sw.contains("parameter") || !sw.at("parameter").is_string())
      throw ConfigError("config: sweep.parameter must be a string");
    s.parameter = sw.at("parameter").get<std::string>();
    if (s.parameter != "amplitude" && s.parameter != "width" && s.parameter != "lambda")
      throw ConfigError("config: sweep.parameter must be amplitude, width or lambda");
    if (!sw.contains("values") || !sw.at("values").is_array())
      throw ConfigError("config: sweep.values must be an array");
    for (const auto& v : sw.at("values")) s.values.push_back(as_number(v, "sweep.values entry"));
    cfg.sweep = std::move(s);
  }

  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigError("config: output_dir must be a string");
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw ConfigError("config: seed must be an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace cnls
