#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cnls/harness.hpp"

namespace cnls {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string radius_label(double r) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", r);
  return buf;
}

}  // namespace

std::string trace_to_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "t,mass,energy,k,grad_sq,norm_critical,norm_subcritical,h";
  for (double r : trace.virial_radii) {
    const std::string lbl = radius_label(r);
    out << ",vR_" << lbl << ",dtvR_" << lbl << ",dt2vR_" << lbl;
  }
  for (double r : trace.virial_radii) out << ",ext_" << radius_label(r);
  out << "\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const auto& rep = trace.reports[k];
    out << format_double(trace.times[k]) << ',' << format_double(rep.mass) << ','
        << format_double(rep.energy) << ',' << format_double(rep.k) << ','
        << format_double(rep.grad_norm_sq) << ',' << format_double(rep.norm_critical) << ','
        << format_double(rep.norm_subcritical) << ',' << format_double(rep.h);
    for (std::size_t j = 0; j < trace.virial_radii.size(); ++j) {
      const auto& vs = trace.virials[k][j];
      out << ',' << format_double(vs.v) << ',' << format_double(vs.dt_v) << ','
          << format_double(vs.dt2_v);
    }
    for (std::size_t j = 0; j < trace.virial_radii.size(); ++j)
      out << ',' << format_double(trace.exterior[k][j]);
    out << "\n";
  }
  return out.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return table;
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    table.rows.push_back(std::move(row));
  }
  return table;
}

json threshold_to_json(const ThresholdResult& r) {
  json j;
  j["m"] = r.m;
  j["grad_w_norm_sq"] = r.grad_w_norm_sq;
  j["sobolev_constant"] = r.sobolev_constant;
  j["pde_residual"] = r.pde_residual;
  j["kc_of_w"] = r.kc_of_w;
  return j;
}

json report_to_json(const FunctionalReport& rep) {
  json j;
  j["mass"] = rep.mass;
  j["energy"] = rep.energy;
  j["critical_energy"] = rep.critical_energy;
  j["k"] = rep.k;
  j["k_quadratic"] = rep.k_quadratic;
  j["k_nonlinear"] = rep.k_nonlinear;
  j["k_critical"] = rep.k_critical;
  j["h"] = rep.h;
  j["grad_norm_sq"] = rep.grad_norm_sq;
  j["norm_critical"] = rep.norm_critical;
  j["norm_subcritical"] = rep.norm_subcritical;
  j["momentum"] = rep.momentum;
  return j;
}

json outcome_to_json(const OutcomeReport& rep) {
  json j;
  j["classification"] = outcome_class_name(rep.classification);
  j["gradient_exceeded"] = rep.gradient_exceeded;
  j["virial_concave"] = rep.virial_concave;
  j["critical_norm_halved"] = rep.critical_norm_halved;
  j["st_norm_saturated"] = rep.st_norm_saturated;
  j["exterior_decayed"] = rep.exterior_decayed;
  return j;
}

const char* outcome_kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::BlowUp: return "BlowUp";
    case OutcomeKind::ReachedTFinal: return "ReachedTFinal";
    case OutcomeKind::BoundaryContaminated: return "BoundaryContaminated";
    default: return "StepUnderflow";
  }
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
  out << content;
}

}  // namespace cnls
