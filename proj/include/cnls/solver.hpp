#pragma once

#include <stdexcept>
#include <vector>

#include "cnls/diagnostics.hpp"
#include "cnls/functionals.hpp"
#include "cnls/grid.hpp"

namespace cnls {

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  double blowup_factor = 1e4;
  double dt_min = 1e-9;
  int observe_every = 20;
  double boundary_tol = 1e-6;
  bool sponge = false;

  void validate() const;
};

enum class OutcomeKind { BlowUp, ReachedTFinal, BoundaryContaminated, StepUnderflow };

struct Outcome {
  OutcomeKind kind = OutcomeKind::ReachedTFinal;
  double t_stop = 0.0;
};

// Observable time series of one run. One entry per observation; instrument
// columns beyond the exported CSV schema feed the outcome classifier.
struct SimulationTrace {
  int dim = 0;
  double r_max = 0.0;
  bool sponge_used = false;
  std::vector<double> times;
  std::vector<FunctionalReport> reports;
  std::vector<double> grad_sq_series;
  std::vector<double> virial_radii;
  std::vector<std::vector<VirialSample>> virials;  // [observation][radius]
  std::vector<std::vector<double>> exterior;       // [observation][radius]
  std::vector<double> st_integrand_crit;  // int |u|^{2(d+2)/(d-2)} dx
  std::vector<double> st_integrand_sub;   // int |u|^{2(d+2)/(d-1)} dx
  std::vector<double> interior_critical;  // int_{r <= r_max/10} |u|^{2*} dx
  Outcome outcome;
};

struct SolverError : std::runtime_error {
  SolverError(const std::string& msg, SimulationTrace partial)
      : std::runtime_error(msg), partial_trace(std::move(partial)) {}
  SimulationTrace partial_trace;
};

// Exact solution of the nonlinearity sub-flow: pointwise phase rotation by
// dt (|u|^{4/(d-2)} - |u|^{4/(d-1)}); |u| is conserved node by node.
RadialField nonlinear_phase_step(const RadialField& f, double dt);

// Crank-Nicolson step for the free flow with the conservative-form radial
// Laplacian; tridiagonal Thomas solve, Dirichlet at r_max, symmetry closure
// at the origin.
RadialField linear_step(const RadialField& f, double dt);

SimulationTrace evolve(const RadialField& u0, const SolverConfig& cfg,
                       const std::vector<double>& virial_radii);
SimulationTrace evolve(const FieldSpec& u0, const GridPtr& grid, const SolverConfig& cfg,
                       const std::vector<double>& virial_radii);

// Norm conserved exactly by the linear step (volume-weight inner product,
// which differs from the trapezoid mass only at the origin node).
double discrete_l2_sq(const RadialField& f);

// Energy functional of the semi-discrete system; drift under the full
// splitting is pure O(dt^2).
double discrete_energy(const RadialField& f);

}  // namespace cnls
