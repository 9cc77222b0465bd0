#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "cnls/grid.hpp"

namespace cnls {

// Closed-form initial-data descriptors. The closed forms scale exactly, so
// the variational machinery can work at quadrature precision instead of
// grid precision.
struct GaussianSpec {
  cplx amplitude;  // u(r) = amplitude * exp(-r^2 / width^2)
  double width = 1.0;
};
struct ScaledGroundStateSpec {
  cplx amplitude;  // u(r) = amplitude * e^{d*lambda} W(e^{2*lambda} r)
  double lambda = 0.0;
};
struct SampledSpec {
  RadialField field;
};
using FieldSpec = std::variant<GaussianSpec, ScaledGroundStateSpec, SampledSpec>;

struct FunctionalReport {
  double mass = 0.0;             // (1/2) int |u|^2
  double energy = 0.0;           // E
  double critical_energy = 0.0;  // E with the subcritical term dropped
  double k = 0.0;                // scaling derivative of E
  double k_quadratic = 0.0;      // 2 int |grad u|^2
  double k_nonlinear = 0.0;      // k - k_quadratic, from its own integrals
  double k_critical = 0.0;       // 2 int |grad u|^2 - 2 int |u|^{2*}
  double h = 0.0;                // (1/2d) (int |grad u|^2 + int |u|^{2*})
  double grad_norm_sq = 0.0;
  double norm_critical = 0.0;    // int |u|^{2*}
  double norm_subcritical = 0.0; // int |u|^{(2d+2)/(d-1)}
  std::vector<double> momentum;  // exactly zero for radial fields
};

enum class Membership { KPlus, KMinus, AboveThreshold };

struct ThresholdResult {
  double m = 0.0;
  double grad_w_norm_sq = 0.0;
  double sobolev_constant = 0.0;
  double pde_residual = 0.0;
  double kc_of_w = 0.0;
};

// Raw norms of a closed-form spec, full-space quadrature.
struct SpecNorms {
  double mass_sq = 0.0;   // int |phi|^2
  double grad_sq = 0.0;   // int |phi'|^2
  double pow_crit = 0.0;  // int |phi|^{2d/(d-2)}
  double pow_sub = 0.0;   // int |phi|^{(2d+2)/(d-1)}
};

struct GridTooCoarseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double mu_bar(int dim) { return 4.0 * dim / (dim - 1.0); }
inline constexpr double mu_under = 0.0;  // min of the scaling weights; defined, never used downstream

double ground_state_value(int dim, double r);
double ground_state_derivative(int dim, double r);

RadialField evaluate(const FieldSpec& spec, const GridPtr& grid);
// Exact transform of the descriptor under phi -> e^{d*lambda} phi(e^{2*lambda} x).
FieldSpec scale(const FieldSpec& spec, double lambda, int dim);
RadialField ground_state(const GridPtr& grid);

SpecNorms spec_norms(const FieldSpec& spec, int dim);

// Functionals of a sampled field, grid quadrature.
FunctionalReport report(const RadialField& f);
// Functionals of a closed-form spec, full-space quadrature. Throws on Sampled.
FunctionalReport report_of_spec(const FieldSpec& spec, int dim);
FunctionalReport report_from_norms(const SpecNorms& ns, int dim);

ThresholdResult threshold(const RadialGrid& grid);

Membership classify_membership(const FunctionalReport& rep, double m);
const char* membership_name(Membership m);

}  // namespace cnls
