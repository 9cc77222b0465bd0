#pragma once

#include <vector>

#include "cnls/grid.hpp"

namespace cnls {

struct SimulationTrace;  // defined in solver.hpp

// Two localized-virial cutoff families, both C^2 piecewise polynomial:
//
// SectionFour:   phi_R(x) = R^2 phi(|x|/R) with phi(s) = s^2 for s <= 1,
//                constant (= 3) for s >= 3, and phi'' <= 2 throughout. The
//                bridge on [1, 3] is the quintic
//                  phi = 1 + 4t + 4t^2 - 16t^3 + 14t^4 - 4t^5,  t = (s-1)/2.
//                Acts as |x|^2 wherever the field is supported inside R.
//
// SectionSixSix: phi_R(x) = R^2 phi(|x|^2/R^2) with 0 <= phi <= 1, phi = 1
//                for q <= 1, phi = 0 for q >= 2 (a smoothed mass
//                localization; the literal composition, see module notes).
//                phi' = -(10/7) p(q) with cubic-smoothstep ramps on
//                [1, 1.3] and [1.7, 2] around a flat plateau, which keeps
//                max |grad phi_R| = 2 R max |phi'(q)| sqrt(q) <= 4R.
enum class VirialCutoff { SectionFour, SectionSixSix };

struct VirialSample {
  double R = 0.0;
  double v = 0.0;      // int phi_R |u|^2
  double dt_v = 0.0;   // first monotonicity identity
  double dt2_v = 0.0;  // second identity
  double k_term = 0.0; // 4 K(u)
  double tail_term = 0.0;  // bound on the cutoff-error integrals over r >= R
};

struct TruncatedPosition {
  std::vector<double> value;        // exactly zero for radial fields
  bool radial_symmetry_exact = true;
};

struct SpacetimeNorms {
  double w1 = 0.0;
  double w2 = 0.0;
  double st = 0.0;  // max(w1, w2)
};

enum class OutcomeClass { BlowUpConfirmed, DispersiveConfirmed, Undecided };

struct OutcomeReport {
  OutcomeClass classification = OutcomeClass::Undecided;
  bool gradient_exceeded = false;
  bool virial_concave = false;
  bool critical_norm_halved = false;
  bool st_norm_saturated = false;
  bool exterior_decayed = false;
};

// Cutoff profile values for one radius; exposed for tests.
struct CutoffValues {
  double phi_R = 0.0;       // phi_R(r)
  double dphi_R = 0.0;      // d/dr phi_R
  double d2phi_R = 0.0;     // d^2/dr^2 phi_R
  double lap_phi_R = 0.0;   // Delta phi_R in R^d
  double bilap_phi_R = 0.0; // Delta^2 phi_R
};
CutoffValues cutoff_values(VirialCutoff cutoff, int dim, double R, double r);

VirialSample virial(const RadialField& f, double R, VirialCutoff cutoff);

// Three-term tail integral over r >= R: |grad u|^2 + |u|^{2*} + |u|^{p2}.
double exterior_energy(const RadialField& f, double R);

TruncatedPosition truncated_position(const RadialField& f, double R);

SpacetimeNorms spacetime_norms(const SimulationTrace& trace, const RadialGrid& grid);

OutcomeReport classify_outcome(const SimulationTrace& trace, double m);

const char* outcome_class_name(OutcomeClass c);

}  // namespace cnls
