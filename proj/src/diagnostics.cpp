#include "cnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cnls/solver.hpp"

namespace cnls {

namespace {

// Ramp width of the SectionSixSix cutoff in the q = (r/R)^2 variable.
constexpr double kRampWidth = 0.3;

struct Poly {                    // phi and q-derivatives at one point
  double f, d1, d2, d3, d4;
};

Poly section_four(double s) {
  if (s <= 1.0) return {s * s, 2.0 * s, 2.0, 0.0, 0.0};
  if (s >= 3.0) return {3.0, 0.0, 0.0, 0.0, 0.0};
  const double t = 0.5 * (s - 1.0);
  Poly p;
  p.f = 1.0 + 4.0 * t + 4.0 * t * t - 16.0 * t * t * t + 14.0 * t * t * t * t -
        4.0 * t * t * t * t * t;
  p.d1 = 2.0 + 4.0 * t - 24.0 * t * t + 28.0 * t * t * t - 10.0 * t * t * t * t;
  p.d2 = 2.0 - 24.0 * t + 42.0 * t * t - 20.0 * t * t * t;
  p.d3 = -12.0 + 42.0 * t - 30.0 * t * t;
  p.d4 = 21.0 - 30.0 * t;
  return p;
}

Poly section_six_six(double q) {
  const double del = kRampWidth;
  const double v = 1.0 / (1.0 - del);  // makes phi(2) = 0 exactly
  if (q <= 1.0) return {1.0, 0.0, 0.0, 0.0, 0.0};
  if (q >= 2.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
  auto S = [](double t) { return t * t * (3.0 - 2.0 * t); };
  auto Sp = [](double t) { return 6.0 * t * (1.0 - t); };
  auto Spp = [](double t) { return 6.0 - 12.0 * t; };
  auto T = [](double t) { return t * t * t - 0.5 * t * t * t * t; };
  if (q < 1.0 + del) {
    const double t = (q - 1.0) / del;
    return {1.0 - v * del * T(t), -v * S(t), -v * Sp(t) / del, -v * Spp(t) / (del * del),
            12.0 * v / (del * del * del)};
  }
  if (q <= 2.0 - del) {
    return {1.0 - v * (0.5 * del + (q - 1.0 - del)), -v, 0.0, 0.0, 0.0};
  }
  const double tau = (2.0 - q) / del;
  return {1.0 - v * ((1.0 - del) - del * T(tau)), -v * S(tau), v * Sp(tau) / del,
          -v * Spp(tau) / (del * del), -12.0 * v / (del * del * del)};
}

}  // namespace

CutoffValues cutoff_values(VirialCutoff cutoff, int dim, double R, double r) {
  CutoffValues cv;
  const double dm1 = dim - 1.0;
  const double dm3 = dim - 3.0;
  if (cutoff == VirialCutoff::SectionFour) {
    const double s = r / R;
    const Poly p = section_four(s);
    cv.phi_R = R * R * p.f;
    cv.dphi_R = R * p.d1;
    cv.d2phi_R = p.d2;
    if (s <= 1.0) {
      cv.lap_phi_R = 2.0 * dim;
      cv.bilap_phi_R = 0.0;
    } else {
      cv.lap_phi_R = p.d2 + dm1 * p.d1 / s;
      cv.bilap_phi_R =
          (p.d4 + 2.0 * dm1 * p.d3 / s + dm1 * dm3 * (p.d2 / (s * s) - p.d1 / (s * s * s))) /
          (R * R);
    }
  } else {
    const double q = (r / R) * (r / R);
    const Poly p = section_six_six(q);
    const double R2 = R * R;
    cv.phi_R = R2 * p.f;
    cv.dphi_R = 2.0 * r * p.d1;
    cv.d2phi_R = 2.0 * p.d1 + 4.0 * r * r * p.d2 / R2;
    cv.lap_phi_R = 2.0 * dim * p.d1 + 4.0 * r * r * p.d2 / R2;
    cv.bilap_phi_R = p.d2 / R2 * (12.0 + 24.0 * dm1 + 4.0 * dm1 * dm3) +
                     r * r * p.d3 / (R2 * R2) * (48.0 + 16.0 * dm1) +
                     16.0 * r * r * r * r * p.d4 / (R2 * R2 * R2);
  }
  return cv;
}

VirialSample virial(const RadialField& f, double R, VirialCutoff cutoff) {
  const auto& g = *f.grid;
  if (!(R > 0.0) || R > g.r_max / 3.0)
    throw std::invalid_argument("virial: R must lie in (0, r_max/3]");
  const int n = g.n;
  const int d = g.dim;
  const double d2_ref = cutoff == VirialCutoff::SectionFour ? 2.0 : 0.0;
  const double lap_ref = cutoff == VirialCutoff::SectionFour ? 2.0 * d : 0.0;

  const RadialField du = radial_derivative(f);  // first identity only

  // node-based pieces
  std::vector<double> s_v(n), s_dt(n), s_dt2(n), s_tail(n), s_crit(n), s_sub(n);
  const double half_crit = 0.5 * g.critical_exponent;
  const double half_sub = 0.5 * g.subcritical_exponent;
  for (int i = 0; i < n; ++i) {
    const CutoffValues cv = cutoff_values(cutoff, d, R, g.nodes[i]);
    const double a2 = std::norm(f.values[i]);
    const double acrit = a2 > 0.0 ? std::pow(a2, half_crit) : 0.0;
    const double asub = a2 > 0.0 ? std::pow(a2, half_sub) : 0.0;
    s_crit[i] = acrit;
    s_sub[i] = asub;
    s_v[i] = cv.phi_R * a2;
    s_dt[i] = 2.0 * cv.dphi_R * std::imag(du.values[i] * std::conj(f.values[i]));
    s_dt2[i] = -cv.bilap_phi_R * a2 - 4.0 / d * cv.lap_phi_R * acrit +
               4.0 / (d + 1.0) * cv.lap_phi_R * asub;
    s_tail[i] = g.nodes[i] >= R
                    ? std::abs(cv.bilap_phi_R) * a2 +
                          4.0 / d * std::abs(cv.lap_phi_R - lap_ref) * acrit +
                          4.0 / (d + 1.0) * std::abs(cv.lap_phi_R - lap_ref) * asub
                    : 0.0;
  }

  // gradient pieces by the face quadrature, so the large-R reduction agrees
  // with the reported K to roundoff
  const std::vector<double> face = face_weights(g);
  std::vector<double> f_dt2(n - 1), f_tail(n - 1), f_grad(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const double mid = (i + 0.5) * g.dr;
    const CutoffValues cv = cutoff_values(cutoff, d, R, mid);
    const double dsq = std::norm(f.values[i + 1] - f.values[i]);
    f_grad[i] = dsq;
    f_dt2[i] = 4.0 * cv.d2phi_R * dsq;
    f_tail[i] = mid >= R ? 4.0 * std::abs(cv.d2phi_R - d2_ref) * dsq : 0.0;
  }

  VirialSample vs;
  vs.R = R;
  vs.v = weighted_sum(g.weights, s_v);
  vs.dt_v = weighted_sum(g.weights, s_dt);
  vs.dt2_v = weighted_sum(g.weights, s_dt2) + weighted_sum(face, f_dt2);
  vs.tail_term = weighted_sum(g.weights, s_tail) + weighted_sum(face, f_tail);
  const double grad_sq = weighted_sum(face, f_grad);
  const double crit = weighted_sum(g.weights, s_crit);
  const double sub = weighted_sum(g.weights, s_sub);
  vs.k_term = 4.0 * (2.0 * grad_sq - 2.0 * crit + 2.0 * d / (d + 1.0) * sub);
  return vs;
}

double exterior_energy(const RadialField& f, double R) {
  const auto& g = *f.grid;
  if (!(R > 0.0) || !(R < g.r_max))
    throw std::invalid_argument("exterior_energy: R must lie in (0, r_max)");
  const RadialField du = radial_derivative(f);
  const int n = g.n;
  std::vector<double> s(n, 0.0);
  const double half_crit = 0.5 * g.critical_exponent;
  const double half_sub = 0.5 * g.subcritical_exponent;
  for (int i = 0; i < n; ++i) {
    if (g.nodes[i] < R) continue;
    const double a2 = std::norm(f.values[i]);
    s[i] = std::norm(du.values[i]);
    if (a2 > 0.0) s[i] += std::pow(a2, half_crit) + std::pow(a2, half_sub);
  }
  return weighted_sum(g.weights, s);
}

TruncatedPosition truncated_position(const RadialField& f, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("truncated_position: R must be positive");
  // x phi(|x|/R) |u|^2 has odd integrand in every coordinate for radial u.
  return TruncatedPosition{std::vector<double>(f.grid->dim, 0.0), true};
}

SpacetimeNorms spacetime_norms(const SimulationTrace& trace, const RadialGrid& grid) {
  const std::size_t nobs = trace.times.size();
  if (nobs < 2) throw std::invalid_argument("spacetime_norms: need at least two observations");
  const double d = grid.dim;
  const double q1 = 2.0 * (d + 2.0) / (d - 2.0);
  const double q2 = 2.0 * (d + 2.0) / (d - 1.0);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 1; k < nobs; ++k) {
    const double dt = trace.times[k] - trace.times[k - 1];
    s1 += 0.5 * dt * (trace.st_integrand_crit[k] + trace.st_integrand_crit[k - 1]);
    s2 += 0.5 * dt * (trace.st_integrand_sub[k] + trace.st_integrand_sub[k - 1]);
  }
  SpacetimeNorms out;
  out.w1 = s1 > 0.0 ? std::pow(s1, 1.0 / q1) : 0.0;
  out.w2 = s2 > 0.0 ? std::pow(s2, 1.0 / q2) : 0.0;
  out.st = std::max(out.w1, out.w2);
  return out;
}

namespace {

// Least-squares quadratic fit y ~ a2 x^2 + a1 x + a0 on centered, scaled
// abscissae; returns the leading coefficient and its residual-based sigma.
bool quad_fit(const std::vector<double>& x, const std::vector<double>& y, double& a2,
              double& sigma_a2) {
  const std::size_t n = x.size();
  if (n < 5) return false;
  double xmin = x.front(), xmax = x.back();
  const double mid = 0.5 * (xmin + xmax), scl = std::max(0.5 * (xmax - xmin), 1e-300);
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (x[k] - mid) / scl;
    const double t2 = t * t;
    s0 += 1.0; s1 += t; s2 += t2; s3 += t2 * t; s4 += t2 * t2;
    b0 += y[k]; b1 += t * y[k]; b2 += t2 * y[k];
  }
  // normal equations for [c2, c1, c0] with M = [[s4,s3,s2],[s3,s2,s1],[s2,s1,s0]]
  const double det = s4 * (s2 * s0 - s1 * s1) - s3 * (s3 * s0 - s1 * s2) +
                     s2 * (s3 * s1 - s2 * s2);
  if (det == 0.0) return false;
  const double c2 = (b2 * (s2 * s0 - s1 * s1) - s3 * (b1 * s0 - b0 * s1) +
                     s2 * (b1 * s1 - b0 * s2)) / det;
  const double c1 = (s4 * (b1 * s0 - b0 * s1) - b2 * (s3 * s0 - s2 * s1) +
                     s2 * (s3 * b0 - s2 * b1)) / det;
  const double c0 = (s4 * (s2 * b0 - s1 * b1) - s3 * (s3 * b0 - s1 * b2) +
                     b2 * (s3 * s1 - s2 * s2)) / det;
  double rss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (x[k] - mid) / scl;
    const double r = y[k] - (c2 * t * t + c1 * t + c0);
    rss += r * r;
  }
  const double var = n > 3 ? rss / (n - 3) : 0.0;
  const double inv00 = (s2 * s0 - s1 * s1) / det;  // first diagonal entry of M^{-1}
  a2 = c2 / (scl * scl);
  sigma_a2 = std::sqrt(std::max(var * inv00, 0.0)) / (scl * scl);
  return true;
}

}  // namespace

OutcomeReport classify_outcome(const SimulationTrace& trace, [[maybe_unused]] double m) {
  OutcomeReport out;
  const std::size_t nobs = trace.times.size();
  if (nobs == 0) return out;

  out.gradient_exceeded = trace.outcome.kind == OutcomeKind::BlowUp;

  // quadratic fit of the first recorded V_R series over the final 25% of
  // observations (at least 20 points when available)
  if (!trace.virial_radii.empty() && nobs >= 5) {
    const std::size_t want = std::max<std::size_t>(20, (nobs + 3) / 4);
    const std::size_t k0 = nobs > want ? nobs - want : 0;
    std::vector<double> ts(trace.times.begin() + k0, trace.times.end());
    std::vector<double> vs;
    vs.reserve(nobs - k0);
    for (std::size_t k = k0; k < nobs; ++k) vs.push_back(trace.virials[k][0].v);
    double a2 = 0.0, sig = 0.0;
    if (quad_fit(ts, vs, a2, sig)) out.virial_concave = a2 < -2.0 * sig;
  }

  const double d = trace.dim;
  const double p_crit = 2.0 * d / (d - 2.0);
  double crit_max = 0.0;
  for (const auto& rep : trace.reports)
    crit_max = std::max(crit_max, std::pow(rep.norm_critical, 1.0 / p_crit));
  const double crit_final = std::pow(trace.reports.back().norm_critical, 1.0 / p_crit);
  out.critical_norm_halved = crit_max > 0.0 && crit_max >= 2.0 * crit_final;

  if (nobs >= 3) {
    const double t0 = trace.times.front(), t1 = trace.times.back();
    const double t90 = t0 + 0.9 * (t1 - t0);
    double s1 = 0.0, s2 = 0.0, s1_90 = 0.0, s2_90 = 0.0;
    for (std::size_t k = 1; k < nobs; ++k) {
      const double dt = trace.times[k] - trace.times[k - 1];
      s1 += 0.5 * dt * (trace.st_integrand_crit[k] + trace.st_integrand_crit[k - 1]);
      s2 += 0.5 * dt * (trace.st_integrand_sub[k] + trace.st_integrand_sub[k - 1]);
      if (trace.times[k] <= t90) {
        s1_90 = s1;
        s2_90 = s2;
      }
    }
    const double q1 = 2.0 * (d + 2.0) / (d - 2.0);
    const double q2 = 2.0 * (d + 2.0) / (d - 1.0);
    const double st_full = std::max(s1 > 0 ? std::pow(s1, 1.0 / q1) : 0.0,
                                    s2 > 0 ? std::pow(s2, 1.0 / q2) : 0.0);
    const double st_90 = std::max(s1_90 > 0 ? std::pow(s1_90, 1.0 / q1) : 0.0,
                                  s2_90 > 0 ? std::pow(s2_90, 1.0 / q2) : 0.0);
    out.st_norm_saturated = st_full > 0.0 && (st_full - st_90) < 0.01 * st_full;
  }

  const double int_first = trace.interior_critical.front();
  const double int_last = trace.interior_critical.back();
  out.exterior_decayed = int_first > 0.0 && int_last <= 0.5 * int_first;

  if (out.gradient_exceeded && out.virial_concave)
    out.classification = OutcomeClass::BlowUpConfirmed;
  else if (out.critical_norm_halved && out.st_norm_saturated)
    out.classification = OutcomeClass::DispersiveConfirmed;
  else
    out.classification = OutcomeClass::Undecided;
  return out;
}

const char* outcome_class_name(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::BlowUpConfirmed: return "BlowUpConfirmed";
    case OutcomeClass::DispersiveConfirmed: return "DispersiveConfirmed";
    default: return "Undecided";
  }
}

}  // namespace cnls
