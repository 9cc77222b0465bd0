#include "cnls/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>

#include "cnls/quadrature.hpp"

namespace cnls {

double ground_state_value(int dim, double r) {
  const double a2 = static_cast<double>(dim) * (dim - 2);
  return std::pow(1.0 + r * r / a2, -0.5 * (dim - 2));
}

double ground_state_derivative(int dim, double r) {
  const double a2 = static_cast<double>(dim) * (dim - 2);
  return -((dim - 2) * r / a2) * std::pow(1.0 + r * r / a2, -0.5 * dim);
}

RadialField evaluate(const FieldSpec& spec, const GridPtr& grid) {
  const auto& g = *grid;
  std::vector<cplx> vals(g.n);
  if (const auto* gs = std::get_if<GaussianSpec>(&spec)) {
    const double inv_w2 = 1.0 / (gs->width * gs->width);
    for (int i = 0; i < g.n; ++i)
      vals[i] = gs->amplitude * std::exp(-g.nodes[i] * g.nodes[i] * inv_w2);
  } else if (const auto* ss = std::get_if<ScaledGroundStateSpec>(&spec)) {
    const double amp_scale = std::exp(g.dim * ss->lambda);
    const double r_scale = std::exp(2.0 * ss->lambda);
    for (int i = 0; i < g.n; ++i)
      vals[i] = ss->amplitude * amp_scale * ground_state_value(g.dim, r_scale * g.nodes[i]);
  } else {
    const auto& f = std::get<SampledSpec>(spec).field;
    const auto& fg = *f.grid;
    if (fg.dim != g.dim || fg.n != g.n || fg.r_max != g.r_max)
      throw std::invalid_argument("evaluate: sampled field grid does not match target grid");
    return f;
  }
  return make_field(grid, std::move(vals));
}

FieldSpec scale(const FieldSpec& spec, double lambda, int dim) {
  if (const auto* gs = std::get_if<GaussianSpec>(&spec)) {
    return GaussianSpec{gs->amplitude * std::exp(dim * lambda), gs->width * std::exp(-2.0 * lambda)};
  }
  if (const auto* ss = std::get_if<ScaledGroundStateSpec>(&spec)) {
    return ScaledGroundStateSpec{ss->amplitude, ss->lambda + lambda};
  }
  throw std::invalid_argument("scale: sampled fields have no exact scaling on a fixed grid");
}

RadialField ground_state(const GridPtr& grid) {
  if (grid->dim < 5)
    std::cerr << "cnls: warning: ground state requested for dim = " << grid->dim << " < 5\n";
  std::vector<cplx> vals(grid->n);
  for (int i = 0; i < grid->n; ++i) vals[i] = ground_state_value(grid->dim, grid->nodes[i]);
  return make_field(grid, std::move(vals));
}

namespace {

struct BaseNorms {
  double mass_sq, grad_sq, pow_crit, pow_sub;
};

// Full-space norms of W itself. W decays like r^{-(d-2)}, so the truncated
// part of the gradient norm is O(R^{-(d-2)}) and must not be dropped; the
// tail substitution in integrate_radial keeps everything at quadrature
// precision.
const BaseNorms& ground_state_norms(int dim) {
  static std::map<int, BaseNorms> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  const double p_crit = 2.0 * dim / (dim - 2.0);
  const double p_sub = (2.0 * dim + 2.0) / (dim - 1.0);
  const double core = 30.0 * std::sqrt(static_cast<double>(dim) * (dim - 2));
  BaseNorms b;
  b.mass_sq = integrate_radial(
      [&](double r) { double v = ground_state_value(dim, r); return v * v; }, dim, core);
  b.grad_sq = integrate_radial(
      [&](double r) { double v = ground_state_derivative(dim, r); return v * v; }, dim, core);
  b.pow_crit = integrate_radial(
      [&](double r) { return std::pow(ground_state_value(dim, r), p_crit); }, dim, core);
  b.pow_sub = integrate_radial(
      [&](double r) { return std::pow(ground_state_value(dim, r), p_sub); }, dim, core);
  return cache.emplace(dim, b).first->second;
}

}  // namespace

SpecNorms spec_norms(const FieldSpec& spec, int dim) {
  const double p_crit = 2.0 * dim / (dim - 2.0);
  const double p_sub = (2.0 * dim + 2.0) / (dim - 1.0);
  SpecNorms ns;
  if (const auto* gs = std::get_if<GaussianSpec>(&spec)) {
    const double a = std::abs(gs->amplitude);
    const double w = gs->width;
    if (a == 0.0) return ns;
    auto absval = [&](double r) { return a * std::exp(-r * r / (w * w)); };
    const double core = 12.0 * w;
    ns.mass_sq = integrate_radial([&](double r) { double v = absval(r); return v * v; }, dim, core);
    ns.grad_sq = integrate_radial(
        [&](double r) {
          double v = absval(r) * 2.0 * r / (w * w);
          return v * v;
        },
        dim, core);
    ns.pow_crit = integrate_radial([&](double r) { return std::pow(absval(r), p_crit); }, dim, core);
    ns.pow_sub = integrate_radial([&](double r) { return std::pow(absval(r), p_sub); }, dim, core);
  } else if (const auto* ss = std::get_if<ScaledGroundStateSpec>(&spec)) {
    const double a = std::abs(ss->amplitude);
    const double l = ss->lambda;
    if (a == 0.0) return ns;
    const BaseNorms& b = ground_state_norms(dim);
    ns.mass_sq = a * a * b.mass_sq;  // L^2 invariant under the scaling
    ns.grad_sq = a * a * std::exp(4.0 * l) * b.grad_sq;
    ns.pow_crit = std::pow(a, p_crit) * std::exp(4.0 * dim * l / (dim - 2.0)) * b.pow_crit;
    ns.pow_sub = std::pow(a, p_sub) * std::exp(4.0 * dim * l / (dim - 1.0)) * b.pow_sub;
  } else {
    throw std::invalid_argument("spec_norms: closed-form spec required");
  }
  return ns;
}

FunctionalReport report_from_norms(const SpecNorms& ns, int dim) {
  const double d = dim;
  FunctionalReport rep;
  rep.mass = 0.5 * ns.mass_sq;
  rep.grad_norm_sq = ns.grad_sq;
  rep.norm_critical = ns.pow_crit;
  rep.norm_subcritical = ns.pow_sub;
  rep.energy = 0.5 * ns.grad_sq - (d - 2.0) / (2.0 * d) * ns.pow_crit +
               (d - 1.0) / (2.0 * d + 2.0) * ns.pow_sub;
  rep.critical_energy = 0.5 * ns.grad_sq - (d - 2.0) / (2.0 * d) * ns.pow_crit;
  rep.k_quadratic = 2.0 * ns.grad_sq;
  rep.k_nonlinear = -2.0 * ns.pow_crit + 2.0 * d / (d + 1.0) * ns.pow_sub;
  rep.k = rep.k_quadratic + rep.k_nonlinear;
  rep.k_critical = 2.0 * ns.grad_sq - 2.0 * ns.pow_crit;
  rep.h = (ns.grad_sq + ns.pow_crit) / (2.0 * d);
  rep.momentum.assign(dim, 0.0);
  return rep;
}

FunctionalReport report(const RadialField& f) {
  const auto& g = *f.grid;
  SpecNorms ns;
  ns.grad_sq = gradient_norm_sq(f);
  ns.mass_sq = weighted_abs_pow_sum(g.weights, f.values, 2.0);
  ns.pow_crit = weighted_abs_pow_sum(g.weights, f.values, g.critical_exponent);
  ns.pow_sub = weighted_abs_pow_sum(g.weights, f.values, g.subcritical_exponent);
  return report_from_norms(ns, g.dim);
}

FunctionalReport report_of_spec(const FieldSpec& spec, int dim) {
  if (std::holds_alternative<SampledSpec>(spec))
    return report(std::get<SampledSpec>(spec).field);
  return report_from_norms(spec_norms(spec, dim), dim);
}

ThresholdResult threshold(const RadialGrid& grid) {
  if (grid.n < 1024 || grid.r_max < 50.0)
    throw GridTooCoarseError("threshold: grid must have n >= 1024 and r_max >= 50");

  const int d = grid.dim;
  const double p_force = (d + 2.0) / (d - 2.0);  // exponent in -ΔW = W^{(d+2)/(d-2)}

  std::vector<cplx> wv(grid.n);
  for (int i = 0; i < grid.n; ++i) wv[i] = ground_state_value(d, grid.nodes[i]);
  RadialField wf{std::make_shared<const RadialGrid>(grid), std::move(wv)};
  const RadialField lap = laplacian(wf);

  double max_forcing = 0.0, max_res = 0.0;
  for (int i = 0; i + 1 < grid.n; ++i) {
    if (grid.nodes[i] > 0.5 * grid.r_max) break;
    const double forcing = std::pow(wf.values[i].real(), p_force);
    max_forcing = std::max(max_forcing, forcing);
    max_res = std::max(max_res, std::abs(-lap.values[i].real() - forcing));
  }
  ThresholdResult res;
  res.pde_residual = max_res / max_forcing;
  if (res.pde_residual > 1e-3)
    throw GridTooCoarseError("threshold: ground-state PDE residual exceeds 1e-3");

  const SpecNorms ns = spec_norms(ScaledGroundStateSpec{1.0, 0.0}, d);
  res.grad_w_norm_sq = ns.grad_sq;
  // E^c(W) reduces to (1/d) int |grad W|^2 once int |grad W|^2 = int |W|^{2*}
  // is used; computing m in the reduced form keeps the two expressions
  // identical by construction while kc_of_w measures the identity honestly.
  res.m = ns.grad_sq / d;
  res.kc_of_w = 2.0 * (ns.grad_sq - ns.pow_crit);
  res.sobolev_constant = std::pow(ns.pow_crit, 1.0 / (2.0 * d / (d - 2.0))) / std::sqrt(ns.grad_sq);
  return res;
}

Membership classify_membership(const FunctionalReport& rep, double m) {
  if (rep.energy >= m) return Membership::AboveThreshold;
  return rep.k >= 0.0 ? Membership::KPlus : Membership::KMinus;
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::KPlus: return "KPlus";
    case Membership::KMinus: return "KMinus";
    default: return "AboveThreshold";
  }
}

}  // namespace cnls
