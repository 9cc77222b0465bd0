#include "cnls/variational.hpp"

#include <cmath>
#include <stdexcept>

namespace cnls {

namespace {

struct PathNorms {
  SpecNorms base;
  int dim;

  double grad(double l) const { return std::exp(4.0 * l) * base.grad_sq; }
  double crit(double l) const { return std::exp(4.0 * dim * l / (dim - 2.0)) * base.pow_crit; }
  double sub(double l) const { return std::exp(4.0 * dim * l / (dim - 1.0)) * base.pow_sub; }

  double energy(double l) const {
    const double d = dim;
    return 0.5 * grad(l) - (d - 2.0) / (2.0 * d) * crit(l) + (d - 1.0) / (2.0 * d + 2.0) * sub(l);
  }
  double k(double l) const {
    const double d = dim;
    return 2.0 * grad(l) - 2.0 * crit(l) + 2.0 * d / (d + 1.0) * sub(l);
  }
  double k_quadratic(double l) const { return 2.0 * grad(l); }
};

bool is_zero(const SpecNorms& ns) {
  return ns.mass_sq == 0.0 && ns.grad_sq == 0.0 && ns.pow_crit == 0.0 && ns.pow_sub == 0.0;
}

}  // namespace

std::vector<ScalingPathPoint> scaling_path(const FieldSpec& spec, int dim,
                                           std::span<const double> lambdas) {
  if (std::holds_alternative<SampledSpec>(spec))
    throw std::invalid_argument("scaling_path: closed-form spec required");
  const PathNorms pn{spec_norms(spec, dim), dim};
  const double d = dim;
  const double mb = mu_bar(dim);
  const double fd_step = 1e-4;

  std::vector<ScalingPathPoint> path;
  path.reserve(lambdas.size());
  for (double l : lambdas) {
    ScalingPathPoint p;
    p.lambda = l;
    p.j = pn.energy(l);
    p.jp = pn.k(l);
    p.jpp_formula = mb * p.jp - 8.0 * std::exp(4.0 * l) / (d - 1.0) * pn.base.grad_sq -
                    8.0 * d * std::exp(4.0 * d * l / (d - 2.0)) / ((d - 1.0) * (d - 2.0)) *
                        pn.base.pow_crit;
    p.jpp_fd = (pn.k(l + fd_step) - pn.k(l - fd_step)) / (2.0 * fd_step);
    path.push_back(p);
  }
  return path;
}

std::optional<double> find_lambda0(const FieldSpec& spec, int dim) {
  if (std::holds_alternative<SampledSpec>(spec))
    throw std::invalid_argument("find_lambda0: closed-form spec required");
  const PathNorms pn{spec_norms(spec, dim), dim};
  if (is_zero(pn.base)) throw std::invalid_argument("find_lambda0: zero field");
  const double k0 = pn.k(0.0);
  if (k0 == 0.0) throw std::invalid_argument("find_lambda0: K(phi) = 0");

  double lo, hi;
  if (k0 < 0.0) {
    lo = -20.0;
    hi = 0.0;
    if (!(pn.k(lo) > 0.0)) return std::nullopt;
  } else {
    lo = 0.0;
    hi = 20.0;
    if (!(pn.k(hi) < 0.0)) return std::nullopt;
  }
  // K(lo) and K(hi) have opposite signs; K(lo) > 0 in both cases.
  double mid = 0.5 * (lo + hi);
  while (hi - lo > 1e-12) {
    mid = 0.5 * (lo + hi);
    const double km = pn.k(mid);
    if (std::abs(km) <= 1e-8 * pn.k_quadratic(mid)) return mid;
    if (km > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

BoundReport check_lemma_3_9(const FunctionalReport& rep, double m, int dim) {
  if (!(rep.energy < m)) throw std::invalid_argument("check_lemma_3_9: requires E < m");
  const double d = dim;
  const double mb = mu_bar(dim);
  BoundReport br;
  br.k = rep.k;
  br.e = rep.energy;
  br.m = m;
  const double gap = mb * (m - rep.energy);
  if (rep.k < 0.0) {
    br.branch = BoundBranch::Negative;
    br.bound_value = -gap;
    br.satisfied = rep.k <= br.bound_value +
                               1e-6 * std::max(std::abs(br.bound_value), std::abs(rep.k));
  } else {
    br.branch = BoundBranch::NonNegative;
    const double structural = 2.0 / (2.0 * d - 3.0) * rep.grad_norm_sq +
                              2.0 * d / ((d + 1.0) * (2.0 * d - 3.0)) * rep.norm_subcritical;
    br.bound_value = std::min(gap, structural);
    br.satisfied = rep.k >= br.bound_value -
                               1e-6 * std::max(std::abs(br.bound_value), std::abs(rep.k));
  }
  return br;
}

std::optional<double> sampled_infimum(std::span<const FieldSpec> family, int dim,
                                      InfimumConstraint constraint) {
  if (family.empty()) throw std::invalid_argument("sampled_infimum: empty family");
  std::optional<double> best;
  for (const auto& spec : family) {
    const SpecNorms ns = spec_norms(spec, dim);
    if (is_zero(ns)) continue;
    const FunctionalReport rep = report_from_norms(ns, dim);
    const double c = constraint == InfimumConstraint::K_le_0 ? rep.k : rep.k_critical;
    if (c > 0.0) continue;
    if (!std::isfinite(rep.h)) continue;
    if (!best || rep.h < *best) best = rep.h;
  }
  return best;
}

}  // namespace cnls
