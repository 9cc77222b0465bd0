#include "cnls/solver.hpp"

#include <algorithm>
#include <span>
#include <cassert>
#include <cmath>

namespace cnls {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !(t_final > 0.0)) throw std::invalid_argument("solver: dt and t_final must be positive");
  if (dt > t_final) throw std::invalid_argument("solver: dt must not exceed t_final");
  if (!(dt_min < dt)) throw std::invalid_argument("solver: dt_min must be below dt");
  if (!(blowup_factor > 1.0)) throw std::invalid_argument("solver: blowup_factor must exceed 1");
  if (observe_every < 1) throw std::invalid_argument("solver: observe_every must be >= 1");
}

namespace {

// Conservative-form radial Laplacian. Face coefficients are built from the
// recursion g_i = g_{i-1} + d h r_i^{d-1}, which makes the stencil exact on
// r^2 at every node and exactly self-adjoint under the volume weights v;
// the Cayley transform (I - i dt/2 A)^{-1}(I + i dt/2 A) is then unitary in
// the v-inner product.
struct RadialOperator {
  std::vector<double> lo, di, up;  // tridiagonal rows of A
  std::vector<double> face;        // v_i A_{i,i+1} = sigma b_{i+1/2} / h
  std::vector<double> v;           // inner-product weights
};

RadialOperator build_operator(const RadialGrid& g) {
  const int n = g.n;
  const int d = g.dim;
  const double h = g.dr;

  RadialOperator op;
  op.face = face_weights(g);
  op.v = volume_weights(g);
  op.lo.assign(n, 0.0);
  op.di.assign(n, 0.0);
  op.up.assign(n, 0.0);

  op.up[0] = 2.0 * d / (h * h);  // equals face[0] / v[0]
  op.di[0] = -op.up[0];
  for (int i = 1; i < n - 1; ++i) {
    op.up[i] = op.face[i] / op.v[i];
    op.lo[i] = op.face[i - 1] / op.v[i];
    op.di[i] = -(op.up[i] + op.lo[i]);
  }
  return op;
}

// Thomas solve of (I - i theta A) x = rhs on nodes 0..n-2 (u_{n-1} = 0).
// The matrix is strictly diagonally dominant, so no pivoting is needed.
void cn_solve(const RadialOperator& op, double theta, std::vector<cplx>& u,
              std::vector<cplx>& rhs, std::vector<cplx>& scratch) {
  const std::size_t m = u.size() - 1;
  const cplx itheta(0.0, theta);

  apply_tridiag(op.lo, op.di, op.up, u, scratch);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = u[i] + itheta * scratch[i];

  // forward elimination
  cplx diag = 1.0 - itheta * op.di[0];
  assert(std::abs(diag) > 0.0);
  scratch[0] = (-itheta * op.up[0]) / diag;
  rhs[0] /= diag;
  for (std::size_t i = 1; i < m; ++i) {
    const cplx a = -itheta * op.lo[i];
    diag = (1.0 - itheta * op.di[i]) - a * scratch[i - 1];
    assert(std::abs(diag) > 0.0);
    scratch[i] = (-itheta * op.up[i]) / diag;
    rhs[i] = (rhs[i] - a * rhs[i - 1]) / diag;
  }
  // back substitution
  u[m - 1] = rhs[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) u[i] = rhs[i] - scratch[i] * u[i + 1];
  u[m] = cplx{};
}

std::vector<double> sponge_profile(const RadialGrid& g, double strength = 10.0) {
  std::vector<double> gamma(g.n, 0.0);
  const double start = 0.9 * g.r_max;
  const double width = 0.1 * g.r_max;
  for (int i = 0; i < g.n; ++i) {
    const double s = (g.nodes[i] - start) / width;
    if (s <= 0.0) continue;
    const double t = std::min(s, 1.0);
    gamma[i] = strength * t * t * (3.0 - 2.0 * t);
  }
  return gamma;
}

}  // namespace

RadialField nonlinear_phase_step(const RadialField& f, double dt) {
  if (!all_finite(f)) throw std::invalid_argument("nonlinear_phase_step: non-finite field");
  const int d = f.grid->dim;
  RadialField out = f;
  phase_rotate(out.values, dt, 4.0 / (d - 2.0), 4.0 / (d - 1.0));
  return out;
}

RadialField linear_step(const RadialField& f, double dt) {
  if (!all_finite(f)) throw std::invalid_argument("linear_step: non-finite field");
  const RadialOperator op = build_operator(*f.grid);
  RadialField out = f;
  std::vector<cplx> rhs(f.values.size()), scratch(f.values.size());
  cn_solve(op, 0.5 * dt, out.values, rhs, scratch);
  return out;
}

double discrete_l2_sq(const RadialField& f) {
  const RadialOperator op = build_operator(*f.grid);
  return weighted_abs_pow_sum(op.v, f.values, 2.0);
}

double discrete_energy(const RadialField& f) {
  const auto& g = *f.grid;
  const RadialOperator op = build_operator(g);
  const int n = g.n;
  const double d = g.dim;
  double kin = 0.0;
  for (int i = 0; i < n - 1; ++i) kin += op.face[i] * std::norm(f.values[i + 1] - f.values[i]);
  const double c_crit = (d - 2.0) / (2.0 * d);
  const double c_sub = (d - 1.0) / (2.0 * d + 2.0);
  const double e_crit = d / (d - 2.0);
  const double e_sub = (d + 1.0) / (d - 1.0);
  double pot = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::norm(f.values[i]);
    if (x > 0.0) pot += op.v[i] * (-c_crit * std::pow(x, e_crit) + c_sub * std::pow(x, e_sub));
  }
  return 0.5 * kin + pot;
}

SimulationTrace evolve(const FieldSpec& u0, const GridPtr& grid, const SolverConfig& cfg,
                       const std::vector<double>& virial_radii) {
  return evolve(evaluate(u0, grid), cfg, virial_radii);
}

SimulationTrace evolve(const RadialField& u0, const SolverConfig& cfg,
                       const std::vector<double>& virial_radii) {
  cfg.validate();
  if (!all_finite(u0)) throw std::invalid_argument("evolve: non-finite initial data");

  const auto& g = *u0.grid;
  const int n = g.n;
  const int d = g.dim;
  const double alpha = 4.0 / (d - 2.0);
  const double beta = 4.0 / (d - 1.0);
  const double q_crit = 2.0 * (d + 2.0) / (d - 2.0);
  const double q_sub = 2.0 * (d + 2.0) / (d - 1.0);
  const double interior_radius = g.r_max / 10.0;

  const RadialOperator op = build_operator(g);
  const std::vector<double> gamma = cfg.sponge ? sponge_profile(g) : std::vector<double>{};

  int interior_count = 0;
  while (interior_count < n && g.nodes[interior_count] <= interior_radius) ++interior_count;
  int band_start = 0;
  while (band_start < n && g.nodes[band_start] < 0.9 * g.r_max) ++band_start;

  SimulationTrace tr;
  tr.dim = d;
  tr.r_max = g.r_max;
  tr.sponge_used = cfg.sponge;
  tr.virial_radii = virial_radii;

  RadialField u = u0;
  u.values[n - 1] = cplx{};  // Dirichlet wall

  auto observe = [&](double t) {
    tr.times.push_back(t);
    FunctionalReport rep = report(u);
    tr.grad_sq_series.push_back(rep.grad_norm_sq);
    tr.st_integrand_crit.push_back(weighted_abs_pow_sum(g.weights, u.values, q_crit));
    tr.st_integrand_sub.push_back(weighted_abs_pow_sum(g.weights, u.values, q_sub));
    tr.interior_critical.push_back(weighted_abs_pow_sum(
        std::span<const double>(g.weights).first(interior_count),
        std::span<const cplx>(u.values).first(interior_count), g.critical_exponent));
    std::vector<VirialSample> vs;
    std::vector<double> ext;
    vs.reserve(tr.virial_radii.size());
    ext.reserve(tr.virial_radii.size());
    for (double R : tr.virial_radii) {
      vs.push_back(virial(u, R, VirialCutoff::SectionFour));
      ext.push_back(exterior_energy(u, R));
    }
    tr.virials.push_back(std::move(vs));
    tr.exterior.push_back(std::move(ext));
    tr.reports.push_back(std::move(rep));
  };

  auto band_mass = [&] {
    return 0.5 * weighted_abs_pow_sum(
        std::span<const double>(g.weights).subspan(band_start),
        std::span<const cplx>(u.values).subspan(band_start), 2.0);
  };

  observe(0.0);
  const double mass0 = tr.reports[0].mass;
  const double grad0 = tr.reports[0].grad_norm_sq;
  const double band0 = band_mass();  // fat-tailed data may start with wall mass
  double grad_last = grad0;

  std::vector<cplx> rhs(n), scratch(n);
  double t = 0.0;
  double dt = cfg.dt;
  long long step = 0;

  while (t < cfg.t_final - 1e-15 * cfg.t_final) {
    const double dtt = std::min(dt, cfg.t_final - t);
    phase_rotate(u.values, 0.5 * dtt, alpha, beta);
    cn_solve(op, 0.5 * dtt, u.values, rhs, scratch);
    phase_rotate(u.values, 0.5 * dtt, alpha, beta);
    if (cfg.sponge)
      for (int i = band_start; i < n; ++i) u.values[i] *= std::exp(-dtt * gamma[i]);
    t += dtt;
    ++step;

    const bool at_end = t >= cfg.t_final - 1e-15 * cfg.t_final;
    if (step % cfg.observe_every != 0 && !at_end) continue;

    if (!all_finite(u)) throw SolverError("evolve: field became non-finite", std::move(tr));
    observe(t);
    const double grad = tr.grad_sq_series.back();

    if (grad0 > 0.0 && grad >= cfg.blowup_factor * grad0) {
      tr.outcome = {OutcomeKind::BlowUp, t};
      return tr;
    }
    if (!cfg.sponge && mass0 > 0.0 && band_mass() - band0 > 1e-3 * mass0) {
      tr.outcome = {OutcomeKind::BoundaryContaminated, t};
      return tr;
    }
    if (grad >= 2.0 * grad_last) {
      dt *= 0.5;
      if (dt < cfg.dt_min) {
        tr.outcome = {OutcomeKind::StepUnderflow, t};
        return tr;
      }
    } else if (grad <= grad_last && dt < cfg.dt) {
      dt = std::min(2.0 * dt, cfg.dt);
    }
    grad_last = grad;
    if (at_end) break;
  }

  tr.outcome = {OutcomeKind::ReachedTFinal, t};
  return tr;
}

}  // namespace cnls
