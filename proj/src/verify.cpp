#include <algorithm>
#include <cmath>
#include <random>

#include "cnls/harness.hpp"
#include "cnls/variational.hpp"

namespace cnls {

namespace {

struct Suite {
  const ExperimentConfig& cfg;
  std::vector<CheckResult> out;

  void add(const std::string& name, double measured, double tol, bool pass_iff_leq = true,
           const std::string& detail = "") {
    CheckResult r;
    r.name = name;
    r.measured = measured;
    r.tolerance = tol;
    r.passed = pass_iff_leq ? (measured <= tol) : (measured >= tol);
    r.detail = detail;
    out.push_back(std::move(r));
  }
  void add_flag(const std::string& name, bool ok, const std::string& detail = "") {
    CheckResult r;
    r.name = name;
    r.measured = ok ? 1.0 : 0.0;
    r.tolerance = 1.0;
    r.passed = ok;
    r.detail = detail;
    out.push_back(std::move(r));
  }
};

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// --- grid ------------------------------------------------------------------

void grid_checks(Suite& s) {
  const ExperimentConfig& cfg = s.cfg;
  const GridPtr grid = make_shared_grid(cfg.dim, cfg.grid_n, cfg.grid_r_max);

  double wsum = 0.0;
  for (double w : grid->weights) wsum += w;
  s.add("grid.ball_volume", rel_diff(wsum, ball_volume(cfg.dim, cfg.grid_r_max)), 1e-4);

  // second-order convergence visible on a grid coarse enough that the
  // trapezoid error is above the roundoff floor
  auto gauss_err = [&](int n) {
    const RadialGrid g = make_grid(cfg.dim, n, 12.0);
    std::vector<double> f(g.n);
    for (int i = 0; i < g.n; ++i) f[i] = std::exp(-g.nodes[i] * g.nodes[i]);
    const double exact = std::pow(M_PI, 0.5 * cfg.dim);
    return std::abs(integrate(g, f) - exact);
  };
  const double e_coarse = gauss_err(33), e_fine = gauss_err(65);
  s.add("grid.quadrature_convergence", e_fine > 0.0 ? e_coarse / e_fine : 1e9, 3.5, false);

  // discrete integration by parts: int (lap u) v = -int u_r v_r up to O(dr^2)
  {
    const GridPtr g = make_shared_grid(cfg.dim, std::max(cfg.grid_n, 1024), cfg.grid_r_max);
    std::vector<cplx> uv(g->n), vv(g->n);
    for (int i = 0; i < g->n; ++i) {
      const double r = g->nodes[i];
      uv[i] = std::exp(-r * r / 9.0);
      vv[i] = r * r * std::exp(-r * r / 16.0);
    }
    RadialField u = make_field(g, std::move(uv)), v = make_field(g, std::move(vv));
    const RadialField lu = laplacian(u), du = radial_derivative(u), dv = radial_derivative(v);
    std::vector<double> a(g->n), b(g->n);
    for (int i = 0; i < g->n; ++i) {
      a[i] = lu.values[i].real() * v.values[i].real();
      b[i] = du.values[i].real() * dv.values[i].real();
    }
    const double lhs = integrate(*g, a), rhs = -integrate(*g, b);
    s.add("grid.laplacian_derivative_consistency", rel_diff(lhs, rhs),
          std::max(1e-8, 20.0 * g->dr * g->dr));
  }

  // integrate f(e^{2l} r) e^{2dl} = integrate f for closed-form f
  {
    const double l = 0.15;
    std::vector<double> f(grid->n), fs(grid->n);
    for (int i = 0; i < grid->n; ++i) {
      const double r = grid->nodes[i];
      f[i] = std::exp(-r * r);
      const double rs = std::exp(2.0 * l) * r;
      fs[i] = std::exp(-rs * rs) * std::exp(2.0 * cfg.dim * l);
    }
    s.add("grid.quadrature_scaling", rel_diff(integrate(*grid, f), integrate(*grid, fs)), 1e-6);
  }

  // ground-state PDE residual at the configured resolution
  {
    const RadialField w = ground_state(grid);
    const RadialField lap = laplacian(w);
    const double p = (cfg.dim + 2.0) / (cfg.dim - 2.0);
    double max_res = 0.0, max_f = 0.0;
    for (int i = 0; i + 1 < grid->n && grid->nodes[i] <= 0.5 * grid->r_max; ++i) {
      const double forcing = std::pow(w.values[i].real(), p);
      max_f = std::max(max_f, forcing);
      max_res = std::max(max_res, std::abs(-lap.values[i].real() - forcing));
    }
    s.add("grid.pde_residual", max_res / max_f, 1e-3);
  }
}

// --- functionals -----------------------------------------------------------

void functional_checks(Suite& s) {
  const int d = s.cfg.dim;
  const std::vector<FieldSpec> samples = {
      GaussianSpec{cplx(0.7, 0.2), 1.3}, GaussianSpec{2.5, 0.6},
      ScaledGroundStateSpec{1.1, 0.2}, ScaledGroundStateSpec{cplx(0.0, 0.8), -0.4}};

  double worst_scaling = 0.0;
  for (const auto& spec : samples) {
    const SpecNorms base = spec_norms(spec, d);
    for (double l : {-0.3, -0.1, 0.1, 0.3}) {
      const SpecNorms sc = spec_norms(scale(spec, l, d), d);
      worst_scaling = std::max({worst_scaling, rel_diff(sc.mass_sq, base.mass_sq),
                                rel_diff(sc.grad_sq, std::exp(4.0 * l) * base.grad_sq),
                                rel_diff(sc.pow_crit,
                                         std::exp(4.0 * d * l / (d - 2.0)) * base.pow_crit),
                                rel_diff(sc.pow_sub,
                                         std::exp(4.0 * d * l / (d - 1.0)) * base.pow_sub)});
    }
  }
  s.add("functionals.exact_scaling_laws", worst_scaling, 1e-8);

  double worst_l33 = 0.0, worst_l38 = 0.0;
  for (const auto& spec : samples) {
    const FunctionalReport rep = report_of_spec(spec, d);
    const double lhs = mu_bar(d) * rep.energy - rep.k;
    const double rhs = 2.0 / (d - 1.0) * (rep.grad_norm_sq + rep.norm_critical);
    worst_l33 = std::max(worst_l33, rel_diff(lhs, rhs));
    if (rep.k >= 0.0) {
      const double upper = 0.5 * rep.grad_norm_sq +
                           (d - 1.0) / (2.0 * d + 2.0) * rep.norm_subcritical;
      const double slack = 1e-12 * std::max(std::abs(rep.energy), 1.0);
      if (!(rep.h <= rep.energy + slack && rep.energy <= upper + slack))
        worst_l38 = 1.0;
    }
  }
  s.add("functionals.lemma_3_3_identity", worst_l33, 1e-10);
  s.add("functionals.lemma_3_8_sandwich", worst_l38, 0.0);

  bool small_positive = true;
  for (double a = 1e-3; a <= 1.0; a *= 2.0) {
    const FunctionalReport rep = report_of_spec(GaussianSpec{a, 1.0}, d);
    small_positive = small_positive && rep.k > 0.0;
  }
  s.add_flag("functionals.small_field_k_positive", small_positive, "gaussian widths 1, a in (0,1]");

  const GridPtr grid = make_shared_grid(d, std::max(s.cfg.grid_n, 1024), s.cfg.grid_r_max);
  const FunctionalReport wrep = report(ground_state(grid));
  bool momentum_zero = wrep.momentum.size() == static_cast<std::size_t>(d);
  for (double p : wrep.momentum) momentum_zero = momentum_zero && p == 0.0;
  s.add_flag("functionals.momentum_exact_zero", momentum_zero);

  const ThresholdResult th = threshold(*grid);
  s.add("functionals.threshold_pohozaev_route", rel_diff(th.m, th.grad_w_norm_sq / d), 1e-10);
  s.add("functionals.threshold_sobolev_route",
        rel_diff(th.m, std::pow(th.sobolev_constant, -d) / d), 1e-4);
  s.add("functionals.threshold_kc_small", std::abs(th.kc_of_w) / th.grad_w_norm_sq, 1e-4);
}

// --- variational -----------------------------------------------------------

void variational_checks(Suite& s) {
  const int d = s.cfg.dim;
  const GridPtr grid = make_shared_grid(d, std::max(s.cfg.grid_n, 1024), s.cfg.grid_r_max);
  const double m = threshold(*grid).m;

  const FieldSpec probe = GaussianSpec{0.5, 1.0};
  std::vector<double> lambdas;
  for (double l = -1.0; l <= 1.0 + 1e-12; l += 0.125) lambdas.push_back(l);
  const auto path = scaling_path(probe, d, lambdas);

  double worst_path = 0.0, worst_ode = 0.0, worst_mass = 0.0;
  const double mass0 = report_of_spec(probe, d).mass;
  for (const auto& p : path) {
    const FunctionalReport rep = report_of_spec(scale(probe, p.lambda, d), d);
    worst_path = std::max(worst_path, rel_diff(p.jp, rep.k));
    worst_mass = std::max(worst_mass, rel_diff(rep.mass, mass0));
    const double err = std::abs(p.jpp_formula - p.jpp_fd);
    worst_ode = std::max(worst_ode, err / std::max(1e-8 / 1e-6, std::abs(p.jpp_formula)));
  }
  s.add("variational.path_consistency", worst_path, 1e-10);
  s.add("variational.eq_3_6_formula_vs_fd", worst_ode, 1e-6);
  s.add("variational.mass_invariant_on_path", worst_mass, 1e-10);

  bool tail_ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double l : {-3.0, -4.0, -5.0}) {
    const double kp = report_of_spec(scale(probe, l, d), d).k;
    tail_ok = tail_ok && kp > 0.0 && std::abs(kp) < prev;
    prev = std::abs(kp);
  }
  s.add_flag("variational.k_positive_shrinking_tail", tail_ok, "lambda -> -inf along the path");

  // Monte-Carlo bound suite over >= 1000 fields with E < m
  {
    std::mt19937_64 rng(s.cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int accepted = 0, violations = 0;
    long long draws = 0;
    while (accepted < 1000 && draws < 2000000) {
      ++draws;
      FieldSpec spec;
      const double amp = std::exp(std::log(1e-2) + unif(rng) * (std::log(30.0) - std::log(1e-2)));
      if (draws % 2 == 0) {
        const double width = std::exp(std::log(0.25) + unif(rng) * (std::log(8.0) - std::log(0.25)));
        spec = GaussianSpec{amp, width};
      } else {
        spec = ScaledGroundStateSpec{amp, -2.0 + 4.0 * unif(rng)};
      }
      const FunctionalReport rep = report_of_spec(spec, d);
      if (!(rep.energy < m)) continue;
      ++accepted;
      if (!check_lemma_3_9(rep, m, d).satisfied) ++violations;
    }
    s.add("variational.lemma_3_9_monte_carlo", static_cast<double>(violations), 0.0, true,
          std::to_string(accepted) + " samples below threshold");
  }

  // infimum floors and the cW sharpness witness
  {
    std::vector<FieldSpec> kc_family;
    for (double c = 1.0; c <= 3.0 + 1e-12; c += 0.05)
      kc_family.push_back(ScaledGroundStateSpec{c, 0.0});
    const auto inf_kc = sampled_infimum(kc_family, d, InfimumConstraint::Kc_le_0);
    s.add_flag("variational.infimum_kc_floor",
               inf_kc && *inf_kc >= m * (1.0 - 1e-3) && *inf_kc <= m * (1.0 + 1e-2),
               "cW family, c in [1,3]");

    std::vector<FieldSpec> k_family = kc_family;
    for (double a = 22.0; a <= 30.0; a += 1.0) k_family.push_back(GaussianSpec{a, 1.0});
    for (double c = 4.0; c <= 9.0; c += 0.5) k_family.push_back(ScaledGroundStateSpec{c, 0.0});
    const auto inf_k = sampled_infimum(k_family, d, InfimumConstraint::K_le_0);
    s.add_flag("variational.infimum_k_floor", inf_k && *inf_k >= m * (1.0 - 1e-3),
               "mixed family");

    std::vector<FieldSpec> small;
    for (double a = 0.05; a <= 0.5; a += 0.05) small.push_back(GaussianSpec{a, 1.0});
    s.add_flag("variational.infimum_empty_result",
               !sampled_infimum(small, d, InfimumConstraint::K_le_0).has_value(),
               "small gaussians all have K > 0");
  }

  // lambda0 root finding on both branches
  {
    const FieldSpec neg = GaussianSpec{25.0, 1.0};
    const FunctionalReport nrep = report_of_spec(neg, d);
    bool ok = nrep.k < 0.0;
    const auto l0 = find_lambda0(neg, d);
    ok = ok && l0.has_value() && *l0 < 0.0;
    if (ok) {
      const FunctionalReport at_root = report_of_spec(scale(neg, *l0, d), d);
      ok = std::abs(at_root.k) <= 1e-8 * at_root.k_quadratic &&
           at_root.energy >= m * (1.0 - 1e-3);
    }
    const auto l0f = find_lambda0(GaussianSpec{0.5, 1.0}, d);
    ok = ok && l0f.has_value() && *l0f > 0.0;
    if (ok) {
      const FunctionalReport fw = report_of_spec(scale(GaussianSpec{0.5, 1.0}, *l0f, d), d);
      ok = fw.energy >= m * (1.0 - 1e-3);
    }
    s.add_flag("variational.lambda0_roots", ok, "K<0 backward root, K>0 forward root");
  }
}

// --- solver ----------------------------------------------------------------

void solver_checks(Suite& s) {
  const int d = s.cfg.dim;

  // exact unitarity of the linear step in the volume-weight norm
  {
    const GridPtr g = make_shared_grid(d, 1024, 60.0);
    RadialField u = evaluate(GaussianSpec{1.0, 4.0}, g);
    u.values.back() = cplx{};
    const double n0 = discrete_l2_sq(u);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      u = linear_step(u, 1e-3);
      worst = std::max(worst, rel_diff(discrete_l2_sq(u), n0));
    }
    s.add("solver.cn_unitary_volume_norm", worst, 1e-12);
  }

  // trapezoid-mass conservation over 1e5 full splitting steps
  {
    const GridPtr g = make_shared_grid(d, 1024, 100.0);
    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_final = 10.0;
    cfg.observe_every = 2000;
    const SimulationTrace tr = evolve(evaluate(GaussianSpec{0.3, 4.0}, g), cfg, {});
    double drift = 0.0;
    for (const auto& rep : tr.reports) drift = std::max(drift, rel_diff(rep.mass, tr.reports[0].mass));
    s.add("solver.mass_drift_1e5_steps", drift, 1e-8,
          true, outcome_kind_name(tr.outcome.kind));
  }

  // splitting is locally third order: one step vs two half steps
  {
    const GridPtr g = make_shared_grid(d, 2048, 50.0);
    const RadialField u0 = evaluate(GaussianSpec{1.5, 2.0}, g);
    auto strang = [&](const RadialField& f, double dt) {
      RadialField a = nonlinear_phase_step(f, 0.5 * dt);
      a = linear_step(a, dt);
      return nonlinear_phase_step(a, 0.5 * dt);
    };
    auto local_err = [&](double dt) {
      const RadialField one = strang(u0, dt);
      const RadialField two = strang(strang(u0, 0.5 * dt), 0.5 * dt);
      double acc = 0.0;
      for (int i = 0; i < g->n; ++i) acc += std::norm(one.values[i] - two.values[i]);
      return std::sqrt(acc);
    };
    const double e1 = local_err(4e-3), e2 = local_err(2e-3);
    s.add("solver.splitting_local_order", e2 > 0.0 ? e1 / e2 : 1e9, 6.0, false);
  }

  // drift of the semi-discrete energy is pure O(dt^2)
  {
    const GridPtr g = make_shared_grid(d, 2048, 50.0);
    auto drift_at = [&](double dt) {
      SolverConfig cfg;
      cfg.dt = dt;
      cfg.t_final = 0.5;
      cfg.observe_every = 16;
      const RadialField u0 = evaluate(GaussianSpec{2.0, 2.0}, g);
      const double e0 = discrete_energy(u0);
      RadialField u = u0;
      u.values.back() = cplx{};
      double worst = 0.0;
      double t = 0.0;
      while (t < cfg.t_final - 1e-12) {
        u = nonlinear_phase_step(u, 0.5 * dt);
        u = linear_step(u, dt);
        u = nonlinear_phase_step(u, 0.5 * dt);
        t += dt;
        worst = std::max(worst, std::abs(discrete_energy(u) - e0));
      }
      return worst;
    };
    const double e1 = drift_at(2e-3), e2 = drift_at(1e-3);
    s.add("solver.energy_drift_dt_order", e2 > 0.0 ? e1 / e2 : 1e9, 3.5, false);
  }

  // real initial data: discrete dV/dt at t = 0 vanishes with the identity
  {
    const GridPtr g = make_shared_grid(d, 1024, 60.0);
    SolverConfig cfg;
    cfg.dt = 1e-7;
    cfg.t_final = 2e-7;
    cfg.dt_min = 1e-12;
    cfg.observe_every = 1;
    const SimulationTrace tr = evolve(evaluate(GaussianSpec{0.05, 3.0}, g), cfg, {15.0});
    const double fd = (tr.virials[1][0].v - tr.virials[0][0].v) / (tr.times[1] - tr.times[0]);
    s.add("solver.real_data_initial_dtv", std::abs(fd), 1e-6,
          true, "first identity value is 0 for real data");
  }
}

// --- diagnostics -----------------------------------------------------------

void diagnostics_checks(Suite& s) {
  const int d = s.cfg.dim;

  // smooth run: finite differences of V_R(t) against the recorded identities
  {
    const GridPtr g = make_shared_grid(d, 8192, 50.0);
    SolverConfig cfg;
    cfg.dt = 2e-4;
    cfg.t_final = 0.24;
    cfg.observe_every = 5;
    const SimulationTrace tr =
        evolve(evaluate(GaussianSpec{cplx(0.5, 0.3), 2.0}, g), cfg, {12.0});
    double worst1 = 0.0, worst2 = 0.0;
    for (std::size_t k = 1; k + 1 < tr.times.size(); ++k) {
      const double dt = tr.times[k + 1] - tr.times[k];
      const double fd1 = (tr.virials[k + 1][0].v - tr.virials[k - 1][0].v) / (2.0 * dt);
      const double id1 = tr.virials[k][0].dt_v;
      worst1 = std::max(worst1, std::abs(fd1 - id1) /
                                    std::max(1e-8 / 1e-3, std::abs(id1)));
      const double fd2 = (tr.virials[k + 1][0].v - 2.0 * tr.virials[k][0].v +
                          tr.virials[k - 1][0].v) / (dt * dt);
      const double id2 = tr.virials[k][0].dt2_v;
      worst2 = std::max(worst2, std::abs(fd2 - id2) / std::max(1e-6 / 1e-2, std::abs(id2)));
    }
    s.add("diagnostics.virial_first_identity_fd", worst1, 1e-3);
    s.add("diagnostics.virial_second_identity_fd", worst2, 1e-2);
  }

  // compactly supported field, R beyond the support: dt2_v reduces to 4K
  {
    const GridPtr g = make_shared_grid(d, 4096, 90.0);
    std::vector<cplx> vals(g->n, cplx{});
    for (int i = 0; i < g->n; ++i) {
      const double r = g->nodes[i];
      if (r < 8.0) {
        const double b = 1.0 - (r / 8.0) * (r / 8.0);
        vals[i] = cplx(0.8 * b * b * b * b, 0.3 * b * b * b * b * b);
      }
    }
    const RadialField u = make_field(g, std::move(vals));
    const VirialSample vs = virial(u, 25.0, VirialCutoff::SectionFour);
    s.add("diagnostics.virial_large_r_matches_4k", rel_diff(vs.dt2_v, vs.k_term), 1e-6);
    s.add("diagnostics.exterior_energy_zero_beyond_support", exterior_energy(u, 10.0), 1e-12);
  }

  // |dt_v| <= 8 R sqrt(M) ||grad u|| for the smoothed mass cutoff
  {
    const GridPtr g = make_shared_grid(d, 2048, 80.0);
    bool ok = true;
    std::mt19937_64 rng(s.cfg.seed + 1);
    std::uniform_real_distribution<double> unif(0.2, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      const RadialField u =
          evaluate(GaussianSpec{cplx(unif(rng), unif(rng)), 1.0 + unif(rng)}, g);
      const FunctionalReport rep = report(u);
      for (double R : {5.0, 10.0, 20.0}) {
        const VirialSample vs = virial(u, R, VirialCutoff::SectionSixSix);
        const double bound = 8.0 * R * std::sqrt(rep.mass) * std::sqrt(rep.grad_norm_sq);
        ok = ok && std::abs(vs.dt_v) <= bound;
      }
    }
    s.add_flag("diagnostics.virial_rate_bound", ok, "smoothed-mass cutoff, random gaussians");
  }

  // truncated position is the exact zero vector
  {
    const GridPtr g = make_shared_grid(d, 1024, 60.0);
    const TruncatedPosition tp = truncated_position(evaluate(GaussianSpec{1.0, 2.0}, g), 10.0);
    bool ok = tp.radial_symmetry_exact && tp.value.size() == static_cast<std::size_t>(d);
    for (double v : tp.value) ok = ok && v == 0.0;
    s.add_flag("diagnostics.truncated_position_zero", ok);
  }

  // blow-up mechanism on a K^- run
  {
    const GridPtr g = make_shared_grid(d, 2048, 100.0);
    const double m = threshold(*g).m;
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 5.0;
    cfg.blowup_factor = 50.0;
    cfg.observe_every = 4;
    const FieldSpec datum = ScaledGroundStateSpec{10.0, 0.0};
    const SimulationTrace tr = evolve(datum, g, cfg, {25.0});
    const double e0 = tr.reports[0].energy;
    bool k_bound = true, grad_bound = true, concavity = true;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const auto& rep = tr.reports[k];
      k_bound = k_bound && rep.k <= -mu_bar(d) * (m - e0);
      grad_bound = grad_bound && rep.grad_norm_sq > d * m;
      const auto& vs = tr.virials[k][0];
      if (tr.times[k] > 0.0 && vs.tail_term <= 0.1 * std::abs(vs.k_term))
        concavity = concavity && vs.dt2_v <= 0.0;
    }
    const bool blew_up = tr.outcome.kind == OutcomeKind::BlowUp;
    s.add_flag("diagnostics.kminus_k_bound", blew_up && k_bound,
               "K(u(t)) <= -mu_bar (m - E) on every observation");
    s.add_flag("diagnostics.kminus_gradient_floor", blew_up && grad_bound,
               "grad norm above d*m on every observation");
    s.add_flag("diagnostics.kminus_concavity_window", blew_up && concavity,
               "dt2_v <= 0 wherever tails are below 10% of |4K|");
  }
}

// --- harness ---------------------------------------------------------------

void harness_checks(Suite& s) {
  const GridPtr g = make_shared_grid(s.cfg.dim, 1024, 60.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 0.05;
  cfg.observe_every = 10;
  const SimulationTrace tr = evolve(evaluate(GaussianSpec{0.5, 2.0}, g), cfg, {10.0, 15.0});
  const CsvTable table = parse_csv(trace_to_csv(tr));
  bool ok = table.rows.size() == tr.times.size() &&
            table.header.size() == 8 + 4 * tr.virial_radii.size();
  for (std::size_t k = 0; ok && k < tr.times.size(); ++k) {
    ok = table.rows[k][0] == tr.times[k] && table.rows[k][1] == tr.reports[k].mass &&
         table.rows[k][2] == tr.reports[k].energy && table.rows[k][3] == tr.reports[k].k &&
         table.rows[k][4] == tr.reports[k].grad_norm_sq &&
         table.rows[k][8] == tr.virials[k][0].v &&
         table.rows[k][14] == tr.exterior[k][0];
  }
  s.add_flag("harness.csv_roundtrip_exact", ok, "17 significant digits round-trip");
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const ExperimentConfig& cfg) {
  Suite s{cfg, {}};
  grid_checks(s);
  functional_checks(s);
  variational_checks(s);
  solver_checks(s);
  diagnostics_checks(s);
  harness_checks(s);
  return std::move(s.out);
}

}  // namespace cnls
