#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cnls/solver.hpp"
#include "oracles.hpp"

using namespace cnls;

namespace {

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace

TEST_CASE("nonlinear step is a pure pointwise phase rotation") {
  const GridPtr g = make_shared_grid(5, 1024, 40.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> vals(g->n);
  for (auto& v : vals) v = cplx(unif(rng), unif(rng));
  const RadialField f = make_field(g, vals);
  const RadialField out = nonlinear_phase_step(f, 0.01);
  for (int i = 0; i < g->n; ++i)
    CHECK(std::abs(std::abs(out.values[i]) - std::abs(f.values[i])) <=
          4e-16 * std::abs(f.values[i]));

  const RadialField z = nonlinear_phase_step(zero_field(g), 0.01);
  for (const auto& v : z.values) CHECK(v == cplx{});
}

TEST_CASE("nonlinear step on a constant-modulus field matches the closed form") {
  const GridPtr g = make_shared_grid(5, 512, 20.0);
  const double c = 1.7, dt = 0.05;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
  std::vector<cplx> vals(g->n);
  for (auto& v : vals) {
    const double th = unif(rng);
    v = c * cplx(std::cos(th), std::sin(th));
  }
  const RadialField f = make_field(g, vals);
  const RadialField out = nonlinear_phase_step(f, dt);
  const double advance = dt * (std::pow(c, 4.0 / 3.0) - c);
  const cplx rot(std::cos(advance), std::sin(advance));
  for (int i = 0; i < g->n; ++i)
    CHECK(std::abs(out.values[i] - f.values[i] * rot) <= 1e-14 * c);
}

TEST_CASE("linear step conserves the volume-weight norm to machine precision") {
  const GridPtr g = make_shared_grid(5, 2048, 80.0);
  RadialField u = evaluate(GaussianSpec{cplx(0.7, 0.4), 4.0}, g);
  u.values.back() = cplx{};
  const double n0 = discrete_l2_sq(u);
  for (int k = 0; k < 25; ++k) {
    u = linear_step(u, 1e-3);
    CHECK(rel(discrete_l2_sq(u), n0) <= 1e-12);
  }
  const RadialField z = linear_step(zero_field(g), 1e-3);
  for (const auto& v : z.values) CHECK(v == cplx{});
}

TEST_CASE("linear step also conserves the trapezoid mass per step") {
  const GridPtr g = make_shared_grid(5, 4096, 100.0);
  RadialField u = evaluate(GaussianSpec{1.0, 4.0}, g);
  u.values.back() = cplx{};
  double prev = weighted_abs_pow_sum(g->weights, u.values, 2.0);
  for (int k = 0; k < 20; ++k) {
    u = linear_step(u, 1e-3);
    const double cur = weighted_abs_pow_sum(g->weights, u.values, 2.0);
    CHECK(rel(cur, prev) <= 1e-12);
    prev = cur;
  }
}

TEST_CASE("free gaussian spreads by the exact width law") {
  // iu_t + Laplace u = 0 with u0 = e^{-r^2}: the r^2-moment grows by
  // 1 + 16 t^2 at unit width
  const GridPtr g = make_shared_grid(5, 4096, 16.0);
  RadialField u = evaluate(GaussianSpec{1.0, 1.0}, g);
  u.values.back() = cplx{};
  auto variance = [&](const RadialField& f) {
    std::vector<double> s(g->n);
    for (int i = 0; i < g->n; ++i) s[i] = g->nodes[i] * g->nodes[i] * std::norm(f.values[i]);
    return integrate(*g, s);
  };
  const double v0 = variance(u);
  const double dt = 1e-4, T = 0.1;
  for (int k = 0; k < static_cast<int>(T / dt + 0.5); ++k) u = linear_step(u, dt);
  CHECK(rel(variance(u) / v0, 1.0 + 16.0 * T * T) <= 1e-3);
}

TEST_CASE("evolve: zero data reaches t_final with an identically zero trace") {
  const GridPtr g = make_shared_grid(5, 1024, 60.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 0.05;
  cfg.observe_every = 10;
  const SimulationTrace tr = evolve(zero_field(g), cfg, {10.0});
  CHECK(tr.outcome.kind == OutcomeKind::ReachedTFinal);
  for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
  for (const auto& rep : tr.reports) {
    CHECK(rep.mass == 0.0);
    CHECK(rep.energy == 0.0);
  }
}

TEST_CASE("evolve: a small K+ gaussian conserves mass and energy") {
  const GridPtr g = make_shared_grid(5, 2048, 100.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 2.0;
  cfg.observe_every = 20;
  const SimulationTrace tr = evolve(FieldSpec(GaussianSpec{0.3, 4.0}), g, cfg, {});
  REQUIRE(tr.outcome.kind == OutcomeKind::ReachedTFinal);
  const double m0 = tr.reports[0].mass, e0 = tr.reports[0].energy;
  for (const auto& rep : tr.reports) {
    CHECK(rel(rep.mass, m0) <= 1e-8);
    CHECK(std::abs(rep.energy - e0) / (std::abs(e0) + oracle::kM5) <= 1e-5);
  }
}

TEST_CASE("evolve: a K- ground-state multiple blows up in finite time") {
  const GridPtr g = make_shared_grid(5, 2048, 100.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 5.0;
  cfg.blowup_factor = 50.0;
  cfg.observe_every = 5;
  const FieldSpec datum = ScaledGroundStateSpec{10.0, 0.0};
  const FunctionalReport rep0 = report_of_spec(datum, 5);
  REQUIRE(rep0.energy < oracle::kM5);
  REQUIRE(rep0.k < 0.0);
  const SimulationTrace tr = evolve(datum, g, cfg, {25.0});
  CHECK(tr.outcome.kind == OutcomeKind::BlowUp);
  CHECK(tr.outcome.t_stop < cfg.t_final);
  CHECK(tr.grad_sq_series.back() >= cfg.blowup_factor * tr.grad_sq_series.front());
}

TEST_CASE("evolve: dt halving bottoms out as StepUnderflow") {
  const GridPtr g = make_shared_grid(5, 1024, 100.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.dt_min = 8e-4;  // any halving underflows immediately
  cfg.t_final = 5.0;
  cfg.blowup_factor = 1e12;
  cfg.observe_every = 5;
  const SimulationTrace tr = evolve(FieldSpec(ScaledGroundStateSpec{10.0, 0.0}), g, cfg, {});
  CHECK(tr.outcome.kind == OutcomeKind::StepUnderflow);
}

TEST_CASE("evolve: outgoing wave trips the boundary monitor, sponge absorbs it") {
  // a narrow gaussian on a small box disperses into the wall quickly
  const GridPtr g = make_shared_grid(5, 1024, 25.0);
  SolverConfig cfg;
  cfg.dt = 5e-4;
  cfg.t_final = 8.0;
  cfg.observe_every = 10;
  const FieldSpec datum = GaussianSpec{0.5, 1.0};
  const SimulationTrace tr = evolve(datum, g, cfg, {});
  CHECK(tr.outcome.kind == OutcomeKind::BoundaryContaminated);
  CHECK(tr.outcome.t_stop < cfg.t_final);

  SolverConfig damped = cfg;
  damped.sponge = true;
  const SimulationTrace ts = evolve(datum, g, damped, {});
  CHECK(ts.outcome.kind == OutcomeKind::ReachedTFinal);
  CHECK(ts.sponge_used);
  // the absorbing layer removes mass rather than reflecting it
  CHECK(ts.reports.back().mass < 0.9 * ts.reports.front().mass);
}

TEST_CASE("strang step: one step vs two half steps is third-order small") {
  const GridPtr g = make_shared_grid(5, 2048, 50.0);
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
  CHECK(local_err(4e-3) / local_err(2e-3) >= 6.0);
}

TEST_CASE("semi-discrete energy drifts at second order in dt") {
  const GridPtr g = make_shared_grid(5, 2048, 60.0);
  auto drift = [&](double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_final = 0.5;
    cfg.observe_every = 8;
    RadialField u = evaluate(GaussianSpec{2.0, 2.0}, g);
    u.values.back() = cplx{};
    const double e0 = discrete_energy(u);
    double worst = 0.0;
    for (double t = 0.0; t < cfg.t_final - 1e-12; t += dt) {
      u = nonlinear_phase_step(u, 0.5 * dt);
      u = linear_step(u, dt);
      u = nonlinear_phase_step(u, 0.5 * dt);
      worst = std::max(worst, std::abs(discrete_energy(u) - e0));
    }
    return worst;
  };
  CHECK(drift(2e-3) / drift(1e-3) >= 3.5);
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t_final = 1.0;
  cfg.dt_min = 1e-2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.dt_min = 1e-9;
  cfg.blowup_factor = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("evolve rejects non-finite initial data") {
  const GridPtr g = make_shared_grid(5, 64, 10.0);
  std::vector<cplx> bad(g->n, 1.0);
  bad[5] = cplx(std::numeric_limits<double>::infinity(), 0.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 0.01;
  CHECK_THROWS_AS(evolve(make_field(g, bad), cfg, {}), std::invalid_argument);
}
