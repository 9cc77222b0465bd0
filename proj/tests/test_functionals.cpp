#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cnls/functionals.hpp"
#include "oracles.hpp"

using namespace cnls;

namespace {

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace

TEST_CASE("evaluate closed forms pointwise") {
  const GridPtr g = make_shared_grid(5, 1024, 40.0);
  const RadialField gauss = evaluate(GaussianSpec{1.0, 1.0}, g);
  CHECK(gauss.values[0] == cplx(1.0, 0.0));

  const RadialField w = evaluate(ScaledGroundStateSpec{1.0, 0.0}, g);
  CHECK(w.values[0] == cplx(1.0, 0.0));
  // at r^2 = d(d-2) the closed form halves its base: W = 2^{-(d-2)/2}
  CHECK(ground_state_value(5, std::sqrt(15.0)) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));

  const FieldSpec sampled = SampledSpec{w};
  const RadialField back = evaluate(sampled, g);
  CHECK(back.values == w.values);
  const GridPtr other = make_shared_grid(5, 512, 40.0);
  CHECK_THROWS_AS(evaluate(sampled, other), std::invalid_argument);
}

TEST_CASE("report of the zero field is identically zero") {
  const GridPtr g = make_shared_grid(5, 1024, 40.0);
  const FunctionalReport rep = report(zero_field(g));
  CHECK(rep.mass == 0.0);
  CHECK(rep.energy == 0.0);
  CHECK(rep.k == 0.0);
  CHECK(rep.h == 0.0);
  CHECK(rep.grad_norm_sq == 0.0);
}

TEST_CASE("grid report reproduces gaussian moments") {
  const GridPtr g = make_shared_grid(5, 16384, 12.0);
  const double a = 0.8;
  const FunctionalReport rep = report(evaluate(GaussianSpec{a, 1.0}, g));
  const auto ns = oracle::gaussian_norms(a, 1.0, 5);
  CHECK(rel(rep.mass, 0.5 * ns.mass_sq) <= 1e-6);
  CHECK(rel(rep.grad_norm_sq, ns.grad_sq) <= 1e-6);
}

TEST_CASE("closed-form report matches the Gamma/Beta oracles") {
  const auto ns = spec_norms(GaussianSpec{cplx(0.3, 0.4), 2.2}, 5);
  const auto ref = oracle::gaussian_norms(0.5, 2.2, 5);  // |0.3 + 0.4i| = 0.5
  CHECK(rel(ns.mass_sq, ref.mass_sq) <= 1e-12);
  CHECK(rel(ns.grad_sq, ref.grad_sq) <= 1e-12);
  CHECK(rel(ns.pow_crit, ref.pow_crit) <= 1e-12);
  CHECK(rel(ns.pow_sub, ref.pow_sub) <= 1e-12);

  const auto wn = spec_norms(ScaledGroundStateSpec{1.0, 0.0}, 5);
  CHECK(rel(wn.mass_sq, oracle::kMassW5) <= 1e-12);
  CHECK(rel(wn.grad_sq, oracle::kGradW5) <= 1e-12);
  CHECK(rel(wn.pow_crit, oracle::kGradW5) <= 1e-12);  // Pohozaev
  CHECK(rel(wn.pow_sub, oracle::kSubW5) <= 1e-12);
}

TEST_CASE("report on a sampled W: Pohozaev by grid quadrature") {
  const GridPtr g = make_shared_grid(5, 16384, 300.0);
  const FunctionalReport rep = report(ground_state(g));
  CHECK(std::abs(rep.k_critical) <= 1e-4 * rep.k_quadratic);
}

TEST_CASE("scale transforms descriptors exactly") {
  const FieldSpec gauss = GaussianSpec{1.0, 1.0};
  const FieldSpec same = scale(gauss, 0.0, 5);
  CHECK(std::get<GaussianSpec>(same).amplitude == cplx(1.0, 0.0));
  CHECK(std::get<GaussianSpec>(same).width == 1.0);

  const FieldSpec sc = scale(gauss, 0.2, 5);
  CHECK(std::get<GaussianSpec>(sc).amplitude.real() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(std::get<GaussianSpec>(sc).width == doctest::Approx(std::exp(-0.4)).epsilon(1e-15));

  const FieldSpec w = scale(ScaledGroundStateSpec{2.0, 0.3}, -0.1, 5);
  CHECK(std::get<ScaledGroundStateSpec>(w).lambda == doctest::Approx(0.2).epsilon(1e-15));

  const GridPtr g = make_shared_grid(5, 64, 10.0);
  CHECK_THROWS_AS(scale(FieldSpec(SampledSpec{zero_field(g)}), 0.1, 5), std::invalid_argument);
}

TEST_CASE("exact scaling laws of the four norms") {
  const FieldSpec base = GaussianSpec{1.0, 1.0};
  const SpecNorms b = spec_norms(base, 5);
  for (double l : {-0.3, -0.1, 0.1, 0.3}) {
    const SpecNorms s = spec_norms(scale(base, l, 5), 5);
    CHECK(rel(s.mass_sq, b.mass_sq) <= 1e-8);
    CHECK(rel(s.grad_sq, std::exp(4.0 * l) * b.grad_sq) <= 1e-8);
    CHECK(rel(s.pow_crit, std::exp(20.0 * l / 3.0) * b.pow_crit) <= 1e-8);
    CHECK(rel(s.pow_sub, std::exp(5.0 * l) * b.pow_sub) <= 1e-8);
  }
}

TEST_CASE("scaling laws also hold through the grid quadrature") {
  const GridPtr g = make_shared_grid(5, 8192, 60.0);
  const FieldSpec base = GaussianSpec{1.0, 1.0};
  const double m0 = report(evaluate(base, g)).mass;
  for (double l : {-0.3, 0.3}) {
    const double ml = report(evaluate(scale(base, l, 5), g)).mass;
    CHECK(rel(ml, m0) <= 1e-8);
  }
}

TEST_CASE("ground_state: monotone profile, tail convergence rate") {
  const GridPtr g = make_shared_grid(5, 2048, 100.0);
  const RadialField w = ground_state(g);
  CHECK(w.values[0].real() == 1.0);
  for (int i = 1; i < g->n; ++i) CHECK(w.values[i].real() < w.values[i - 1].real());

  // the full-space mass is domain-independent by construction...
  const double full = spec_norms(ScaledGroundStateSpec{1.0, 0.0}, 5).mass_sq;
  CHECK(rel(full, oracle::kMassW5) <= 1e-12);
  // ...while the truncated mass misses an O(1/R) tail that halves when the
  // domain doubles (the integrand decays like r^{-2(d-2)} r^{d-1})
  auto truncated = [&](double rmax) {
    const GridPtr gg = make_shared_grid(5, 16384, rmax);
    const RadialField ww = ground_state(gg);
    return weighted_abs_pow_sum(gg->weights, ww.values, 2.0);
  };
  const double d100 = full - truncated(100.0), d200 = full - truncated(200.0);
  CHECK(d100 / d200 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("threshold cross-identities at desk scale") {
  const ThresholdResult th = threshold(make_grid(5, 4096, 100.0));
  CHECK(rel(th.m, oracle::kM5) <= 1e-10);
  CHECK(rel(th.grad_w_norm_sq, oracle::kGradW5) <= 1e-10);
  CHECK(rel(th.sobolev_constant, oracle::kSobolev5) <= 1e-10);
  CHECK(std::abs(th.kc_of_w) <= 1e-4 * th.grad_w_norm_sq);
  CHECK(rel(th.m, std::pow(th.sobolev_constant, -5.0) / 5.0) <= 1e-4);
  CHECK(th.pde_residual <= 1e-3);
}

TEST_CASE("threshold rejects inadequate grids") {
  CHECK_THROWS_AS(threshold(make_grid(5, 64, 100.0)), GridTooCoarseError);
  CHECK_THROWS_AS(threshold(make_grid(5, 4096, 20.0)), GridTooCoarseError);
}

TEST_CASE("membership classification") {
  const double m = oracle::kM5;
  FunctionalReport zero;
  zero.momentum.assign(5, 0.0);
  CHECK(classify_membership(zero, m) == Membership::KPlus);  // K = 0 counts as K^+

  // large-amplitude gaussian witness: energy below m with K negative
  const FunctionalReport big = report_of_spec(GaussianSpec{25.0, 1.0}, 5);
  CHECK(big.energy < m);
  CHECK(big.k < 0.0);
  CHECK(classify_membership(big, m) == Membership::KMinus);

  const FunctionalReport w = report_of_spec(ScaledGroundStateSpec{1.0, 0.0}, 5);
  CHECK(w.energy >= m);
  CHECK(classify_membership(w, m) == Membership::AboveThreshold);
}

TEST_CASE("report invariants hold on assorted fields") {
  const double mb = mu_bar(5);
  for (const FieldSpec& spec :
       {FieldSpec(GaussianSpec{0.4, 1.0}), FieldSpec(GaussianSpec{cplx(3.0, -1.0), 2.5}),
        FieldSpec(ScaledGroundStateSpec{1.3, -0.2}), FieldSpec(GaussianSpec{24.0, 1.0})}) {
    const FunctionalReport rep = report_of_spec(spec, 5);
    CHECK(rep.k == rep.k_quadratic + rep.k_nonlinear);  // by construction
    CHECK(std::abs(rep.h - (rep.energy - rep.k / mb)) <= 1e-12 * rep.h);
    CHECK(rep.h > 0.0);
    CHECK(rep.k_critical <= rep.k);
    // Lemma 3.3 as algebra on one report
    const double lhs = mb * rep.energy - rep.k;
    const double rhs = 0.5 * (rep.grad_norm_sq + rep.norm_critical);
    CHECK(rel(lhs, rhs) <= 1e-10);
    // momentum vanishes identically for radial data
    CHECK(rep.momentum == std::vector<double>(5, 0.0));
  }
}

TEST_CASE("energy sandwich for fields with K >= 0") {
  for (double a : {0.2, 0.7, 1.8}) {
    const FunctionalReport rep = report_of_spec(GaussianSpec{a, 1.4}, 5);
    REQUIRE(rep.k >= 0.0);
    const double upper = 0.5 * rep.grad_norm_sq + 4.0 / 12.0 * rep.norm_subcritical;
    CHECK(rep.h <= rep.energy * (1.0 + 1e-14));
    CHECK(rep.energy <= upper * (1.0 + 1e-14));
  }
}

TEST_CASE("small fields have positive K") {
  for (double a = 1e-3; a <= 1.0; a *= 4.0)
    CHECK(report_of_spec(GaussianSpec{a, 1.0}, 5).k > 0.0);
}
