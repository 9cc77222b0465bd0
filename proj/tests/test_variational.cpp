#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cnls/variational.hpp"
#include "oracles.hpp"

using namespace cnls;

namespace {

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

std::vector<double> lambda_range(double lo, double hi, double step) {
  std::vector<double> out;
  for (double l = lo; l <= hi + 1e-12; l += step) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("scaling path at lambda = 0 reproduces the report") {
  const FieldSpec spec = GaussianSpec{0.5, 1.0};
  const FunctionalReport rep = report_of_spec(spec, 5);
  const auto path = scaling_path(spec, 5, std::vector<double>{0.0});
  REQUIRE(path.size() == 1);
  CHECK(rel(path[0].j, rep.energy) <= 1e-14);
  CHECK(rel(path[0].jp, rep.k) <= 1e-14);
}

TEST_CASE("second-derivative formula matches the finite difference along the path") {
  for (const FieldSpec& spec :
       {FieldSpec(GaussianSpec{0.5, 1.0}), FieldSpec(ScaledGroundStateSpec{0.8, 0.1})}) {
    for (const auto& p : scaling_path(spec, 5, lambda_range(-1.0, 1.0, 0.1))) {
      CHECK(std::abs(p.jpp_formula - p.jpp_fd) <=
            std::max(1e-6 * std::abs(p.jpp_formula), 1e-8));
    }
  }
}

TEST_CASE("two routes to j' agree: scaling formula vs scaled-descriptor report") {
  const FieldSpec spec = GaussianSpec{0.5, 1.0};
  for (const auto& p : scaling_path(spec, 5, lambda_range(-1.0, 1.0, 0.25))) {
    const FunctionalReport rep = report_of_spec(scale(spec, p.lambda, 5), 5);
    CHECK(rel(p.jp, rep.k) <= 1e-10);
    CHECK(rel(rep.mass, report_of_spec(spec, 5).mass) <= 1e-10);
  }
}

TEST_CASE("K along the path shrinks to zero from above as lambda -> -inf") {
  const FieldSpec spec = GaussianSpec{0.5, 1.0};
  double prev = std::numeric_limits<double>::infinity();
  for (double l : {-3.0, -4.0, -5.0}) {
    const double jp = report_of_spec(scale(spec, l, 5), 5).k;
    CHECK(jp > 0.0);
    CHECK(std::abs(jp) < prev);
    prev = std::abs(jp);
  }
}

TEST_CASE("scaling path rejects sampled data") {
  const GridPtr g = make_shared_grid(5, 64, 10.0);
  CHECK_THROWS_AS(scaling_path(FieldSpec(SampledSpec{zero_field(g)}), 5,
                               std::vector<double>{0.0}),
                  std::invalid_argument);
}

TEST_CASE("find_lambda0 on the negative branch lands on the ridge at or above m") {
  const double m = oracle::kM5;
  const FieldSpec spec = GaussianSpec{25.0, 1.0};
  REQUIRE(report_of_spec(spec, 5).k < 0.0);
  const auto l0 = find_lambda0(spec, 5);
  REQUIRE(l0.has_value());
  CHECK(*l0 < 0.0);
  const FunctionalReport at = report_of_spec(scale(spec, *l0, 5), 5);
  CHECK(std::abs(at.k) <= 1e-8 * at.k_quadratic);  // root residual
  CHECK(at.energy >= m * (1.0 - 1e-3));
}

TEST_CASE("find_lambda0 on the positive branch finds the forward root") {
  const double m = oracle::kM5;
  const FieldSpec spec = GaussianSpec{0.5, 1.0};
  REQUIRE(report_of_spec(spec, 5).k > 0.0);
  const auto l0 = find_lambda0(spec, 5);
  REQUIRE(l0.has_value());
  CHECK(*l0 > 0.0);
  const FunctionalReport at = report_of_spec(scale(spec, *l0, 5), 5);
  CHECK(std::abs(at.k) <= 1e-8 * at.k_quadratic);
  CHECK(at.energy >= m * (1.0 - 1e-3));
}

TEST_CASE("find_lambda0 preconditions") {
  CHECK_THROWS_AS(find_lambda0(GaussianSpec{0.0, 1.0}, 5), std::invalid_argument);
  const GridPtr g = make_shared_grid(5, 64, 10.0);
  CHECK_THROWS_AS(find_lambda0(FieldSpec(SampledSpec{zero_field(g)}), 5), std::invalid_argument);
}

TEST_CASE("lower/upper K bounds: degenerate zero field") {
  FunctionalReport zero;
  zero.momentum.assign(5, 0.0);
  const BoundReport br = check_lemma_3_9(zero, oracle::kM5, 5);
  CHECK(br.branch == BoundBranch::NonNegative);
  CHECK(br.bound_value == 0.0);  // min(mu_bar m, 0) = 0
  CHECK(br.satisfied);
}

TEST_CASE("lower/upper K bounds: 1000-sample sweep has no violations") {
  const double m = oracle::kM5;
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int accepted = 0, negative_branch = 0;
  while (accepted < 1000) {
    FieldSpec spec;
    const double amp = std::exp(std::log(1e-2) + unif(rng) * std::log(30.0 / 1e-2));
    if (accepted % 2 == 0) {
      spec = GaussianSpec{amp, std::exp(std::log(0.25) + unif(rng) * std::log(32.0))};
    } else {
      spec = ScaledGroundStateSpec{amp, -2.0 + 4.0 * unif(rng)};
    }
    const FunctionalReport rep = report_of_spec(spec, 5);
    if (!(rep.energy < m)) continue;
    ++accepted;
    const BoundReport br = check_lemma_3_9(rep, m, 5);
    CHECK(br.satisfied);
    if (br.branch == BoundBranch::Negative) {
      ++negative_branch;
      CHECK(rep.k < br.bound_value);  // strict inequality away from the ridge
    }
  }
  CHECK(negative_branch > 10);  // the sweep reaches both branches
}

TEST_CASE("bound check rejects fields at or above the threshold") {
  const FunctionalReport w = report_of_spec(ScaledGroundStateSpec{1.0, 0.0}, 5);
  REQUIRE(w.energy >= oracle::kM5);
  CHECK_THROWS_AS(check_lemma_3_9(w, oracle::kM5, 5), std::invalid_argument);
}

TEST_CASE("sampled infimum over the cW family is sharp at c = 1") {
  const double m = oracle::kM5;
  std::vector<FieldSpec> family;
  for (double c = 1.0; c <= 3.0 + 1e-12; c += 0.05)
    family.push_back(ScaledGroundStateSpec{c, 0.0});
  const auto inf = sampled_infimum(family, 5, InfimumConstraint::Kc_le_0);
  REQUIRE(inf.has_value());
  CHECK(*inf >= m * (1.0 - 1e-3));
  CHECK(*inf <= m * (1.0 + 1e-2));  // H(cW) -> m as c -> 1+
}

TEST_CASE("sampled infimum over a mixed K <= 0 family stays above the floor") {
  const double m = oracle::kM5;
  std::vector<FieldSpec> family;
  for (double a = 22.0; a <= 30.0; a += 1.0) family.push_back(GaussianSpec{a, 1.0});
  for (double c = 4.0; c <= 9.0; c += 0.5) family.push_back(ScaledGroundStateSpec{c, 0.0});
  family.push_back(GaussianSpec{0.0, 1.0});  // zero member must be skipped
  const auto inf = sampled_infimum(family, 5, InfimumConstraint::K_le_0);
  REQUIRE(inf.has_value());
  CHECK(*inf >= m * (1.0 - 1e-3));
}

TEST_CASE("sampled infimum reports an empty result honestly") {
  std::vector<FieldSpec> family;
  for (double a = 0.05; a <= 0.5; a += 0.05) family.push_back(GaussianSpec{a, 1.0});
  CHECK(!sampled_infimum(family, 5, InfimumConstraint::K_le_0).has_value());
  CHECK_THROWS_AS(sampled_infimum({}, 5, InfimumConstraint::K_le_0), std::invalid_argument);
}
