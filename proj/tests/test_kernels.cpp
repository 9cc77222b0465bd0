#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cnls/kernels.hpp"

using namespace cnls;

namespace {

std::vector<double> random_reals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = unif(rng);
  return x;
}

std::vector<cplx> random_cplx(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(unif(rng), unif(rng));
  return x;
}

}  // namespace

TEST_CASE("serial and parallel reductions are bit-identical") {
  // sizes straddling the reduction block boundary
  for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{4096}, std::size_t{4097},
                        std::size_t{100000}}) {
    const auto w = random_reals(n, 11 + n);
    const auto x = random_reals(n, 23 + n);
    const auto u = random_cplx(n, 37 + n);
    CHECK(sum_serial(x) == sum_omp(x));
    CHECK(weighted_sum_serial(w, x) == weighted_sum_omp(w, x));
    CHECK(weighted_abs_pow_sum_serial(w, u, 2.0) == weighted_abs_pow_sum_omp(w, u, 2.0));
    CHECK(weighted_abs_pow_sum_serial(w, u, 10.0 / 3.0) ==
          weighted_abs_pow_sum_omp(w, u, 10.0 / 3.0));
  }
}

TEST_CASE("serial and parallel pointwise kernels are bit-identical") {
  const std::size_t n = 9000;
  auto u1 = random_cplx(n, 5);
  auto u2 = u1;
  phase_rotate_serial(u1, 1e-3, 4.0 / 3.0, 1.0);
  phase_rotate_omp(u2, 1e-3, 4.0 / 3.0, 1.0);
  CHECK(u1 == u2);

  const auto u = random_cplx(n, 6);
  std::vector<cplx> o1(n), o2(n);
  central_diff_serial(u, 0.01, o1);
  central_diff_omp(u, 0.01, o2);
  CHECK(std::equal(o1.begin() + 1, o1.end() - 1, o2.begin() + 1));

  const auto lo = random_reals(n, 7), di = random_reals(n, 8), up = random_reals(n, 9);
  apply_tridiag_serial(lo, di, up, u, o1);
  apply_tridiag_omp(lo, di, up, u, o2);
  CHECK(o1 == o2);
}

TEST_CASE("reduction matches extended-precision reference") {
  const std::size_t n = 50000;
  const auto x = random_reals(n, 99);
  long double acc = 0.0L;
  for (double v : x) acc += v;
  CHECK(std::abs(sum_serial(x) - static_cast<double>(acc)) <=
        1e-12 * std::max(1.0, std::abs(static_cast<double>(acc))));
}

TEST_CASE("phase rotation preserves modulus exactly") {
  auto u = random_cplx(2048, 42);
  std::vector<double> before(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) before[i] = std::norm(u[i]);
  phase_rotate(u, 0.37, 4.0 / 3.0, 1.0, Exec::Parallel);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(std::abs(std::norm(u[i]) - before[i]) <= 4e-16 * before[i]);
}

TEST_CASE("phase rotation of zero stays zero") {
  std::vector<cplx> u(64, cplx{});
  phase_rotate(u, 0.5, 4.0 / 3.0, 1.0, Exec::Serial);
  for (const auto& z : u) CHECK(z == cplx{});
}

TEST_CASE("weighted power sum with p = 2 matches a direct loop") {
  const std::size_t n = 4099;
  const auto w = random_reals(n, 1);
  const auto u = random_cplx(n, 2);
  double ref = 0.0;
  for (std::size_t i = 0; i < n; ++i) ref += w[i] * std::norm(u[i]);
  CHECK(weighted_abs_pow_sum(w, u, 2.0, Exec::Serial) == doctest::Approx(ref).epsilon(1e-13));
}
