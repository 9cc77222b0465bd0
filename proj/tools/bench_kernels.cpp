// Timing comparison of the serial reference kernels against the OpenMP
// variants, at the production grid size and two larger ones.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cnls/grid.hpp"
#include "cnls/solver.hpp"

using namespace cnls;
using h_clock = std::chrono::high_resolution_clock;

namespace {

template <typename Fn>
double time_ms(int reps, Fn&& fn) {
  fn();  // warm up
  const auto t0 = h_clock::now();
  for (int k = 0; k < reps; ++k) fn();
  const auto t1 = h_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  std::printf("%-26s %10s %12s %12s %8s\n", "kernel", "n", "serial ms", "openmp ms", "speedup");
  for (std::size_t n : {std::size_t{4096}, std::size_t{65536}, std::size_t{1048576}}) {
    std::vector<double> w(n);
    std::vector<cplx> u(n), out(n);
    std::vector<double> lo(n), di(n), up(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 + 0.5 * unif(rng);
      u[i] = cplx(unif(rng), unif(rng));
      lo[i] = unif(rng);
      di[i] = unif(rng);
      up[i] = unif(rng);
    }
    const int reps = n > 100000 ? 50 : 400;

    double sink = 0.0;
    const double t_pow_s = time_ms(reps, [&] { sink += weighted_abs_pow_sum_serial(w, u, 10.0 / 3.0); });
    const double t_pow_p = time_ms(reps, [&] { sink += weighted_abs_pow_sum_omp(w, u, 10.0 / 3.0); });
    std::printf("%-26s %10zu %12.4f %12.4f %8.2f\n", "weighted_abs_pow_sum", n, t_pow_s, t_pow_p,
                t_pow_s / t_pow_p);

    const double t_ph_s = time_ms(reps, [&] { phase_rotate_serial(u, 1e-3, 4.0 / 3.0, 1.0); });
    const double t_ph_p = time_ms(reps, [&] { phase_rotate_omp(u, 1e-3, 4.0 / 3.0, 1.0); });
    std::printf("%-26s %10zu %12.4f %12.4f %8.2f\n", "phase_rotate", n, t_ph_s, t_ph_p,
                t_ph_s / t_ph_p);

    const double t_td_s = time_ms(reps, [&] { apply_tridiag_serial(lo, di, up, u, out); });
    const double t_td_p = time_ms(reps, [&] { apply_tridiag_omp(lo, di, up, u, out); });
    std::printf("%-26s %10zu %12.4f %12.4f %8.2f\n", "apply_tridiag", n, t_td_s, t_td_p,
                t_td_s / t_td_p);

    const double t_s_s = time_ms(reps, [&] { sink += weighted_sum_serial(w, w); });
    const double t_s_p = time_ms(reps, [&] { sink += weighted_sum_omp(w, w); });
    std::printf("%-26s %10zu %12.4f %12.4f %8.2f\n", "weighted_sum", n, t_s_s, t_s_p,
                t_s_s / t_s_p);
    if (sink == 42.0) std::printf("#\n");
  }

  // end-to-end: one Strang step of the production solver
  for (int n : {4096, 16384}) {
    const GridPtr g = make_shared_grid(5, n, 100.0);
    RadialField u = evaluate(GaussianSpec{0.5, 4.0}, g);
    auto step = [&](Exec mode) {
      set_default_exec(mode);
      u = nonlinear_phase_step(u, 5e-4);
      u = linear_step(u, 1e-3);
      u = nonlinear_phase_step(u, 5e-4);
    };
    const double t_s = time_ms(200, [&] { step(Exec::Serial); });
    const double t_p = time_ms(200, [&] { step(Exec::Parallel); });
    std::printf("%-26s %10d %12.4f %12.4f %8.2f\n", "strang_step", n, t_s, t_p, t_s / t_p);
  }
  set_default_exec(Exec::Parallel);
  return 0;
}
