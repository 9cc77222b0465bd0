#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Low-level array kernels. Every kernel has a serial reference implementation
// and an OpenMP variant; the unsuffixed entry points dispatch on the global
// execution mode. Reductions use fixed-size blocks combined in index order,
// so results are bit-identical between the serial and parallel variants and
// do not depend on the thread count.

namespace cnls {

using cplx = std::complex<double>;

enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec mode);

// Block size for deterministic reductions. Fixed; changing it changes the
// rounding of every sum.
inline constexpr std::size_t kReductionBlock = 4096;

// sum of x
double sum(std::span<const double> x, Exec mode);
double sum_serial(std::span<const double> x);
double sum_omp(std::span<const double> x);
inline double sum(std::span<const double> x) { return sum(x, default_exec()); }

// sum of w[i] * x[i]
double weighted_sum(std::span<const double> w, std::span<const double> x, Exec mode);
double weighted_sum_serial(std::span<const double> w, std::span<const double> x);
double weighted_sum_omp(std::span<const double> w, std::span<const double> x);
inline double weighted_sum(std::span<const double> w, std::span<const double> x) {
  return weighted_sum(w, x, default_exec());
}

// sum of w[i] * |u[i]|^p  (p = 2 avoids pow entirely)
double weighted_abs_pow_sum(std::span<const double> w, std::span<const cplx> u, double p, Exec mode);
double weighted_abs_pow_sum_serial(std::span<const double> w, std::span<const cplx> u, double p);
double weighted_abs_pow_sum_omp(std::span<const double> w, std::span<const cplx> u, double p);
inline double weighted_abs_pow_sum(std::span<const double> w, std::span<const cplx> u, double p) {
  return weighted_abs_pow_sum(w, u, p, default_exec());
}

// u[i] *= exp(i * dt * (|u[i]|^alpha - |u[i]|^beta))
void phase_rotate(std::span<cplx> u, double dt, double alpha, double beta, Exec mode);
void phase_rotate_serial(std::span<cplx> u, double dt, double alpha, double beta);
void phase_rotate_omp(std::span<cplx> u, double dt, double alpha, double beta);
inline void phase_rotate(std::span<cplx> u, double dt, double alpha, double beta) {
  phase_rotate(u, dt, alpha, beta, default_exec());
}

// out[i] = (u[i+1] - u[i-1]) / (2h) for interior nodes; endpoints left to the caller
void central_diff(std::span<const cplx> u, double h, std::span<cplx> out, Exec mode);
void central_diff_serial(std::span<const cplx> u, double h, std::span<cplx> out);
void central_diff_omp(std::span<const cplx> u, double h, std::span<cplx> out);
inline void central_diff(std::span<const cplx> u, double h, std::span<cplx> out) {
  central_diff(u, h, out, default_exec());
}

// out[i] = lo[i]*u[i-1] + di[i]*u[i] + up[i]*u[i+1], rows 0 and n-1 per lo/up zero padding
void apply_tridiag(std::span<const double> lo, std::span<const double> di, std::span<const double> up,
                   std::span<const cplx> u, std::span<cplx> out, Exec mode);
void apply_tridiag_serial(std::span<const double> lo, std::span<const double> di,
                          std::span<const double> up, std::span<const cplx> u, std::span<cplx> out);
void apply_tridiag_omp(std::span<const double> lo, std::span<const double> di,
                       std::span<const double> up, std::span<const cplx> u, std::span<cplx> out);
inline void apply_tridiag(std::span<const double> lo, std::span<const double> di,
                          std::span<const double> up, std::span<const cplx> u, std::span<cplx> out) {
  apply_tridiag(lo, di, up, u, out, default_exec());
}

}  // namespace cnls
