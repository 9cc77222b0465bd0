#include "cnls/kernels.hpp"

#include <atomic>
#include <cmath>
#include <vector>

namespace cnls {

namespace {

std::atomic<Exec> g_exec{
#ifdef _OPENMP
    Exec::Parallel
#else
    Exec::Serial
#endif
};

inline std::size_t block_count(std::size_t n) {
  return (n + kReductionBlock - 1) / kReductionBlock;
}

// Combine per-block partial sums in index order. The block partials are
// computed serially inside each block, so the final value is independent of
// how blocks were distributed over threads.
double combine(const std::vector<double>& partial) {
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

template <typename BlockFn>
double blocked_reduce_serial(std::size_t n, BlockFn&& fn) {
  const std::size_t nb = block_count(n);
  std::vector<double> partial(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[b] = fn(lo, hi);
  }
  return combine(partial);
}

template <typename BlockFn>
double blocked_reduce_omp(std::size_t n, BlockFn&& fn) {
  const std::size_t nb = block_count(n);
  std::vector<double> partial(nb, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long b = 0; b < static_cast<long long>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = fn(lo, hi);
  }
  return combine(partial);
}

}  // namespace

Exec default_exec() { return g_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec mode) { g_exec.store(mode, std::memory_order_relaxed); }

double sum_serial(std::span<const double> x) {
  return blocked_reduce_serial(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double sum_omp(std::span<const double> x) {
  return blocked_reduce_omp(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double sum(std::span<const double> x, Exec mode) {
  return mode == Exec::Serial ? sum_serial(x) : sum_omp(x);
}

double weighted_sum_serial(std::span<const double> w, std::span<const double> x) {
  return blocked_reduce_serial(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += w[i] * x[i];
    return s;
  });
}

double weighted_sum_omp(std::span<const double> w, std::span<const double> x) {
  return blocked_reduce_omp(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += w[i] * x[i];
    return s;
  });
}

double weighted_sum(std::span<const double> w, std::span<const double> x, Exec mode) {
  return mode == Exec::Serial ? weighted_sum_serial(w, x) : weighted_sum_omp(w, x);
}

namespace {

template <typename Reduce>
double abs_pow_impl(std::span<const double> w, std::span<const cplx> u, double p, Reduce&& reduce) {
  if (p == 2.0) {
    return reduce(u.size(), [&](std::size_t lo, std::size_t hi) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += w[i] * std::norm(u[i]);
      return s;
    });
  }
  const double half_p = 0.5 * p;
  return reduce(u.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double a2 = std::norm(u[i]);
      if (a2 > 0.0) s += w[i] * std::pow(a2, half_p);
    }
    return s;
  });
}

}  // namespace

double weighted_abs_pow_sum_serial(std::span<const double> w, std::span<const cplx> u, double p) {
  return abs_pow_impl(w, u, p, [](std::size_t n, auto&& fn) {
    return blocked_reduce_serial(n, fn);
  });
}

double weighted_abs_pow_sum_omp(std::span<const double> w, std::span<const cplx> u, double p) {
  return abs_pow_impl(w, u, p, [](std::size_t n, auto&& fn) {
    return blocked_reduce_omp(n, fn);
  });
}

double weighted_abs_pow_sum(std::span<const double> w, std::span<const cplx> u, double p, Exec mode) {
  return mode == Exec::Serial ? weighted_abs_pow_sum_serial(w, u, p)
                              : weighted_abs_pow_sum_omp(w, u, p);
}

void phase_rotate_serial(std::span<cplx> u, double dt, double alpha, double beta) {
  for (auto& z : u) {
    const double a = std::abs(z);
    if (a == 0.0) continue;
    const double phase = dt * (std::pow(a, alpha) - std::pow(a, beta));
    z *= cplx(std::cos(phase), std::sin(phase));
  }
}

void phase_rotate_omp(std::span<cplx> u, double dt, double alpha, double beta) {
  const long long n = static_cast<long long>(u.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < n; ++i) {
    auto& z = u[static_cast<std::size_t>(i)];
    const double a = std::abs(z);
    if (a == 0.0) continue;
    const double phase = dt * (std::pow(a, alpha) - std::pow(a, beta));
    z *= cplx(std::cos(phase), std::sin(phase));
  }
}

void phase_rotate(std::span<cplx> u, double dt, double alpha, double beta, Exec mode) {
  if (mode == Exec::Serial)
    phase_rotate_serial(u, dt, alpha, beta);
  else
    phase_rotate_omp(u, dt, alpha, beta);
}

void central_diff_serial(std::span<const cplx> u, double h, std::span<cplx> out) {
  const std::size_t n = u.size();
  const double inv2h = 1.0 / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (u[i + 1] - u[i - 1]) * inv2h;
}

void central_diff_omp(std::span<const cplx> u, double h, std::span<cplx> out) {
  const long long last = static_cast<long long>(u.size()) - 1;
  const double inv2h = 1.0 / (2.0 * h);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 1; i < last; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out[k] = (u[k + 1] - u[k - 1]) * inv2h;
  }
}

void central_diff(std::span<const cplx> u, double h, std::span<cplx> out, Exec mode) {
  if (mode == Exec::Serial)
    central_diff_serial(u, h, out);
  else
    central_diff_omp(u, h, out);
}

void apply_tridiag_serial(std::span<const double> lo, std::span<const double> di,
                          std::span<const double> up, std::span<const cplx> u,
                          std::span<cplx> out) {
  const std::size_t n = u.size();
  if (n == 0) return;
  out[0] = di[0] * u[0] + (n > 1 ? up[0] * u[1] : cplx{});
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = lo[i] * u[i - 1] + di[i] * u[i] + up[i] * u[i + 1];
  if (n > 1) out[n - 1] = lo[n - 1] * u[n - 2] + di[n - 1] * u[n - 1];
}

void apply_tridiag_omp(std::span<const double> lo, std::span<const double> di,
                       std::span<const double> up, std::span<const cplx> u, std::span<cplx> out) {
  const long long n = static_cast<long long>(u.size());
  if (n == 0) return;
  const long long last = n - 1;
  out[0] = di[0] * u[0] + (n > 1 ? up[0] * u[1] : cplx{});
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 1; i < last; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out[k] = lo[k] * u[k - 1] + di[k] * u[k] + up[k] * u[k + 1];
  }
  if (n > 1)
    out[static_cast<std::size_t>(n - 1)] =
        lo[static_cast<std::size_t>(n - 1)] * u[static_cast<std::size_t>(n - 2)] +
        di[static_cast<std::size_t>(n - 1)] * u[static_cast<std::size_t>(n - 1)];
}

void apply_tridiag(std::span<const double> lo, std::span<const double> di,
                   std::span<const double> up, std::span<const cplx> u, std::span<cplx> out,
                   Exec mode) {
  if (mode == Exec::Serial)
    apply_tridiag_serial(lo, di, up, u, out);
  else
    apply_tridiag_omp(lo, di, up, u, out);
}

}  // namespace cnls
