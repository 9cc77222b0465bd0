#include "cnls/grid.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace cnls {

double sphere_area(int dim) {
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double ball_volume(int dim, double radius) {
  return std::pow(M_PI, 0.5 * dim) * std::pow(radius, dim) / std::tgamma(0.5 * dim + 1.0);
}

RadialGrid make_grid(int dim, int n, double r_max) {
  if (dim < 3) throw std::invalid_argument("make_grid: dim must be >= 3");
  if (n < 16) throw std::invalid_argument("make_grid: n must be >= 16");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("make_grid: r_max must be positive and finite");
  if (dim < 5)
    std::cerr << "cnls: warning: dim = " << dim << " < 5; variational/dynamic guarantees assume d >= 5\n";

  RadialGrid g;
  g.dim = dim;
  g.n = n;
  g.r_max = r_max;
  g.dr = r_max / (n - 1);
  g.sphere_area = sphere_area(dim);
  g.critical_exponent = 2.0 * dim / (dim - 2.0);
  g.subcritical_exponent = (2.0 * dim + 2.0) / (dim - 1.0);
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = i * g.dr;
    const double c = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    g.weights[i] = g.sphere_area * std::pow(g.nodes[i], dim - 1) * g.dr * c;
  }
  return g;
}

GridPtr make_shared_grid(int dim, int n, double r_max) {
  return std::make_shared<const RadialGrid>(make_grid(dim, n, r_max));
}

RadialField make_field(GridPtr grid, std::vector<cplx> values) {
  if (!grid) throw std::invalid_argument("make_field: null grid");
  if (static_cast<int>(values.size()) != grid->n)
    throw std::invalid_argument("make_field: value count does not match grid");
  return RadialField{std::move(grid), std::move(values)};
}

RadialField zero_field(GridPtr grid) {
  auto n = grid->n;
  return make_field(std::move(grid), std::vector<cplx>(n, cplx{}));
}

bool all_finite(const RadialField& f) {
  for (const auto& z : f.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double integrate(const RadialGrid& grid, std::span<const double> samples) {
  if (static_cast<int>(samples.size()) != grid.n)
    throw std::invalid_argument("integrate: sample count does not match grid");
  return weighted_sum(grid.weights, samples);
}

std::vector<double> face_weights(const RadialGrid& grid) {
  const int n = grid.n;
  const int d = grid.dim;
  const double h = grid.dr;
  std::vector<double> face(n - 1);
  double g = std::pow(0.5 * h, d);
  face[0] = grid.sphere_area * g / ((0.5) * h * h);
  for (int i = 1; i < n - 1; ++i) {
    g += d * h * std::pow(grid.nodes[i], d - 1);
    face[i] = grid.sphere_area * g / ((i + 0.5) * h * h);
  }
  return face;
}

std::vector<double> volume_weights(const RadialGrid& grid) {
  const int n = grid.n;
  const int d = grid.dim;
  const double h = grid.dr;
  std::vector<double> v(n);
  v[0] = grid.sphere_area * h * std::pow(0.5 * h, d - 1) / (2.0 * d);
  for (int i = 1; i < n; ++i) v[i] = grid.sphere_area * std::pow(grid.nodes[i], d - 1) * h;
  return v;
}

double gradient_norm_sq(const RadialField& f) {
  const auto& g = *f.grid;
  const std::vector<double> face = face_weights(g);
  std::vector<double> diff_sq(g.n - 1);
  for (int i = 0; i < g.n - 1; ++i) diff_sq[i] = std::norm(f.values[i + 1] - f.values[i]);
  return weighted_sum(face, diff_sq);
}

RadialField radial_derivative(const RadialField& f) {
  if (!all_finite(f)) throw std::invalid_argument("radial_derivative: field has non-finite values");
  const auto& g = *f.grid;
  const int n = g.n;
  std::vector<cplx> out(n);
  central_diff(f.values, g.dr, out);
  out[0] = cplx{};  // ghost u(-dr) = u(dr)
  out[n - 1] = (3.0 * f.values[n - 1] - 4.0 * f.values[n - 2] + f.values[n - 3]) / (2.0 * g.dr);
  return make_field(f.grid, std::move(out));
}

RadialField laplacian(const RadialField& f) {
  if (!all_finite(f)) throw std::invalid_argument("laplacian: field has non-finite values");
  const auto& g = *f.grid;
  const int n = g.n;
  const double h = g.dr;
  const double inv_h2 = 1.0 / (h * h);
  std::vector<cplx> out(n);
  out[0] = 2.0 * g.dim * (f.values[1] - f.values[0]) * inv_h2;
  for (int i = 1; i + 1 < n; ++i) {
    const cplx urr = (f.values[i + 1] - 2.0 * f.values[i] + f.values[i - 1]) * inv_h2;
    const cplx ur = (f.values[i + 1] - f.values[i - 1]) / (2.0 * h);
    out[i] = urr + (g.dim - 1.0) / g.nodes[i] * ur;
  }
  out[n - 1] = cplx{};  // Dirichlet wall
  return make_field(f.grid, std::move(out));
}

double lp_norm(const RadialField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  const double s = weighted_abs_pow_sum(f.grid->weights, f.values, p);
  return std::pow(s, 1.0 / p);
}

}  // namespace cnls
