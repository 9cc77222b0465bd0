#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "cnls/kernels.hpp"

namespace cnls {

// Uniform radial grid on [0, r_max] with trapezoid quadrature against the
// d-dimensional volume element: integrate(f) = sum w_i f(r_i) approximates
// the integral of f(|x|) over R^d. w_0 = 0 because the r^{d-1} factor
// vanishes at the origin.
struct RadialGrid {
  int dim = 0;
  int n = 0;
  double r_max = 0.0;
  double dr = 0.0;
  double sphere_area = 0.0;          // area of the unit (d-1)-sphere
  double critical_exponent = 0.0;    // 2d/(d-2)
  double subcritical_exponent = 0.0; // (2d+2)/(d-1)
  std::vector<double> nodes;
  std::vector<double> weights;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Complex samples u(r_i). Immutable by convention once built.
struct RadialField {
  GridPtr grid;
  std::vector<cplx> values;
};

double sphere_area(int dim);               // |S^{d-1}|
double ball_volume(int dim, double radius);

RadialGrid make_grid(int dim, int n, double r_max);
GridPtr make_shared_grid(int dim, int n, double r_max);

RadialField make_field(GridPtr grid, std::vector<cplx> values);
RadialField zero_field(GridPtr grid);
bool all_finite(const RadialField& f);

double integrate(const RadialGrid& grid, std::span<const double> samples);

// Face weights of the conservative-form Laplacian: for g sampled at the
// midpoints r_{i+1/2},
//   int g(r) |u_r|^2 dx  ~=  sum_i face[i] g(r_{i+1/2}) |u_{i+1} - u_i|^2.
// Built from the recursion that makes the associated stencil exact on r^2,
// so the quadratic form is the Dirichlet form of the time stepper.
std::vector<double> face_weights(const RadialGrid& grid);

// Inner-product weights under which the conservative Laplacian is exactly
// self-adjoint; equal to the trapezoid weights except at the origin node.
std::vector<double> volume_weights(const RadialGrid& grid);

// int |grad u|^2 dx by the face quadrature above.
double gradient_norm_sq(const RadialField& f);

// Second-order radial derivative: central differences inside, one-sided
// second-order at r_max, and u'(0) = 0 by the even-symmetry ghost point.
RadialField radial_derivative(const RadialField& f);

// d-dimensional radial Laplacian u_rr + (d-1)/r u_r by central differences;
// at the origin the symmetry limit 2d (u_1 - u_0)/dr^2; zero at the
// Dirichlet wall.
RadialField laplacian(const RadialField& f);

// (integral |u|^p dx)^{1/p}; p = infinity returns max |u_i|.
double lp_norm(const RadialField& f, double p);

}  // namespace cnls
