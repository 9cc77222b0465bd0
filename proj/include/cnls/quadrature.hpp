#pragma once

#include <functional>

namespace cnls {

// Composite Gauss-Legendre quadrature for closed-form radial profiles.
// integrate_radial computes  sigma_{d-1} * int_0^inf f(r) r^{d-1} dr  by
// splitting at `core_radius`: GL panels on [0, core_radius], then the
// substitution r = core_radius / s maps the tail onto s in (0, 1] where the
// transformed integrand is smooth for algebraically or exponentially
// decaying profiles.
double integrate_radial(const std::function<double(double)>& f, int dim, double core_radius,
                        int panels = 96);

// Plain GL on [a, b].
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          int panels = 96);

}  // namespace cnls
