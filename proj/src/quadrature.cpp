#include "cnls/quadrature.hpp"

#include <array>
#include <cmath>

#include "cnls/grid.hpp"

namespace cnls {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kNodes = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739, 0.61787624440264375,
    0.75540440835500303, 0.86563120238783174, 0.94457502307323258, 0.98940093499164993};
constexpr std::array<double, 8> kWeights = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789, 0.02715245941175409};

double gl_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < kNodes.size(); ++k)
    s += kWeights[k] * (f(mid + half * kNodes[k]) + f(mid - half * kNodes[k]));
  return half * s;
}

}  // namespace

double integrate_interval(const std::function<double(double)>& f, double a, double b, int panels) {
  double total = 0.0;
  const double w = (b - a) / panels;
  for (int k = 0; k < panels; ++k) total += gl_panel(f, a + k * w, a + (k + 1) * w);
  return total;
}

double integrate_radial(const std::function<double(double)>& f, int dim, double core_radius,
                        int panels) {
  const double R = core_radius;
  auto core = [&](double r) { return f(r) * std::pow(r, dim - 1); };
  auto tail = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double r = R / s;
    const double v = f(r);
    if (v == 0.0) return 0.0;
    return v * std::pow(r, dim - 1) * R / (s * s);
  };
  return sphere_area(dim) * (integrate_interval(core, 0.0, R, panels) +
                             integrate_interval(tail, 0.0, 1.0, panels));
}

}  // namespace cnls
