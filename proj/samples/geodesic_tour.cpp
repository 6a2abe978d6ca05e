// Builds one complex geodesic through the origin and a chosen point, checks
// that it stays on the boundary and prints the squeeze of the distance.
#include <cstdio>

#include "holodisc/holodisc.hpp"

using namespace holodisc;

int main() {
  const double eps = 0.01;
  const Complex z0 = std::polar(0.6, 0.4);
  const Complex z1 = 0.03 * z0 * z0;

  const auto g = geodesic_through(eps, z0, z1);
  if (!g) {
    std::puts("no geodesic of the family through this point");
    return 1;
  }
  const AnalyticDisc f = disc_geodesic(eps, *g);
  const DomainParams dom{eps, 1.0};

  std::printf("boundary residual   %.3e\n", boundary_residual(dom, f, 256));
  const Point2 p = eval(f, Complex(g->x0));
  std::printf("f(x0)               (%.6f%+.6fi, %.6f%+.6fi)\n", p.z.real(), p.z.imag(), p.w.real(), p.w.imag());

  const double lower = bound_via_projection(dom, {0.0, 0.0}, {z0, z1});
  const double upper = bound_via_disc(dom, f, 0.0, Complex(g->x0));
  std::printf("distance            %.12f\n", distance_from_origin(dom, z0, z1));
  std::printf("lower / upper bound %.12f / %.12f\n", lower, upper);
  return 0;
}
