// Walk the semicircle geodesic through (0, 1) and print the one-parameter
// family of Minkowski hyperboloids it sweeps out.

#include <cstdio>

#include "confdom/confdom.hpp"

int main() {
  using namespace confdom;

  const auto semicircle = ClosedFormGeodesic::spacelike_semicircle(std::sqrt(2.0), 0.0, +1);
  const GeodesicState start = semicircle.state_at(1.0);
  const GeodesicPath path =
      integrate_lambda(start.point.x, Vec4(start.velocity.head<4>()), 1.0, 1.4, 1e-2);

  std::printf("geodesic invariant residual: %.3e\n", semicircle.invariant_residual(path));
  std::printf("plane-section residual:      %.3e\n\n", plane_section_residual(path));

  std::printf("%10s %34s %10s\n", "lambda", "hyperboloid center", "radius");
  for (const Hyperboloid& h : geodesic_to_family(path)) {
    if (static_cast<int>(h.radius * 100) % 5 != 0) continue;  // thin the printout
    std::printf("%10.4f   (%8.4f %8.4f %8.4f %8.4f) %10.4f\n", h.radius, h.center[0],
                h.center[1], h.center[2], h.center[3], h.radius);
  }
  return 0;
}
