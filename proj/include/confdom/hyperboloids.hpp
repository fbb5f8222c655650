#pragma once

// Sigma_- as the space of unoriented hyperboloids of Minkowski space.
//
// A Sigma_- point with chart coordinates (y, lambda) corresponds, through its
// ambient representative Y normalized to Y^5 - Y^6 = 1, to the hyperboloid
// {x : q(x - y) = -lambda^2}; a Minkowski point lies on it exactly when
// (tau_+(x), Y) = 0, by the bilinear identity
//   (tau_+(x), Y) = -(q(x - y) + lambda^2) / 2.

#include <vector>

#include "confdom/compactification.hpp"
#include "confdom/geodesics.hpp"

namespace confdom {

/// Unoriented hyperboloid {x : q(x - center) = -radius^2}.
struct Hyperboloid {
  MinkowskiVector center;
  double radius = 1.0;
};

namespace detail {
inline void require_sigma_minus(const ChartPoint& p, const char* who) {
  if (p.domain != DomainTag::SigmaMinus) {
    throw WrongDomainError(std::string(who) + ": SigmaMinus point required");
  }
}
}  // namespace detail

/// Ambient representative scaled to Y^5 - Y^6 = 1. Both chart sides of the
/// same (x, lambda) give the same Y, which is what makes the hyperboloids
/// unoriented.
inline AmbientVector hyperboloid_representative(const ChartPoint& p) {
  detail::require_sigma_minus(p, "hyperboloid_representative");
  const double q = minkowski_q(p.x);
  const double l2 = p.lambda * p.lambda;
  AmbientVector Y;
  Y.c.head<4>() = p.x.c;
  Y.c[4] = 0.5 * (1.0 - q - l2);
  Y.c[5] = -0.5 * (1.0 + q + l2);
  return Y;
}

inline Hyperboloid sigma_point_to_hyperboloid(const ChartPoint& p) {
  detail::require_sigma_minus(p, "sigma_point_to_hyperboloid");
  return Hyperboloid{p.x, p.lambda};
}

/// The two incidence residuals: first (tau_+(x), Y), second q(x - y) + lambda^2.
/// They satisfy first = -second/2 identically.
inline std::pair<double, double> incidence_residuals(const MinkowskiVector& x,
                                                     const ChartPoint& p) {
  detail::require_sigma_minus(p, "incidence_residuals");
  const double r_tau = inner(tau_plus(x), hyperboloid_representative(p));
  const double r_q = minkowski_q(x - p.x) + p.lambda * p.lambda;
  return {r_tau, r_q};
}

/// Whether x lies on the hyperboloid of p. Both incidence forms are evaluated
/// and both must pass the tolerance test.
inline bool incidence(const MinkowskiVector& x, const ChartPoint& p, double tol = kDefaultTol) {
  const auto [r_tau, r_q] = incidence_residuals(x, p);
  const double s = x.c.squaredNorm() + p.x.c.squaredNorm() + p.lambda * p.lambda;
  const double scale = 1.0 + s * s;  // the residuals are quartic in coordinates
  return std::abs(r_tau) <= tol * scale && std::abs(r_q) <= tol * scale;
}

/// One-parameter family of hyperboloids swept by a Sigma_- geodesic.
inline std::vector<Hyperboloid> geodesic_to_family(const GeodesicPath& path) {
  std::vector<Hyperboloid> family;
  family.reserve(path.size());
  for (const auto& s : path.samples) {
    detail::require_sigma_minus(s.state.point, "geodesic_to_family");
    family.push_back(sigma_point_to_hyperboloid(s.state.point));
  }
  return family;
}

}  // namespace confdom
