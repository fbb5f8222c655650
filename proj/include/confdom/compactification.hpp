#pragma once

// Embeddings of Minkowski space into the null cone of R^{4,2}, the projection
// back, conformal infinity, and the antipodal (double cover) map.
//
// tau_+(x) = (x, (1 - q(x))/2, -(1 + q(x))/2) lands on the section
// X^5 - X^6 = 1 of the cone; tau_- = -tau_+ on the section X^5 - X^6 = -1.
// Rays with X^5 = X^6 project onto conformal infinity.

#include <cmath>
#include <variant>

#include "confdom/ambient.hpp"

namespace confdom {

/// Marker for a cone ray over conformal infinity. The representative is
/// normalized to unit Euclidean norm, orientation kept as given.
struct AtInfinity {
  AmbientVector representative;
};

/// Result of projecting a cone point down to Minkowski space.
using ConeProjection = std::variant<MinkowskiVector, AtInfinity>;

inline bool is_at_infinity(const ConeProjection& p) {
  return std::holds_alternative<AtInfinity>(p);
}

/// Flip the sign of an infinity representative so the first nonzero component
/// is positive (the projective-quotient canonical form).
inline AmbientVector projective_representative(const AmbientVector& X, double tol = kDefaultTol) {
  detail::require_nonzero(X, tol, "projective_representative");
  for (int i = 0; i < 6; ++i) {
    if (std::abs(X.c[i]) > tol) return X.c[i] > 0 ? X : -X;
  }
  return X;
}

/// Null-cone embedding of Minkowski space, section X^5 - X^6 = 1.
inline AmbientVector tau(const MinkowskiVector& x) {
  const double q = minkowski_q(x);
  return AmbientVector(x.c[0], x.c[1], x.c[2], x.c[3], 0.5 * (1.0 - q), -0.5 * (1.0 + q));
}

inline AmbientVector tau_plus(const MinkowskiVector& x) { return tau(x); }

/// The second, non-intersecting embedding: tau_-(x) = -tau_+(x).
inline AmbientVector tau_minus(const MinkowskiVector& x) { return -tau_plus(x); }

/// X -> -X. Identifies the two sheets of the double cover: X and -X are
/// projectively but never oriented equivalent.
inline AmbientVector antipode(const AmbientVector& X, double tol = kDefaultTol) {
  detail::require_nonzero(X, tol, "antipode");
  return -X;
}

namespace detail {
inline void require_on_cone(const AmbientVector& X, double tol, const char* who) {
  if (classify(X, tol) != Region::Cone) {
    throw NotOnConeError(std::string(who) + ": Q(X) != 0 for " + to_string(X));
  }
}
}  // namespace detail

/// Whether the ray of a cone point projects onto conformal infinity
/// (X^5 = X^6 within tol * (1 + |X|^2)).
inline bool is_conformal_infinity(const AmbientVector& X, double tol = kDefaultTol) {
  detail::require_on_cone(X, tol, "is_conformal_infinity");
  const double scale = 1.0 + X.c.squaredNorm();
  return std::abs(X.c[4] - X.c[5]) <= tol * scale;
}

/// Project a cone point to Minkowski space by dividing out the ray scale:
/// x^mu = X^mu / (X^5 - X^6). Acts as a left inverse of tau_+ on its image
/// and is constant on rays. Rays with X^5 = X^6 map to AtInfinity.
inline ConeProjection cone_to_minkowski(const AmbientVector& X, double tol = kDefaultTol) {
  detail::require_on_cone(X, tol, "cone_to_minkowski");
  const double u = X.c[4] - X.c[5];
  const double scale = 1.0 + X.c.squaredNorm();
  if (std::abs(u) <= tol * scale) {
    return AtInfinity{AmbientVector(Vec6(X.c / X.c.norm()))};
  }
  return MinkowskiVector(Vec4(X.c.head<4>() / u));
}

}  // namespace confdom
