#pragma once

// Linear algebra of the ambient pseudo-Euclidean space R^{4,2} and of
// Minkowski space R^{3,1}.
//
// Conventions (fixed, not configurable):
//   ambient metric   G   = diag(1, 1, 1, -1, 1, -1)   on coordinates X^1..X^6
//   Minkowski metric eta = diag(1, 1, 1, -1)          on coordinates x^1..x^4
// so x^4 and X^4, X^6 are the timelike directions. Code indices are 0-based;
// comments use the 1-based coordinate names.

#include <cmath>
#include <sstream>

#include "confdom/common.hpp"
#include "confdom/errors.hpp"

namespace confdom {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Point of Minkowski space R^{3,1}.
struct MinkowskiVector {
  Vec4 c = Vec4::Zero();

  MinkowskiVector() = default;
  explicit MinkowskiVector(const Vec4& v) : c(v) {}
  MinkowskiVector(double x1, double x2, double x3, double x4) : c(x1, x2, x3, x4) {}

  double operator[](int i) const { return c[i]; }
  double& operator[](int i) { return c[i]; }

  friend MinkowskiVector operator+(const MinkowskiVector& a, const MinkowskiVector& b) {
    return MinkowskiVector(Vec4(a.c + b.c));
  }
  friend MinkowskiVector operator-(const MinkowskiVector& a, const MinkowskiVector& b) {
    return MinkowskiVector(Vec4(a.c - b.c));
  }
  friend MinkowskiVector operator*(double s, const MinkowskiVector& a) {
    return MinkowskiVector(Vec4(s * a.c));
  }
};

/// Point of the ambient space R^{4,2}.
struct AmbientVector {
  Vec6 c = Vec6::Zero();

  AmbientVector() = default;
  explicit AmbientVector(const Vec6& v) : c(v) {}
  AmbientVector(double x1, double x2, double x3, double x4, double x5, double x6) {
    c << x1, x2, x3, x4, x5, x6;
  }

  double operator[](int i) const { return c[i]; }
  double& operator[](int i) { return c[i]; }

  /// First four components as a Minkowski vector.
  MinkowskiVector minkowski_part() const { return MinkowskiVector(Vec4(c.head<4>())); }

  friend AmbientVector operator+(const AmbientVector& a, const AmbientVector& b) {
    return AmbientVector(Vec6(a.c + b.c));
  }
  friend AmbientVector operator-(const AmbientVector& a, const AmbientVector& b) {
    return AmbientVector(Vec6(a.c - b.c));
  }
  friend AmbientVector operator*(double s, const AmbientVector& a) {
    return AmbientVector(Vec6(s * a.c));
  }
  friend AmbientVector operator-(const AmbientVector& a) { return AmbientVector(Vec6(-a.c)); }
};

enum class Region { Cone, DPlus, DMinus };

/// Projective: X ~ Y iff X = cY, c != 0.  Oriented: X ~ Y iff X = cY, c > 0.
/// Oriented equivalence refines projective equivalence.
enum class EquivalenceRelation { Projective, Oriented };

// ---------------------------------------------------------------------------
// Metrics and quadratic forms
// ---------------------------------------------------------------------------

/// The ambient metric G as a matrix.
inline const Mat6& ambient_metric() {
  static const Mat6 g = Vec6(1, 1, 1, -1, 1, -1).asDiagonal();
  return g;
}

/// Minkowski eta as a matrix.
inline const Eigen::Matrix4d& minkowski_metric() {
  static const Eigen::Matrix4d g = Vec4(1, 1, 1, -1).asDiagonal();
  return g;
}

/// (X,Y) = X1Y1 + X2Y2 + X3Y3 - X4Y4 + X5Y5 - X6Y6.
inline double inner(const AmbientVector& X, const AmbientVector& Y) {
  const Vec6& a = X.c;
  const Vec6& b = Y.c;
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3] + a[4] * b[4] - a[5] * b[5];
}

/// Q(X) = (X,X).
inline double quadratic_form(const AmbientVector& X) { return inner(X, X); }

/// eta(x,y) = x1y1 + x2y2 + x3y3 - x4y4.
inline double minkowski_inner(const MinkowskiVector& x, const MinkowskiVector& y) {
  const Vec4& a = x.c;
  const Vec4& b = y.c;
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

/// q(x) = eta(x,x).
inline double minkowski_q(const MinkowskiVector& x) { return minkowski_inner(x, x); }

inline bool is_finite(const MinkowskiVector& x) { return x.c.allFinite(); }
inline bool is_finite(const AmbientVector& X) { return X.c.allFinite(); }

// ---------------------------------------------------------------------------
// Classification and quotient representatives
// ---------------------------------------------------------------------------

namespace detail {
inline void require_nonzero(const AmbientVector& X, double tol, const char* who) {
  if (X.c.cwiseAbs().maxCoeff() <= tol) {
    throw ApexError(std::string(who) + ": vector is numerically zero (cone apex removed)");
  }
}
}  // namespace detail

/// Sort X into the null cone or one of the open domains D+- it separates.
/// The comparison is |Q(X)| against tol * (1 + |X|^2).
inline Region classify(const AmbientVector& X, double tol = kDefaultTol) {
  detail::require_nonzero(X, tol, "classify");
  const double q = quadratic_form(X);
  const double scale = 1.0 + X.c.squaredNorm();
  if (std::abs(q) <= tol * scale) return Region::Cone;
  return q > 0 ? Region::DPlus : Region::DMinus;
}

/// Rescale X off the cone to its unique representative with Q = +-1.
/// The result is oriented-equivalent to the input.
inline AmbientVector normalize_to_sigma(const AmbientVector& X, double tol = kDefaultTol) {
  detail::require_nonzero(X, tol, "normalize_to_sigma");
  const double q = quadratic_form(X);
  const double scale = 1.0 + X.c.squaredNorm();
  if (std::abs(q) <= tol * scale) {
    throw OnConeError("normalize_to_sigma: |Q(X)| below tolerance, no Sigma representative");
  }
  return (1.0 / std::sqrt(std::abs(q))) * X;
}

/// Whether X and Y lie on the same ray. The scalar c with X = cY is recovered
/// from the largest-magnitude component of Y, then checked componentwise
/// against tol * (1 + |X|^2 + |Y|^2).
inline bool ray_equivalent(const AmbientVector& X, const AmbientVector& Y,
                           EquivalenceRelation rel, double tol = kDefaultTol) {
  detail::require_nonzero(X, tol, "ray_equivalent");
  detail::require_nonzero(Y, tol, "ray_equivalent");
  int k = 0;
  Y.c.cwiseAbs().maxCoeff(&k);
  const double c = X.c[k] / Y.c[k];
  if (rel == EquivalenceRelation::Oriented && c <= 0.0) return false;
  if (c == 0.0) return false;
  const double scale = 1.0 + X.c.squaredNorm() + Y.c.squaredNorm();
  return ((X.c - c * Y.c).cwiseAbs().maxCoeff() <= tol * scale);
}

// ---------------------------------------------------------------------------
// Printing (diagnostics only; machine formats live in the CLI)
// ---------------------------------------------------------------------------

inline std::string to_string(const AmbientVector& X) {
  std::ostringstream os;
  os << "(" << X.c.transpose() << ")";
  return os.str();
}

inline std::string to_string(const MinkowskiVector& x) {
  std::ostringstream os;
  os << "(" << x.c.transpose() << ")";
  return os.str();
}

}  // namespace confdom
