#pragma once

// O(4,2) as explicit 6x6 matrices preserving G = diag(1,1,1,-1,1,-1), its
// action on the ambient space, and the induced isometries of Sigma_-+ and
// conformal transformations of Minkowski space.
//
// Generator conventions, written in the light-cone combinations
// u = X^5 - X^6, w = X^5 + X^6 (so Q = q(X_mink) + u w):
//   Rotation(i,j,theta)    circular rotation in a spatial 2-plane, hyperbolic
//                          for planes containing x^4 (a Lorentz boost)
//   Dilation(theta)        hyperbolic rotation in the (5,6) plane;
//                          u -> e^{-theta} u, induced Minkowski map x -> e^theta x
//   Translation(a)         x -> x + a u, w -> w - 2 eta(x,a) - q(a) u; on the
//                          u = 1 section this is x -> x + a
//   SpecialConformal(b)    the same with u and w exchanged; induces
//                          x -> (x - b q(x)) / (1 - 2 eta(x,b) + q(b) q(x))
//   Inversion              X^5 -> -X^5; induces x -> x / q(x)

#include <cmath>
#include <optional>
#include <variant>

#include "confdom/charts.hpp"
#include "confdom/compactification.hpp"

namespace confdom {

/// Element of O(4,2): M^T G M = G, det M = +-1.
struct ConformalMatrix {
  Mat6 m = Mat6::Identity();

  ConformalMatrix() = default;
  explicit ConformalMatrix(const Mat6& mat) : m(mat) {}

  friend ConformalMatrix operator*(const ConformalMatrix& a, const ConformalMatrix& b) {
    return ConformalMatrix(Mat6(a.m * b.m));
  }
};

/// M^T G M = G within tol entrywise.
inline bool is_conformal_matrix(const Mat6& m, double tol = kDefaultTol) {
  return ((m.transpose() * ambient_metric() * m - ambient_metric()).cwiseAbs().maxCoeff() <= tol);
}

inline bool is_conformal_matrix(const ConformalMatrix& m, double tol = kDefaultTol) {
  return is_conformal_matrix(m.m, tol);
}

/// Group inverse via M^{-1} = G^{-1} M^T G (exact for conformal matrices,
/// no linear solve involved).
inline ConformalMatrix inverse(const ConformalMatrix& m) {
  return ConformalMatrix(Mat6(ambient_metric() * m.m.transpose() * ambient_metric()));
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Rotation in the coordinate 2-plane (i, j), 1-based indices in 1..4.
/// theta is an angle for spatial planes and a rapidity for planes through x^4.
struct Rotation {
  int i = 1;
  int j = 2;
  double theta = 0.0;
};

struct Dilation {
  double theta = 0.0;
};

struct Translation {
  MinkowskiVector a;
};

struct SpecialConformal {
  MinkowskiVector b;
};

struct Inversion {};

using GeneratorSpec = std::variant<Rotation, Dilation, Translation, SpecialConformal, Inversion>;

namespace detail {

inline Mat6 rotation_matrix(const Rotation& r) {
  if (r.i < 1 || r.j < 1 || r.i > 4 || r.j > 4 || r.i >= r.j) {
    throw InvalidSpecError("Rotation: need 1 <= i < j <= 4");
  }
  if (!std::isfinite(r.theta)) throw InvalidSpecError("Rotation: non-finite angle");
  const int i = r.i - 1, j = r.j - 1;
  Mat6 m = Mat6::Identity();
  if (r.j == 4) {  // boost: (x^i)^2 - (x^4)^2 preserved
    m(i, i) = std::cosh(r.theta);
    m(i, j) = std::sinh(r.theta);
    m(j, i) = std::sinh(r.theta);
    m(j, j) = std::cosh(r.theta);
  } else {
    m(i, i) = std::cos(r.theta);
    m(i, j) = -std::sin(r.theta);
    m(j, i) = std::sin(r.theta);
    m(j, j) = std::cos(r.theta);
  }
  return m;
}

inline Mat6 dilation_matrix(const Dilation& d) {
  if (!std::isfinite(d.theta)) throw InvalidSpecError("Dilation: non-finite rapidity");
  Mat6 m = Mat6::Identity();
  m(4, 4) = std::cosh(d.theta);
  m(4, 5) = std::sinh(d.theta);
  m(5, 4) = std::sinh(d.theta);
  m(5, 5) = std::cosh(d.theta);
  return m;
}

inline Mat6 translation_matrix(const MinkowskiVector& a) {
  if (!is_finite(a)) throw InvalidSpecError("Translation: non-finite vector");
  const double qa = minkowski_q(a);
  Mat6 m = Mat6::Identity();
  for (int mu = 0; mu < 4; ++mu) {
    m(mu, 4) = a.c[mu];
    m(mu, 5) = -a.c[mu];
    const double eta_a = (mu == 3) ? -a.c[mu] : a.c[mu];  // (eta a)_mu
    m(4, mu) = -eta_a;
    m(5, mu) = -eta_a;
  }
  m(4, 4) = 1.0 - 0.5 * qa;
  m(4, 5) = 0.5 * qa;
  m(5, 4) = -0.5 * qa;
  m(5, 5) = 1.0 + 0.5 * qa;
  return m;
}

inline Mat6 special_conformal_matrix(const MinkowskiVector& b) {
  if (!is_finite(b)) throw InvalidSpecError("SpecialConformal: non-finite vector");
  const double qb = minkowski_q(b);
  Mat6 m = Mat6::Identity();
  for (int mu = 0; mu < 4; ++mu) {
    m(mu, 4) = b.c[mu];
    m(mu, 5) = b.c[mu];
    const double eta_b = (mu == 3) ? -b.c[mu] : b.c[mu];
    m(4, mu) = -eta_b;
    m(5, mu) = eta_b;
  }
  m(4, 4) = 1.0 - 0.5 * qb;
  m(4, 5) = -0.5 * qb;
  m(5, 4) = 0.5 * qb;
  m(5, 5) = 1.0 + 0.5 * qb;
  return m;
}

inline Mat6 inversion_matrix() {
  Mat6 m = Mat6::Identity();
  m(4, 4) = -1.0;
  return m;
}

}  // namespace detail

inline ConformalMatrix generator(const GeneratorSpec& spec) {
  const Mat6 m = std::visit(
      [](const auto& s) -> Mat6 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Rotation>) return detail::rotation_matrix(s);
        else if constexpr (std::is_same_v<T, Dilation>) return detail::dilation_matrix(s);
        else if constexpr (std::is_same_v<T, Translation>) return detail::translation_matrix(s.a);
        else if constexpr (std::is_same_v<T, SpecialConformal>)
          return detail::special_conformal_matrix(s.b);
        else return detail::inversion_matrix();
      },
      spec);
  return ConformalMatrix(m);
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

/// Linear action on the ambient space; preserves Q up to roundoff.
inline AmbientVector act_ambient(const ConformalMatrix& m, const AmbientVector& X) {
  return AmbientVector(Vec6(m.m * X.c));
}

/// Conjugation of the ambient action by the chart maps. Throws
/// AtDomainInfinityError when the image leaves the chart (the group acts on
/// all of Sigma_-+, the chart does not cover it).
inline ChartPoint act_chart(const ConformalMatrix& m, const ChartPoint& p,
                            double tol = kDefaultTol) {
  return ambient_to_chart(act_ambient(m, chart_to_ambient(p)), tol);
}

/// Induced map of compactified Minkowski space together with the
/// ray-rescaling factor 1/(X^5 - X^6) relating the section representatives.
/// conformal_scale is empty when the image is at infinity.
struct MinkowskiAction {
  ConeProjection image;
  std::optional<double> conformal_scale;
};

inline MinkowskiAction act_minkowski(const ConformalMatrix& m, const MinkowskiVector& x,
                                     double tol = kDefaultTol) {
  const AmbientVector X = act_ambient(m, tau_plus(x));
  const double u = X.c[4] - X.c[5];
  const double scale = 1.0 + X.c.squaredNorm();
  if (std::abs(u) <= tol * scale) {
    return {AtInfinity{AmbientVector(Vec6(X.c / X.c.norm()))}, std::nullopt};
  }
  return {MinkowskiVector(Vec4(X.c.head<4>() / u)), 1.0 / u};
}

/// Max-entry residual |J^T g(image) J - g(p)| of the chart action's
/// differential, with J taken by central differences (step h per direction,
/// scaled by max(1, |coordinate|)). Small residual certifies an isometry.
/// The default step balances truncation against rounding for images within
/// a couple of orders of magnitude of the base point.
inline double pullback_metric_residual(const ConformalMatrix& m, const ChartPoint& p,
                                       double h = 1e-6) {
  if (!(h > 0.0)) throw InvalidStepError("pullback_metric_residual: h must be > 0");
  const Vec5 c0 = detail::chart_coords(p);
  Mat5 jac;
  for (int a = 0; a < 5; ++a) {
    const double step = detail::fd_step(h, c0[a]);
    Vec5 cp = c0, cm = c0;
    cp[a] += step;
    cm[a] -= step;
    const ChartPoint qp = act_chart(m, detail::with_coords(p, cp));
    const ChartPoint qm = act_chart(m, detail::with_coords(p, cm));
    jac.col(a) = (detail::chart_coords(qp) - detail::chart_coords(qm)) / (2.0 * step);
  }
  const ChartPoint q = act_chart(m, p);
  const Mat5 pulled = jac.transpose() * metric_closed_form(q) * jac;
  return (pulled - metric_closed_form(p)).cwiseAbs().maxCoeff();
}

}  // namespace confdom
