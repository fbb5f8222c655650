#pragma once

// Christoffel symbols and geodesics of the half-space charts.
//
// On Sigma_- the only nonvanishing symbols are (indices mu,nu,sigma in 1..4,
// index 5 = lambda):
//   Gamma^mu_{5 sigma} = -delta^mu_sigma / lambda
//   Gamma^5_{nu sigma} =  eta_{nu sigma} / lambda
//   Gamma^5_{5 5}      = -1 / lambda
// On Sigma_+ the same conformal-factor computation flips the sign of
// Gamma^5_{nu sigma} (the flat block's lambda entry is -1 there).
//
// Affine-parameter equations (Sigma_-):
//   d2x^mu/ds2  = (2/lambda) (dx^mu/ds)(dlambda/ds)
//   d2lambda/ds2 = -(1/lambda) (eta(x', x') - (dlambda/ds)^2)
// With lambda itself as (non-affine) parameter they reduce to
//   x''^mu = x'^mu (1 + x'^2) / lambda,   x'^2 = eta_{nu sigma} x'^nu x'^sigma,
// whose solution classes are a parabola pair (null direction), a hyperbola
// (timelike) and a semicircle (spacelike), plus constant-lambda null lines.

#include <array>
#include <cmath>
#include <vector>

#include "confdom/charts.hpp"

namespace confdom {

// ---------------------------------------------------------------------------
// Christoffel symbols
// ---------------------------------------------------------------------------

/// Gamma^a_{bc} over chart indices 0..4 (4 = lambda); symmetric in (b,c).
struct ChristoffelSymbols {
  std::array<double, 125> v{};

  double& operator()(int a, int b, int c) { return v[(a * 5 + b) * 5 + c]; }
  double operator()(int a, int b, int c) const { return v[(a * 5 + b) * 5 + c]; }
};

inline ChristoffelSymbols christoffel_closed_form(const ChartPoint& p) {
  if (!(p.lambda > 0.0)) throw InvalidLambdaError("christoffel_closed_form: lambda must be > 0");
  const double inv_l = 1.0 / p.lambda;
  const double eps = flat_lambda_sign(p.domain);
  ChristoffelSymbols g;
  for (int mu = 0; mu < 4; ++mu) {
    g(mu, 4, mu) = -inv_l;
    g(mu, mu, 4) = -inv_l;
    const double eta = (mu == 3) ? -1.0 : 1.0;
    g(4, mu, mu) = eps * eta * inv_l;
  }
  g(4, 4, 4) = -inv_l;
  return g;
}

/// Gamma from the metric by the standard formula
/// Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc}),
/// with the metric derivatives taken by central differences of
/// metric_closed_form. Cross-validates the closed-form symbols.
inline ChristoffelSymbols christoffel_numerical(const ChartPoint& p, double h = 1e-5) {
  if (!(p.lambda > 0.0)) throw InvalidLambdaError("christoffel_numerical: lambda must be > 0");
  if (!(h > 0.0)) throw InvalidStepError("christoffel_numerical: h must be > 0");
  if (detail::fd_step(h, p.lambda) >= p.lambda) {
    throw StepTooLargeError("christoffel_numerical: step h * max(1, lambda) >= lambda");
  }
  const Vec5 c0 = detail::chart_coords(p);
  std::array<Mat5, 5> dg;  // dg[d] = d g / d coord_d
  for (int d = 0; d < 5; ++d) {
    const double step = detail::fd_step(h, c0[d]);
    Vec5 cp = c0, cm = c0;
    cp[d] += step;
    cm[d] -= step;
    dg[d] = (metric_closed_form(detail::with_coords(p, cp)) -
             metric_closed_form(detail::with_coords(p, cm))) /
            (2.0 * step);
  }
  const Mat5 ginv = metric_closed_form(p).inverse();
  ChristoffelSymbols out;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int c = b; c < 5; ++c) {
        double s = 0.0;
        for (int d = 0; d < 5; ++d) {
          s += 0.5 * ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        }
        out(a, b, c) = s;
        out(a, c, b) = s;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geodesic state and paths
// ---------------------------------------------------------------------------

enum class Parameterization { Affine, Lambda };
enum class TerminationReason { Completed, LambdaFloorReached, StepFailure };

/// A point with its parameter-velocity. For affine parameterization the
/// velocity is (dx^1/ds..dx^4/ds, dlambda/ds); for lambda parameterization it
/// is (dx^mu/dlambda, 1).
struct GeodesicState {
  ChartPoint point;
  Vec5 velocity = Vec5::Zero();
};

struct GeodesicPath {
  struct Sample {
    double param;
    GeodesicState state;
  };

  Parameterization parameterization = Parameterization::Affine;
  TerminationReason termination = TerminationReason::Completed;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }
};

enum class DirectionClass { Null, Timelike, Spacelike };

/// Classify x' by the sign of x'^2 = eta(x', x'). Values within
/// tol * (1 + |x'|^2) of zero count as Null.
inline DirectionClass classify_direction(const Vec4& xprime, double tol = kDefaultTol) {
  const double q = minkowski_q(MinkowskiVector(xprime));
  const double scale = 1.0 + xprime.squaredNorm();
  if (std::abs(q) <= tol * scale) return DirectionClass::Null;
  return q < 0 ? DirectionClass::Timelike : DirectionClass::Spacelike;
}

/// g(v, v) with the closed-form chart metric; conserved along affine geodesics.
inline double metric_speed(const GeodesicState& state) {
  const MetricTensor g = metric_closed_form(state.point);
  return state.velocity.dot(g * state.velocity);
}

/// Right-hand side of the affine geodesic system: returns
/// (dx/ds, dlambda/ds, d2x/ds2, d2lambda/ds2) as 10 reals.
inline std::array<double, 10> affine_rhs(const GeodesicState& state) {
  const double l = state.point.lambda;
  if (!(l > 0.0)) throw InvalidLambdaError("affine_rhs: lambda must be > 0");
  const double eps = flat_lambda_sign(state.point.domain);
  const Vec5& v = state.velocity;
  const double vx_sq = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - v[3] * v[3];
  std::array<double, 10> out{};
  for (int i = 0; i < 5; ++i) out[i] = v[i];
  for (int mu = 0; mu < 4; ++mu) out[5 + mu] = (2.0 / l) * v[mu] * v[4];
  out[9] = -(eps * vx_sq - v[4] * v[4]) / l;
  return out;
}

/// Reduced lambda-parameterized equation on Sigma_-:
/// x''^mu = x'^mu (1 + x'^2) / lambda.
inline Vec4 lambda_rhs(const Vec4& xprime, double lambda) {
  if (!(lambda > 0.0)) throw InvalidLambdaError("lambda_rhs: lambda must be > 0");
  const double xp_sq = minkowski_q(MinkowskiVector(xprime));
  // Scale before dividing so a null direction reduces to x'/lambda exactly.
  return Vec4((xprime * (1.0 + xp_sq)) / lambda);
}

namespace detail {

using Vec10 = Eigen::Matrix<double, 10, 1>;

inline Vec10 affine_system_rhs(DomainTag domain, const Vec10& y) {
  // y = (x^1..x^4, lambda, v^1..v^4, vlambda)
  const double l = y[4];
  const double eps = flat_lambda_sign(domain);
  const double vx_sq = y[5] * y[5] + y[6] * y[6] + y[7] * y[7] - y[8] * y[8];
  Vec10 d;
  d.head<5>() = y.tail<5>();
  for (int mu = 0; mu < 4; ++mu) d[5 + mu] = (2.0 / l) * y[5 + mu] * y[9];
  d[9] = -(eps * vx_sq - y[9] * y[9]) / l;
  return d;
}

template <typename Rhs, typename State>
State rk4_step(const Rhs& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(State(y + (0.5 * h) * k1));
  const State k3 = f(State(y + (0.5 * h) * k2));
  const State k4 = f(State(y + h * k3));
  return State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace detail

/// Fixed-step classical RK4 on the affine system. Halts early with
/// LambdaFloorReached when a step would take lambda to or below the floor,
/// and with StepFailure if a step produces non-finite values.
inline GeodesicPath integrate_affine(const GeodesicState& initial, double s_max, double h = 1e-3,
                                     double lambda_floor = 1e-6) {
  if (!(h > 0.0) || !(s_max > 0.0) || !(lambda_floor > 0.0)) {
    throw InvalidStepError("integrate_affine: h, s_max and lambda_floor must be > 0");
  }
  if (!(initial.point.lambda > lambda_floor)) {
    throw InvalidStepError("integrate_affine: initial lambda must exceed the floor");
  }
  const DomainTag domain = initial.point.domain;
  const int side = initial.point.side;
  auto rhs = [domain](const detail::Vec10& y) { return detail::affine_system_rhs(domain, y); };

  detail::Vec10 y;
  y.head<4>() = initial.point.x.c;
  y[4] = initial.point.lambda;
  y.tail<5>() = initial.velocity;

  GeodesicPath path;
  path.parameterization = Parameterization::Affine;
  auto push = [&](double s, const detail::Vec10& yy) {
    GeodesicState st;
    st.point = ChartPoint(domain, MinkowskiVector(Vec4(yy.head<4>())), yy[4], side);
    st.velocity = yy.tail<5>();
    path.samples.push_back({s, st});
  };
  push(0.0, y);

  const long n_steps = static_cast<long>(std::ceil(s_max / h));
  double s = 0.0;
  for (long i = 0; i < n_steps; ++i) {
    const double step = std::min(h, s_max - s);
    if (step <= 0.0) break;
    const detail::Vec10 y_next = detail::rk4_step(rhs, y, step);
    if (!y_next.allFinite()) {
      path.termination = TerminationReason::StepFailure;
      return path;
    }
    if (y_next[4] <= lambda_floor) {
      path.termination = TerminationReason::LambdaFloorReached;
      return path;
    }
    y = y_next;
    s += step;
    push(s, y);
  }
  path.termination = TerminationReason::Completed;
  return path;
}

/// RK4 on the reduced Sigma_- equation with lambda as the parameter, from
/// lambda0 to lambda1 in either direction. The output states carry
/// velocity = (x', 1).
inline GeodesicPath integrate_lambda(const MinkowskiVector& x0, const Vec4& xprime0,
                                     double lambda0, double lambda1, double h = 1e-3) {
  if (!(h > 0.0)) throw InvalidStepError("integrate_lambda: h must be > 0");
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0)) {
    throw InvalidStepError("integrate_lambda: lambda range must be > 0");
  }

  using Vec8 = Eigen::Matrix<double, 8, 1>;

  GeodesicPath path;
  path.parameterization = Parameterization::Lambda;
  auto push = [&](double lambda, const Vec8& yy) {
    GeodesicState st;
    st.point = ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(Vec4(yy.head<4>())), lambda, +1);
    st.velocity.head<4>() = yy.tail<4>();
    st.velocity[4] = 1.0;
    path.samples.push_back({lambda, st});
  };

  Vec8 y;
  y.head<4>() = x0.c;
  y.tail<4>() = xprime0;
  double lambda = lambda0;
  push(lambda, y);

  const double span = lambda1 - lambda0;
  if (span == 0.0) return path;
  const double dir = span > 0 ? 1.0 : -1.0;
  const long n_steps = static_cast<long>(std::ceil(std::abs(span) / h));
  for (long i = 0; i < n_steps; ++i) {
    const double step = dir * std::min(h, std::abs(lambda1 - lambda));
    if (step == 0.0) break;
    // RK4 with the independent variable lambda entering the RHS directly.
    auto f = [&](double l, const Vec8& yy) {
      Vec8 d;
      d.head<4>() = yy.tail<4>();
      d.tail<4>() = lambda_rhs(Vec4(yy.tail<4>()), l);
      return d;
    };
    const Vec8 k1 = f(lambda, y);
    const Vec8 k2 = f(lambda + 0.5 * step, Vec8(y + (0.5 * step) * k1));
    const Vec8 k3 = f(lambda + 0.5 * step, Vec8(y + (0.5 * step) * k2));
    const Vec8 k4 = f(lambda + step, Vec8(y + step * k3));
    const Vec8 y_next = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y_next.allFinite()) {
      path.termination = TerminationReason::StepFailure;
      return path;
    }
    y = y_next;
    lambda += step;
    push(lambda, y);
  }
  path.termination = TerminationReason::Completed;
  return path;
}

// ---------------------------------------------------------------------------
// Closed-form solution families (oracles for the integrators)
// ---------------------------------------------------------------------------

/// Exact geodesics of Sigma_-:
///   NullParabola       x^1 = a lambda^2 + x1_0, x^4 = a lambda^2 + x4_0
///   TimelikeHyperbola  (x^4 - x4_0)^2 - lambda^2 = a^2           (branch +-)
///   SpacelikeSemicircle(x^1 - x1_0)^2 + lambda^2 = a^2, 0 < lambda < |a|
///   ConstantLambdaNull x^mu(s) = s u^mu + x0^mu with u null, lambda fixed
/// The first three are lambda-parameterized, the last is affine.
class ClosedFormGeodesic {
 public:
  enum class Kind { NullParabola, TimelikeHyperbola, SpacelikeSemicircle, ConstantLambdaNull };

  static ClosedFormGeodesic null_parabola(double a, const MinkowskiVector& offset) {
    ClosedFormGeodesic g;
    g.kind_ = Kind::NullParabola;
    g.a_ = a;
    g.base_ = offset;
    return g;
  }

  /// branch = +-1 selects x^4 = x4_0 +- sqrt(a^2 + lambda^2). a = 0 gives the
  /// degenerate straight lines x^4 = x4_0 +- lambda.
  static ClosedFormGeodesic timelike_hyperbola(double a, double x4_0, int branch,
                                               const Vec4& fixed_spatial = Vec4::Zero()) {
    if (branch != +1 && branch != -1) {
      throw ParamDomainError("timelike_hyperbola: branch must be +-1");
    }
    ClosedFormGeodesic g;
    g.kind_ = Kind::TimelikeHyperbola;
    g.a_ = a;
    g.branch_ = branch;
    g.base_ = MinkowskiVector(Vec4(fixed_spatial[0], fixed_spatial[1], fixed_spatial[2], x4_0));
    return g;
  }

  /// branch = +-1 selects x^1 = x1_0 +- sqrt(a^2 - lambda^2); requires a != 0.
  static ClosedFormGeodesic spacelike_semicircle(double a, double x1_0, int branch,
                                                 const Vec4& fixed_rest = Vec4::Zero()) {
    if (branch != +1 && branch != -1) {
      throw ParamDomainError("spacelike_semicircle: branch must be +-1");
    }
    if (a == 0.0) throw ParamDomainError("spacelike_semicircle: radius must be nonzero");
    ClosedFormGeodesic g;
    g.kind_ = Kind::SpacelikeSemicircle;
    g.a_ = std::abs(a);
    g.branch_ = branch;
    g.base_ = MinkowskiVector(Vec4(x1_0, fixed_rest[1], fixed_rest[2], fixed_rest[3]));
    return g;
  }

  static ClosedFormGeodesic constant_lambda_null(const Vec4& u, const MinkowskiVector& x0,
                                                 double lambda0, double tol = kDefaultTol) {
    if (!(lambda0 > 0.0)) throw InvalidLambdaError("constant_lambda_null: lambda must be > 0");
    if (classify_direction(u, tol) != DirectionClass::Null) {
      throw ParamDomainError("constant_lambda_null: direction must be null");
    }
    ClosedFormGeodesic g;
    g.kind_ = Kind::ConstantLambdaNull;
    g.base_ = x0;
    g.u_ = u;
    g.lambda0_ = lambda0;
    return g;
  }

  Kind kind() const { return kind_; }
  double radius() const { return a_; }
  Parameterization parameterization() const {
    return kind_ == Kind::ConstantLambdaNull ? Parameterization::Affine
                                             : Parameterization::Lambda;
  }

  /// Parameter domain: lambda > 0 for the lambda-parameterized kinds (with
  /// lambda < |a| for the semicircle); all s for the affine null line.
  GeodesicState state_at(double param) const {
    GeodesicState st;
    switch (kind_) {
      case Kind::NullParabola: {
        require_positive_lambda(param);
        const double w = a_ * param * param;
        st.point = ChartPoint(DomainTag::SigmaMinus,
                              MinkowskiVector(base_.c[0] + w, base_.c[1], base_.c[2], base_.c[3] + w),
                              param, +1);
        const double wp = 2.0 * a_ * param;
        st.velocity << wp, 0, 0, wp, 1;
        return st;
      }
      case Kind::TimelikeHyperbola: {
        require_positive_lambda(param);
        const double r = std::sqrt(a_ * a_ + param * param);
        st.point = ChartPoint(
            DomainTag::SigmaMinus,
            MinkowskiVector(base_.c[0], base_.c[1], base_.c[2], base_.c[3] + branch_ * r), param,
            +1);
        st.velocity << 0, 0, 0, branch_ * param / r, 1;
        return st;
      }
      case Kind::SpacelikeSemicircle: {
        require_positive_lambda(param);
        if (!(param < a_)) {
          throw ParamDomainError("spacelike_semicircle: lambda must stay below the radius");
        }
        const double r = std::sqrt(a_ * a_ - param * param);
        st.point = ChartPoint(
            DomainTag::SigmaMinus,
            MinkowskiVector(base_.c[0] + branch_ * r, base_.c[1], base_.c[2], base_.c[3]), param,
            +1);
        st.velocity << -branch_ * param / r, 0, 0, 0, 1;
        return st;
      }
      case Kind::ConstantLambdaNull: {
        st.point = ChartPoint(DomainTag::SigmaMinus,
                              MinkowskiVector(Vec4(base_.c + param * u_)), lambda0_, +1);
        st.velocity.head<4>() = u_;
        st.velocity[4] = 0.0;
        return st;
      }
    }
    throw ParamDomainError("closed-form geodesic: unknown kind");
  }

  GeodesicPath sample(double p0, double p1, int n) const {
    if (n < 2) throw TooFewSamplesError("closed-form sample: need at least 2 points");
    GeodesicPath path;
    path.parameterization = parameterization();
    path.termination = TerminationReason::Completed;
    path.samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double t = p0 + (p1 - p0) * static_cast<double>(i) / (n - 1);
      path.samples.push_back({t, state_at(t)});
    }
    return path;
  }

  /// Residual of the family's algebraic invariant at a state; exactly zero on
  /// the family, used to measure how far integrated paths drift off it.
  double invariant_residual(const GeodesicState& s) const {
    const Vec4& x = s.point.x.c;
    const double l = s.point.lambda;
    switch (kind_) {
      case Kind::NullParabola: {
        const double w = a_ * l * l;
        double r = std::abs(x[0] - base_.c[0] - w);
        r = std::max(r, std::abs(x[3] - base_.c[3] - w));
        r = std::max(r, std::abs(x[1] - base_.c[1]));
        r = std::max(r, std::abs(x[2] - base_.c[2]));
        return r;
      }
      case Kind::TimelikeHyperbola: {
        const double d = x[3] - base_.c[3];
        return std::abs(d * d - l * l - a_ * a_);
      }
      case Kind::SpacelikeSemicircle: {
        const double d = x[0] - base_.c[0];
        return std::abs(d * d + l * l - a_ * a_);
      }
      case Kind::ConstantLambdaNull: {
        // x - x0 must be collinear with u and lambda constant.
        double r = std::abs(l - lambda0_);
        const Vec4 d = x - base_.c;
        int k = 0;
        u_.cwiseAbs().maxCoeff(&k);
        const double t = d[k] / u_[k];
        r = std::max(r, (d - t * u_).cwiseAbs().maxCoeff());
        return r;
      }
    }
    throw ParamDomainError("closed-form geodesic: unknown kind");
  }

  /// Worst invariant residual over a whole path.
  double invariant_residual(const GeodesicPath& path) const {
    double worst = 0.0;
    for (const auto& s : path.samples) worst = std::max(worst, invariant_residual(s.state));
    return worst;
  }

 private:
  static void require_positive_lambda(double l) {
    if (!(l > 0.0)) throw ParamDomainError("closed-form geodesic: lambda must be > 0");
  }

  Kind kind_ = Kind::NullParabola;
  double a_ = 0.0;
  int branch_ = +1;
  MinkowskiVector base_;   // coordinate offsets (meaning depends on kind)
  Vec4 u_ = Vec4::Zero();  // ConstantLambdaNull direction
  double lambda0_ = 1.0;   // ConstantLambdaNull level
};

// ---------------------------------------------------------------------------
// Plane-section test
// ---------------------------------------------------------------------------

/// sigma_3 / sigma_1 of the N x 6 matrix of ambient images of the path
/// samples. A geodesic lies in a 2-plane through the origin of R^{4,2}, so
/// the ratio is at the rounding floor for true geodesics and grows once the
/// samples leave any common 2-plane.
inline double plane_section_residual(const GeodesicPath& path) {
  if (path.size() < 3) {
    throw TooFewSamplesError("plane_section_residual: need at least 3 samples");
  }
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(path.size()), 6);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    rows.row(i) = chart_to_ambient(path.samples[static_cast<std::size_t>(i)].state.point).c;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const auto& sv = svd.singularValues();
  return sv[2] / sv[0];
}

}  // namespace confdom
