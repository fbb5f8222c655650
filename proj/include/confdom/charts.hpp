#pragma once

// Half-space-style charts on the hypersurfaces Sigma_-+ = {Q = -+1}.
//
// On the region X^5 - X^6 > 0 the five coordinates are
//   x^mu = X^mu / (X^5 - X^6),   lambda = 1 / (X^5 - X^6) > 0,
// and the inverse embedding (Sigma_-) is
//   X^mu = x^mu / lambda,
//   X^5  = (1 - q(x) - lambda^2) / (2 lambda),
//   X^6  = -(1 + q(x) + lambda^2) / (2 lambda).
// For Sigma_+ the lambda^2 terms flip sign. The region X^5 - X^6 < 0 is
// covered by negating the ambient image (side = -1).
//
// Induced metrics, in index order (x^1..x^4, lambda):
//   Sigma_-:  (1/lambda^2) diag(1, 1, 1, -1,  1)   signature (4,1)
//   Sigma_+:  (1/lambda^2) diag(1, 1, 1, -1, -1)   signature (3,2)

#include <cmath>

#include "confdom/ambient.hpp"
#include "confdom/errors.hpp"

namespace confdom {

enum class DomainTag { SigmaMinus, SigmaPlus };

/// +1 for Sigma_-, -1 for Sigma_+ : the sign of the flat lambda-lambda entry.
inline double flat_lambda_sign(DomainTag d) { return d == DomainTag::SigmaMinus ? 1.0 : -1.0; }

/// Sign of Q on the domain: -1 for Sigma_-, +1 for Sigma_+.
inline double sigma_sign(DomainTag d) { return d == DomainTag::SigmaMinus ? -1.0 : 1.0; }

struct ChartPoint {
  DomainTag domain = DomainTag::SigmaMinus;
  MinkowskiVector x;
  double lambda = 1.0;  // strictly positive
  int side = +1;        // sign of X^5 - X^6

  ChartPoint() = default;
  ChartPoint(DomainTag d, const MinkowskiVector& x_, double lambda_, int side_ = +1)
      : domain(d), x(x_), lambda(lambda_), side(side_) {
    if (!(lambda > 0.0)) throw InvalidLambdaError("ChartPoint: lambda must be > 0");
    if (side != +1 && side != -1) throw InvalidSpecError("ChartPoint: side must be +-1");
  }
};

/// 5x5 symmetric metric in chart index order (x^1..x^4, lambda).
using MetricTensor = Mat5;

/// Embed a chart point into the ambient space. Q of the result is -1 on
/// Sigma_- and +1 on Sigma_+, and X^5 - X^6 = side / lambda.
inline AmbientVector chart_to_ambient(const ChartPoint& p) {
  if (!(p.lambda > 0.0)) throw InvalidLambdaError("chart_to_ambient: lambda must be > 0");
  const double q = minkowski_q(p.x);
  // The lambda^2 terms carry the opposite sign on Sigma_+.
  const double sl2 = flat_lambda_sign(p.domain) * p.lambda * p.lambda;
  AmbientVector X;
  X.c.head<4>() = p.x.c / p.lambda;
  X.c[4] = (1.0 - q - sl2) / (2.0 * p.lambda);
  X.c[5] = -(1.0 + q + sl2) / (2.0 * p.lambda);
  if (p.side < 0) X.c = -X.c;
  return X;
}

/// Invert the chart: x^mu = X^mu/(X^5-X^6), lambda = 1/|X^5-X^6|,
/// side = sign(X^5-X^6), domain from the sign of Q(X).
inline ChartPoint ambient_to_chart(const AmbientVector& X, double tol = kDefaultTol) {
  const double q = quadratic_form(X);
  const double scale = 1.0 + X.c.squaredNorm();
  if (std::abs(std::abs(q) - 1.0) > tol * scale) {
    throw NotOnSigmaError("ambient_to_chart: Q(X) != +-1 for " + to_string(X));
  }
  const double u = X.c[4] - X.c[5];
  if (std::abs(u) <= tol * scale) {
    throw AtDomainInfinityError("ambient_to_chart: X^5 = X^6 (domain infinity)");
  }
  const DomainTag d = q > 0 ? DomainTag::SigmaPlus : DomainTag::SigmaMinus;
  return ChartPoint(d, MinkowskiVector(Vec4(X.c.head<4>() / u)), 1.0 / std::abs(u),
                    u > 0 ? +1 : -1);
}

/// Whether a Sigma point sits on the X^5 = X^6 locus the chart omits.
/// At infinity the reduced point (X^1..X^4) lies on q = -1 (Sigma_-,
/// two-sheeted hyperboloid) or q = +1 (Sigma_+, one-sheeted); violation of
/// that identity is reported as NotOnSigmaError.
inline bool is_domain_infinity(const AmbientVector& X, double tol = kDefaultTol) {
  const double q = quadratic_form(X);
  const double scale = 1.0 + X.c.squaredNorm();
  if (std::abs(std::abs(q) - 1.0) > tol * scale) {
    throw NotOnSigmaError("is_domain_infinity: Q(X) != +-1 for " + to_string(X));
  }
  const double u = X.c[4] - X.c[5];
  if (std::abs(u) > tol * scale) return false;
  // Post-check: q(reduced) = Q exactly when X^5 = X^6; the tolerance widens
  // with |X^5 + X^6| because q(reduced) = Q + u * (X^5 + X^6).
  const double q_reduced = minkowski_q(X.minkowski_part());
  const double expected = q > 0 ? 1.0 : -1.0;
  if (std::abs(q_reduced - expected) > tol * scale * (1.0 + std::abs(X.c[4] + X.c[5]))) {
    throw NotOnSigmaError("is_domain_infinity: reduced point off the infinity hyperboloid");
  }
  return true;
}

/// Closed-form induced metric: (1/lambda^2) diag(1,1,1,-1,+-1).
inline MetricTensor metric_closed_form(const ChartPoint& p) {
  if (!(p.lambda > 0.0)) throw InvalidLambdaError("metric_closed_form: lambda must be > 0");
  Vec5 d;
  d << 1, 1, 1, -1, flat_lambda_sign(p.domain);
  return MetricTensor((d / (p.lambda * p.lambda)).asDiagonal());
}

namespace detail {
/// Per-direction central-difference step: h scaled by max(1, |coordinate|).
inline double fd_step(double h, double coord) { return h * std::max(1.0, std::abs(coord)); }

inline Vec5 chart_coords(const ChartPoint& p) {
  Vec5 c;
  c << p.x.c[0], p.x.c[1], p.x.c[2], p.x.c[3], p.lambda;
  return c;
}

inline ChartPoint with_coords(const ChartPoint& p, const Vec5& c) {
  return ChartPoint(p.domain, MinkowskiVector(Vec4(c.head<4>())), c[4], p.side);
}
}  // namespace detail

/// Numerical induced metric g = J^T G J, with the 6x5 Jacobian of
/// chart_to_ambient computed by central differences. The step in each
/// direction is h * max(1, |coordinate|) and must stay below lambda.
inline MetricTensor metric_numerical(const ChartPoint& p, double h = 1e-5) {
  if (!(p.lambda > 0.0)) throw InvalidLambdaError("metric_numerical: lambda must be > 0");
  if (!(h > 0.0)) throw InvalidStepError("metric_numerical: h must be > 0");
  if (detail::fd_step(h, p.lambda) >= p.lambda) {
    throw StepTooLargeError("metric_numerical: step h * max(1, lambda) >= lambda");
  }
  const Vec5 c0 = detail::chart_coords(p);
  Eigen::Matrix<double, 6, 5> jac;
  for (int a = 0; a < 5; ++a) {
    const double step = detail::fd_step(h, c0[a]);
    Vec5 cp = c0, cm = c0;
    cp[a] += step;
    cm[a] -= step;
    const Vec6 Xp = chart_to_ambient(detail::with_coords(p, cp)).c;
    const Vec6 Xm = chart_to_ambient(detail::with_coords(p, cm)).c;
    jac.col(a) = (Xp - Xm) / (2.0 * step);
  }
  return MetricTensor(jac.transpose() * ambient_metric() * jac);
}

/// Metric signature as (#positive, #negative) eigenvalues.
inline std::pair<int, int> metric_signature(const MetricTensor& g, double tol = kDefaultTol) {
  Eigen::SelfAdjointEigenSolver<Mat5> es(g, Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0;
  for (int i = 0; i < 5; ++i) {
    if (es.eigenvalues()[i] > tol) ++pos;
    else if (es.eigenvalues()[i] < -tol) ++neg;
  }
  return {pos, neg};
}

}  // namespace confdom
