#include <catch2/catch.hpp>

#include "confdom/geodesics.hpp"
#include "confdom/rng.hpp"

using namespace confdom;

namespace {
const ChartPoint kOrigin(DomainTag::SigmaMinus, MinkowskiVector(), 1.0, +1);
}

TEST_CASE("closed-form Christoffel symbols") {
  const ChristoffelSymbols g = christoffel_closed_form(kOrigin);
  CHECK(g(0, 4, 0) == -1.0);  // Gamma^1_{5 1}
  CHECK(g(4, 3, 3) == -1.0);  // Gamma^5_{4 4} = eta_44 / lambda
  CHECK(g(4, 0, 0) == 1.0);   // Gamma^5_{1 1}
  CHECK(g(4, 4, 4) == -1.0);  // Gamma^5_{5 5}
  CHECK(g(0, 1, 2) == 0.0);   // Gamma^1_{2 3}

  const ChristoffelSymbols h =
      christoffel_closed_form(ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(), 0.5));
  CHECK(h(1, 4, 1) == -2.0);  // -1/lambda

  // Sigma_+ flips the sign of Gamma^5_{nu sigma} only.
  const ChristoffelSymbols p =
      christoffel_closed_form(ChartPoint(DomainTag::SigmaPlus, MinkowskiVector(), 1.0));
  CHECK(p(4, 0, 0) == -1.0);
  CHECK(p(4, 3, 3) == 1.0);
  CHECK(p(0, 4, 0) == -1.0);
  CHECK(p(4, 4, 4) == -1.0);
}

TEST_CASE("numerical Christoffel route agrees with the closed form", "[property]") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p(d,
                       MinkowskiVector(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                       rng.uniform(-3, 3), rng.uniform(-3, 3)),
                       rng.log_uniform(0.1, 10.0));
    const ChristoffelSymbols closed = christoffel_closed_form(p);
    const ChristoffelSymbols numeric = christoffel_numerical(p, 1e-5);
    double diff = 0.0;
    for (std::size_t i = 0; i < closed.v.size(); ++i)
      diff = std::max(diff, std::abs(closed.v[i] - numeric.v[i]));
    CHECK(diff <= 1e-4 / p.lambda);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = b; c < 5; ++c) CHECK(numeric(a, b, c) == numeric(a, c, b));
  }
  CHECK_THROWS_AS(
      christoffel_numerical(ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(), 0.3), 0.4),
      StepTooLargeError);
}

TEST_CASE("affine right-hand side") {
  GeodesicState s;
  s.point = kOrigin;

  // Null direction at constant lambda: all accelerations vanish.
  s.velocity << 1, 0, 0, 1, 0;
  auto r = affine_rhs(s);
  for (int i = 5; i < 10; ++i) CHECK(r[i] == 0.0);

  // Pure lambda motion: d2lambda/ds2 = -(1/1)(0 - 1) = +1.
  s.velocity << 0, 0, 0, 0, 1;
  r = affine_rhs(s);
  CHECK(r[9] == 1.0);

  // lambda = 2, v = (1,0,0,0,1): d2x1 = (2/2)*1*1 = 1, d2lambda = -(1/2)(1-1) = 0.
  s.point = ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(), 2.0);
  s.velocity << 1, 0, 0, 0, 1;
  r = affine_rhs(s);
  CHECK(r[5] == 1.0);
  CHECK(r[9] == 0.0);
}

TEST_CASE("lambda-parameterized right-hand side") {
  CHECK(lambda_rhs(Vec4(0, 0, 0, 0), 3.0) == Vec4(0, 0, 0, 0));
  // null x', lambda = 2: x'' = x'(1+0)/2
  CHECK(lambda_rhs(Vec4(1, 0, 0, 1), 2.0).isApprox(Vec4(0.5, 0, 0, 0.5)));
  // x' = (1,0,0,0): x'^2 = 1, so x'' = 1*(1+1)/1 = 2
  CHECK(lambda_rhs(Vec4(1, 0, 0, 0), 1.0).isApprox(Vec4(2, 0, 0, 0)));
  CHECK_THROWS_AS(lambda_rhs(Vec4(1, 0, 0, 0), 0.0), InvalidLambdaError);
}

TEST_CASE("classify_direction") {
  CHECK(classify_direction(Vec4(1, 0, 0, 1)) == DirectionClass::Null);
  CHECK(classify_direction(Vec4(0, 0, 0, 1)) == DirectionClass::Timelike);
  CHECK(classify_direction(Vec4(1, 0, 0, 0)) == DirectionClass::Spacelike);
}

TEST_CASE("constant-lambda null lines integrate exactly") {
  GeodesicState s;
  s.point = kOrigin;
  s.velocity << 1, 0, 0, 1, 0;
  const GeodesicPath path = integrate_affine(s, 10.0, 1e-3);
  CHECK(path.termination == TerminationReason::Completed);
  double prev = -1.0;
  for (const auto& smp : path.samples) {
    CHECK(std::abs(smp.state.point.lambda - 1.0) <= 1e-10);
    CHECK(std::abs(smp.state.point.x.c[0] - smp.param) <= 1e-10);
    CHECK(std::abs(smp.state.point.x.c[3] - smp.param) <= 1e-10);
    CHECK(smp.param > prev);  // parameter values strictly monotone
    prev = smp.param;
  }

  // The same lines are geodesics of Sigma_+ as well.
  GeodesicState plus = s;
  plus.point = ChartPoint(DomainTag::SigmaPlus, MinkowskiVector(), 1.0);
  const GeodesicPath plus_path = integrate_affine(plus, 5.0, 1e-3);
  CHECK(plus_path.termination == TerminationReason::Completed);
  for (const auto& smp : plus_path.samples) {
    CHECK(std::abs(smp.state.point.lambda - 1.0) <= 1e-10);
  }
}

TEST_CASE("lambda paths are strictly monotone in either direction") {
  const GeodesicPath up =
      integrate_lambda(MinkowskiVector(), Vec4(0.1, 0, 0, 0), 1.0, 2.0, 1e-2);
  for (std::size_t i = 1; i < up.size(); ++i) {
    CHECK(up.samples[i].param > up.samples[i - 1].param);
  }
  const GeodesicPath down =
      integrate_lambda(MinkowskiVector(), Vec4(0.1, 0, 0, 0), 2.0, 1.0, 1e-2);
  for (std::size_t i = 1; i < down.size(); ++i) {
    CHECK(down.samples[i].param < down.samples[i - 1].param);
  }
  CHECK(down.back().state.point.lambda == Approx(1.0));
}

TEST_CASE("zero velocity gives a constant path") {
  GeodesicState s;
  s.point = ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(1, 2, 3, 4), 1.5);
  const GeodesicPath path = integrate_affine(s, 1.0, 1e-2);
  for (const auto& smp : path.samples) {
    CHECK(smp.state.point.x.c == Vec4(1, 2, 3, 4));
    CHECK(smp.state.point.lambda == 1.5);
  }
}

TEST_CASE("integrate_affine rejects bad arguments") {
  GeodesicState s;
  s.point = kOrigin;
  CHECK_THROWS_AS(integrate_affine(s, -1.0, 1e-3), InvalidStepError);
  CHECK_THROWS_AS(integrate_affine(s, 1.0, 0.0), InvalidStepError);
  CHECK_THROWS_AS(integrate_affine(s, 1.0, 1e-3, 2.0), InvalidStepError);
}

TEST_CASE("lambda floor halts the integration early") {
  GeodesicState s;
  s.point = kOrigin;
  s.velocity << 0, 0, 0, 0, -0.5;  // heading toward the boundary
  const GeodesicPath path = integrate_affine(s, 20.0, 1e-3, 0.5);
  CHECK(path.termination == TerminationReason::LambdaFloorReached);
  for (const auto& smp : path.samples) CHECK(smp.state.point.lambda > 0.5);
}

TEST_CASE("closed-form families, frozen values") {
  // Spacelike a = sqrt(2), center 0: passes through (1, 1) and (-1, 1).
  const auto sc_plus = ClosedFormGeodesic::spacelike_semicircle(std::sqrt(2.0), 0.0, +1);
  const auto sc_minus = ClosedFormGeodesic::spacelike_semicircle(std::sqrt(2.0), 0.0, -1);
  CHECK(sc_plus.state_at(1.0).point.x.c[0] == Approx(1.0));
  CHECK(sc_minus.state_at(1.0).point.x.c[0] == Approx(-1.0));
  CHECK_THROWS_AS(sc_plus.state_at(1.5), ParamDomainError);  // lambda >= |a|

  // Null a = 1, offsets 0: x1(2) = 4.
  const auto par = ClosedFormGeodesic::null_parabola(1.0, MinkowskiVector());
  CHECK(par.state_at(2.0).point.x.c[0] == Approx(4.0));
  CHECK(par.state_at(2.0).point.x.c[3] == Approx(4.0));

  // Timelike a = 1, x4_0 = 0: at lambda = 1, x4 = +-sqrt(2).
  CHECK(ClosedFormGeodesic::timelike_hyperbola(1.0, 0.0, +1).state_at(1.0).point.x.c[3] ==
        Approx(std::sqrt(2.0)));
  CHECK(ClosedFormGeodesic::timelike_hyperbola(1.0, 0.0, -1).state_at(1.0).point.x.c[3] ==
        Approx(-std::sqrt(2.0)));
}

TEST_CASE("integrate_lambda reproduces the closed forms", "[property]") {
  // Rest curve: x' = 0 keeps x constant.
  const GeodesicPath rest =
      integrate_lambda(MinkowskiVector(1, 2, 3, 4), Vec4::Zero(), 1.0, 2.0, 1e-3);
  for (const auto& s : rest.samples) CHECK(s.state.point.x.c == Vec4(1, 2, 3, 4));

  // Null parabola, a = 1: x' = 2 a lambda, so x'(1) = (2,0,0,2) and
  // x1(2) - x1(1) = a (4 - 1) = 3.
  const GeodesicPath par =
      integrate_lambda(MinkowskiVector(1, 0, 0, 1), Vec4(2, 0, 0, 2), 1.0, 2.0, 1e-3);
  CHECK(par.back().state.point.x.c[0] - par.front().state.point.x.c[0] == Approx(3.0).margin(1e-8));

  // Semicircle a = sqrt(2), starting at (1, 1) with x' = -1.
  const GeodesicPath sc =
      integrate_lambda(MinkowskiVector(1, 0, 0, 0), Vec4(-1, 0, 0, 0), 1.0, 1.4, 1e-3);
  for (const auto& s : sc.samples) {
    const double x1 = s.state.point.x.c[0];
    const double l = s.state.point.lambda;
    CHECK(std::abs(x1 * x1 + l * l - 2.0) <= 1e-6);
  }

  // Downward direction works too.
  const auto hyper = ClosedFormGeodesic::timelike_hyperbola(1.0, 0.0, +1);
  const GeodesicState h0 = hyper.state_at(2.0);
  const GeodesicPath hp =
      integrate_lambda(h0.point.x, Vec4(h0.velocity.head<4>()), 2.0, 0.5, 1e-3);
  CHECK(hyper.invariant_residual(hp) <= 1e-6);

  CHECK_THROWS_AS(integrate_lambda(MinkowskiVector(), Vec4::Zero(), 1.0, 2.0, -1.0),
                  InvalidStepError);
  CHECK_THROWS_AS(integrate_lambda(MinkowskiVector(), Vec4::Zero(), 0.0, 2.0, 1e-3),
                  InvalidStepError);
}

TEST_CASE("affine integration stays on the closed-form semicircle") {
  const auto sc = ClosedFormGeodesic::spacelike_semicircle(std::sqrt(2.0), 0.0, +1);
  const GeodesicState s0 = sc.state_at(1.0);
  GeodesicState affine;
  affine.point = s0.point;
  affine.velocity.head<4>() = 0.3 * s0.velocity.head<4>();
  affine.velocity[4] = 0.3;
  const GeodesicPath path = integrate_affine(affine, 5.0, 1e-3);
  CHECK(path.termination == TerminationReason::Completed);
  CHECK(sc.invariant_residual(path) <= 1e-6);
}

TEST_CASE("metric speed") {
  GeodesicState s;
  s.point = kOrigin;
  s.velocity << 1, 0, 0, 1, 0;
  CHECK(metric_speed(s) == 0.0);
  s.point = ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(), 2.0);
  s.velocity << 1, 0, 0, 0, 0;
  CHECK(metric_speed(s) == Approx(0.25));
  s.point = kOrigin;
  s.velocity << 0, 0, 0, 1, 0;
  CHECK(metric_speed(s) == -1.0);
}

TEST_CASE("metric speed is conserved along affine geodesics", "[property]") {
  Rng rng(606);
  for (int t = 0; t < 8; ++t) {
    GeodesicState s;
    s.point = ChartPoint(DomainTag::SigmaMinus,
                         MinkowskiVector(rng.uniform(-2, 2), rng.uniform(-2, 2),
                                         rng.uniform(-2, 2), rng.uniform(-2, 2)),
                         rng.uniform(0.5, 2.0));
    for (int i = 0; i < 5; ++i) s.velocity[i] = rng.uniform(-0.1, 0.1);
    const GeodesicPath path = integrate_affine(s, 10.0, 1e-3);
    if (path.termination != TerminationReason::Completed) continue;
    const double c0 = metric_speed(path.front().state);
    for (const auto& smp : path.samples) {
      CHECK(std::abs(metric_speed(smp.state) - c0) <= 1e-8 * (1.0 + std::abs(c0)));
    }
  }
}

TEST_CASE("plane-section residual certifies planar geodesics") {
  const auto sc = ClosedFormGeodesic::spacelike_semicircle(std::sqrt(2.0), 0.0, +1);
  CHECK(plane_section_residual(sc.sample(0.9, 1.4, 50)) <= 1e-10);

  const auto par = ClosedFormGeodesic::null_parabola(0.7, MinkowskiVector(0.1, -0.2, 0.3, 0.4));
  CHECK(plane_section_residual(par.sample(0.5, 2.5, 50)) <= 1e-10);

  const auto hyp = ClosedFormGeodesic::timelike_hyperbola(1.3, 0.4, -1);
  CHECK(plane_section_residual(hyp.sample(0.5, 3.0, 50)) <= 1e-10);

  const GeodesicState s0 = sc.state_at(1.0);
  const GeodesicPath integrated =
      integrate_lambda(s0.point.x, Vec4(s0.velocity.head<4>()), 1.0, 1.4, 1e-3);
  CHECK(plane_section_residual(integrated) <= 1e-7);

  // The plane-section property holds on Sigma_+ as well.
  GeodesicState plus;
  plus.point = ChartPoint(DomainTag::SigmaPlus, MinkowskiVector(0.5, -0.2, 0.1, 0.3), 1.2);
  plus.velocity << 0.1, -0.05, 0.02, 0.08, 0.1;
  const GeodesicPath plus_path = integrate_affine(plus, 2.0, 1e-3);
  REQUIRE(plus_path.termination == TerminationReason::Completed);
  CHECK(plane_section_residual(plus_path) <= 1e-7);

  // Sensitivity: one displaced sample must be caught.
  GeodesicPath perturbed = sc.sample(0.9, 1.4, 50);
  perturbed.samples[25].state.point.x.c[0] += 0.1;
  CHECK(plane_section_residual(perturbed) > 1e-3);

  GeodesicPath tiny;
  tiny.samples.resize(2, {0.0, s0});
  CHECK_THROWS_AS(plane_section_residual(tiny), TooFewSamplesError);
}

TEST_CASE("reduced-equation adjudication: closed forms satisfy the full equation only") {
  // The hyperbola and the semicircle substituted into x'' = x'(1 + x'^2)/lambda
  // give zero residual; substituted into the factor-dropped displays
  // x4'' = (1 - x4'^2)/lambda and x1'' = (1 + x1'^2)/lambda they do not.
  const double a = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double l = 0.5 + 1.0 * i / 99.0;
    // Hyperbola branch x4 = sqrt(a^2 + l^2): analytic derivatives.
    const double r = std::sqrt(a * a + l * l);
    const double xp = l / r;
    const double xpp = a * a / (r * r * r);
    const double general = xp * (1.0 + (-xp * xp)) / l;  // x'^2 = -xp^2 (timelike)
    const double specialized = (1.0 - xp * xp) / l;
    CHECK(std::abs(xpp - general) <= 1e-10);
    CHECK(std::abs(xpp - specialized) > 1e-2);
  }
  const double a2 = std::sqrt(2.0);
  for (int i = 0; i < 100; ++i) {
    const double l = 0.5 + 0.8 * i / 99.0;
    // Semicircle branch x1 = sqrt(a^2 - l^2).
    const double r = std::sqrt(a2 * a2 - l * l);
    const double xp = -l / r;
    const double xpp = -a2 * a2 / (r * r * r);
    const double general = xp * (1.0 + xp * xp) / l;
    const double specialized = (1.0 + xp * xp) / l;
    CHECK(std::abs(xpp - general) <= 1e-10);
    CHECK(std::abs(xpp - specialized) > 1e-2);
  }
}

TEST_CASE("constant-lambda null family rejects non-null directions") {
  CHECK_THROWS_AS(
      ClosedFormGeodesic::constant_lambda_null(Vec4(1, 0, 0, 0), MinkowskiVector(), 1.0),
      ParamDomainError);
  const auto line =
      ClosedFormGeodesic::constant_lambda_null(Vec4(1, 0, 0, 1), MinkowskiVector(), 2.0);
  CHECK(line.state_at(3.0).point.x.c[0] == 3.0);
  CHECK(line.state_at(3.0).point.lambda == 2.0);
  CHECK(line.invariant_residual(line.sample(0.0, 5.0, 20)) == 0.0);
}
