#include <catch2/catch.hpp>

#include "confdom/group_action.hpp"
#include "confdom/rng.hpp"

using namespace confdom;

namespace {

ConformalMatrix random_element(Rng& rng, int max_factors = 5) {
  ConformalMatrix m;
  const int n = rng.uniform_int(1, max_factors);
  for (int k = 0; k < n; ++k) {
    switch (rng.uniform_int(0, 4)) {
      case 0: {
        const int i = rng.uniform_int(1, 3);
        m = m * generator(Rotation{i, rng.uniform_int(i + 1, 4), rng.uniform(-1, 1)});
        break;
      }
      case 1: m = m * generator(Dilation{rng.uniform(-1, 1)}); break;
      case 2:
        m = m * generator(Translation{MinkowskiVector(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                                      rng.uniform(-1, 1), rng.uniform(-1, 1))});
        break;
      case 3:
        m = m * generator(SpecialConformal{MinkowskiVector(
                    rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4),
                    rng.uniform(-0.4, 0.4))});
        break;
      default: m = m * generator(Inversion{}); break;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("is_conformal_matrix") {
  CHECK(is_conformal_matrix(Mat6(Mat6::Identity())));
  Mat6 bad = Mat6::Identity();
  bad(3, 3) = 2.0;  // breaks the -X4^2 term
  CHECK_FALSE(is_conformal_matrix(bad));
  const ConformalMatrix prod = generator(Dilation{0.4}) * generator(Rotation{1, 3, 0.7});
  CHECK(is_conformal_matrix(prod));
}

TEST_CASE("every generator satisfies the defining relation") {
  CHECK(is_conformal_matrix(generator(Rotation{1, 2, 0.7})));
  CHECK(is_conformal_matrix(generator(Rotation{2, 4, -0.9})));  // boost
  CHECK(is_conformal_matrix(generator(Dilation{1.2})));
  CHECK(is_conformal_matrix(generator(Translation{MinkowskiVector(1, -2, 0.5, 3)})));
  CHECK(is_conformal_matrix(generator(SpecialConformal{MinkowskiVector(0.3, 0.1, -0.7, 0.2)})));
  CHECK(is_conformal_matrix(generator(Inversion{})));
  CHECK(std::abs(std::abs(generator(Inversion{}).m.determinant()) - 1.0) < 1e-12);
  CHECK(generator(Inversion{}).m.determinant() == Approx(-1.0));  // orientation-reversing
  CHECK_THROWS_AS(generator(Rotation{2, 2, 0.1}), InvalidSpecError);
  CHECK_THROWS_AS(generator(Rotation{0, 3, 0.1}), InvalidSpecError);
}

TEST_CASE("translation matrix equals the exponential of its nilpotent generator") {
  // Oracle: the so(4,2) translation generator N_a is 3-step nilpotent, so
  // exp(N_a) = I + N_a + N_a^2/2 exactly.
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const MinkowskiVector a(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                            rng.uniform(-2, 2));
    Mat6 n = Mat6::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      n(mu, 4) = a.c[mu];
      n(mu, 5) = -a.c[mu];
      const double eta_a = (mu == 3) ? -a.c[mu] : a.c[mu];
      n(4, mu) = -eta_a;
      n(5, mu) = -eta_a;
    }
    CHECK((n * n * n).cwiseAbs().maxCoeff() == 0.0);
    const Mat6 series = Mat6::Identity() + n + 0.5 * (n * n);
    CHECK((generator(Translation{a}).m - series).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("induced Minkowski actions of the generators") {
  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const MinkowskiVector x(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                            rng.uniform(-3, 3));

    // Translation: x -> x + a with unit conformal scale.
    const MinkowskiVector a(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                            rng.uniform(-3, 3));
    const auto tr = act_minkowski(generator(Translation{a}), x);
    CHECK(std::get<MinkowskiVector>(tr.image).c.isApprox(Vec4(x.c + a.c), 1e-12));
    CHECK(*tr.conformal_scale == Approx(1.0));

    // Dilation: x -> e^theta x with scale e^theta. Oracle: the 2x2 hyperbolic
    // rotation moves the section by (X5 - X6) -> e^{-theta} (X5 - X6).
    const double theta = rng.uniform(-1, 1);
    const auto di = act_minkowski(generator(Dilation{theta}), x);
    CHECK(std::get<MinkowskiVector>(di.image).c.isApprox(Vec4(std::exp(theta) * x.c), 1e-12));
    CHECK(*di.conformal_scale == Approx(std::exp(theta)));

    // Special conformal: x -> (x - b q(x)) / (1 - 2 eta(x,b) + q(b) q(x)).
    const MinkowskiVector b(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                            rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
    const double den =
        1.0 - 2.0 * minkowski_inner(x, b) + minkowski_q(b) * minkowski_q(x);
    if (std::abs(den) > 0.1) {
      const auto sc = act_minkowski(generator(SpecialConformal{b}), x);
      CHECK(std::get<MinkowskiVector>(sc.image)
                .c.isApprox(Vec4((x.c - minkowski_q(x) * b.c) / den), 1e-9));
    }
  }

  // Spatial rotation by pi/2 in the (1,2) plane.
  const auto rot =
      act_minkowski(generator(Rotation{1, 2, M_PI / 2}), MinkowskiVector(1, 0, 0, 0));
  CHECK(std::get<MinkowskiVector>(rot.image).c.isApprox(Vec4(0, 1, 0, 0), 1e-12));

  // Inversion: x -> x / q(x); a nonzero null point goes to infinity.
  const auto inv = act_minkowski(generator(Inversion{}), MinkowskiVector(2, 0, 0, 0));
  CHECK(std::get<MinkowskiVector>(inv.image).c.isApprox(Vec4(0.5, 0, 0, 0), 1e-12));
  const auto null_img = act_minkowski(generator(Inversion{}), MinkowskiVector(1, 0, 0, 1));
  CHECK(is_at_infinity(null_img.image));
}

TEST_CASE("act_ambient preserves Q", "[property]") {
  Rng rng(23);
  CHECK(act_ambient(ConformalMatrix{}, AmbientVector(1, 2, 3, 4, 5, 6))
            .c.isApprox(AmbientVector(1, 2, 3, 4, 5, 6).c));
  const AmbientVector down(0, 0, 0, 0, 0, -1);
  const AmbientVector moved = act_ambient(generator(Dilation{0.4}), down);
  CHECK(moved.c.isApprox(AmbientVector(0, 0, 0, 0, -std::sinh(0.4), -std::cosh(0.4)).c));
  for (int t = 0; t < 2000; ++t) {
    const ConformalMatrix m = random_element(rng);
    AmbientVector x;
    for (int i = 0; i < 6; ++i) x.c[i] = rng.uniform(-5, 5);
    CHECK(std::abs(quadratic_form(act_ambient(m, x)) - quadratic_form(x)) <=
          1e-9 * (1.0 + x.c.squaredNorm()));
  }
}

TEST_CASE("group closure and inverse", "[property]") {
  Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    const ConformalMatrix a = random_element(rng);
    const ConformalMatrix b = random_element(rng);
    CHECK(is_conformal_matrix(a * b));
    CHECK(is_conformal_matrix(inverse(a)));
    CHECK(((a * inverse(a)).m - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("act_chart") {
  const ChartPoint origin(DomainTag::SigmaMinus, MinkowskiVector(), 1.0, +1);
  const ChartPoint same = act_chart(ConformalMatrix{}, origin);
  CHECK(same.x.c.isZero());
  CHECK(same.lambda == Approx(1.0));

  const ChartPoint scaled = act_chart(generator(Dilation{0.7}), origin);
  CHECK(scaled.x.c.isZero(1e-12));
  CHECK(scaled.lambda == Approx(std::exp(0.7)));

  const ChartPoint p(DomainTag::SigmaMinus, MinkowskiVector(1, 0, 0, 0.5), 2.0, +1);
  const ChartPoint rotated = act_chart(generator(Rotation{1, 2, M_PI / 2}), p);
  CHECK(rotated.lambda == Approx(2.0));
  CHECK(rotated.x.c.isApprox(Vec4(0, 1, 0, 0.5), 1e-12));

  // A dilation strong enough to push the section across X5 = X6 cannot be
  // represented in the chart image of tau... the map is defined on all of
  // Sigma_-, so only genuine X5 = X6 images throw.
  const AmbientVector inf_dir(0, 0, 0, 1, 1, 1);  // Q = -1, X5 = X6
  CHECK_THROWS_AS(ambient_to_chart(inf_dir), AtDomainInfinityError);
}

TEST_CASE("pullback residual certifies isometry", "[property]") {
  const ChartPoint origin(DomainTag::SigmaMinus, MinkowskiVector(), 1.0, +1);
  // The identity's chart action is linear, so a coarse step has no
  // truncation error and the central-difference noise (~eps/h) vanishes.
  CHECK(pullback_metric_residual(ConformalMatrix{}, origin, 1e-2) <= 1e-12);
  CHECK(pullback_metric_residual(generator(Dilation{0.3}), origin) <= 1e-6);

  Rng rng(25);
  int runs = 0;
  while (runs < 25) {
    const ConformalMatrix m = random_element(rng);
    const ChartPoint p(DomainTag::SigmaMinus,
                       MinkowskiVector(rng.uniform(-2, 2), rng.uniform(-2, 2),
                                       rng.uniform(-2, 2), rng.uniform(-2, 2)),
                       rng.uniform(0.5, 2.0), +1);
    try {
      const ChartPoint q = act_chart(m, p);
      if (q.lambda < 1e-2 || q.lambda > 1e2 || q.x.c.cwiseAbs().maxCoeff() > 1e2) continue;
      CHECK(pullback_metric_residual(m, p) <= 1e-6);
    } catch (const AtDomainInfinityError&) {
      continue;
    }
    ++runs;
  }
}

TEST_CASE("induced maps are conformal on Minkowski space", "[property]") {
  Rng rng(26);
  int runs = 0;
  while (runs < 25) {
    const ConformalMatrix m = random_element(rng);
    const MinkowskiVector x(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                            rng.uniform(-2, 2));
    const auto base = act_minkowski(m, x);
    if (!base.conformal_scale || std::abs(*base.conformal_scale) > 1e3) continue;
    Eigen::Matrix4d jac;
    bool ok = true;
    for (int a = 0; a < 4 && ok; ++a) {
      MinkowskiVector xp = x, xm = x;
      const double step = 1e-6 * std::max(1.0, std::abs(x.c[a]));
      xp.c[a] += step;
      xm.c[a] -= step;
      const auto ip = act_minkowski(m, xp);
      const auto im = act_minkowski(m, xm);
      if (!ip.conformal_scale || !im.conformal_scale) { ok = false; break; }
      jac.col(a) = (std::get<MinkowskiVector>(ip.image).c -
                    std::get<MinkowskiVector>(im.image).c) /
                   (2.0 * step);
    }
    if (!ok) continue;
    const Eigen::Matrix4d pulled = jac.transpose() * minkowski_metric() * jac;
    const double c = pulled(0, 0);
    REQUIRE(c > 0.0);
    CHECK((pulled - c * minkowski_metric()).cwiseAbs().maxCoeff() <= 1e-5 * c);
    ++runs;
  }
}
