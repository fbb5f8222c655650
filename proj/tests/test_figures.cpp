#include <catch2/catch.hpp>

#include "confdom/figures.hpp"

using namespace confdom;

TEST_CASE("figure defaults are valid and pass through (0,1)") {
  for (int n : {1, 2, 3}) {
    const FigureSpec spec = FigureSpec::defaults(n);
    const auto curves = figure_curves(spec);
    CHECK(curves.size() == spec.family_params.size());
    for (const auto& c : curves) {
      CHECK(c.worst_invariant_residual <= 1e-9);
      CHECK_FALSE(c.points.empty());
    }
  }
  CHECK_THROWS_AS(FigureSpec::defaults(4), InvalidSpecError);
}

TEST_CASE("figure member families are the right closed forms") {
  // Figure 1 members x = a (lambda^2 - 1) hit x = 0 at lambda = 1 and x = -a
  // near the boundary.
  FigureSpec spec = FigureSpec::defaults(1);
  spec.family_params = {2.0};
  const auto curves = figure_curves(spec);
  REQUIRE(curves.size() == 1);
  for (const auto& [w, l] : curves[0].points) {
    CHECK(w == Approx(2.0 * (l * l - 1.0)).margin(1e-12));
  }

  // Figure 3 degenerate members are the lines x4 = x0 -+ lambda.
  FigureSpec f3 = FigureSpec::defaults(3);
  f3.family_params = {1.0};
  const auto lines = figure_curves(f3);
  for (const auto& [w, l] : lines[0].points) CHECK(w == Approx(1.0 - l).margin(1e-12));

  // |x0| < 1 cannot produce a real member through (0,1).
  f3.family_params = {0.5};
  CHECK_THROWS_AS(figure_curves(f3), ParamDomainError);
}

TEST_CASE("figure validation") {
  FigureSpec spec = FigureSpec::defaults(2);
  spec.x_min = spec.x_max;
  CHECK_THROWS_AS(spec.validate(), InvalidSpecError);
  spec = FigureSpec::defaults(2);
  spec.family_params.clear();
  CHECK_THROWS_AS(spec.validate(), InvalidSpecError);
  spec = FigureSpec::defaults(2);
  spec.samples_per_curve = 1;
  CHECK_THROWS_AS(spec.validate(), InvalidSpecError);
}

TEST_CASE("svg rendering is deterministic and self-contained") {
  const FigureSpec spec = FigureSpec::defaults(2);
  const auto curves = figure_curves(spec);
  const std::string a = render_svg(spec, curves, "confdom figure --n 2 --out fig2.svg");
  const std::string b = render_svg(spec, curves, "confdom figure --n 2 --out fig2.svg");
  CHECK(a == b);
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(a.find("viewBox") != std::string::npos);
  CHECK(a.find("confdom figure --n 2") != std::string::npos);
  // One polyline per family member.
  std::size_t count = 0;
  for (std::size_t pos = a.find("<polyline"); pos != std::string::npos;
       pos = a.find("<polyline", pos + 1)) {
    ++count;
  }
  CHECK(count == spec.family_params.size());
  // Parallel sampling produces the identical curve set.
  FigureSpec par = spec;
  par.parallel = 4;
  const auto curves_par = figure_curves(par);
  CHECK(render_svg(par, curves_par, "confdom figure --n 2 --out fig2.svg") == a);
}
