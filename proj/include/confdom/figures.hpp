#pragma once

// Families of Sigma_- geodesics through the chart point (0, 1), rendered as
// self-contained SVG:
//   figure 1: parabolas x = a (lambda^2 - 1) in the (x^1 = x^4, lambda) plane
//   figure 2: semicircles (x^1 - x0)^2 + lambda^2 = x0^2 + 1
//   figure 3: hyperbolas (x^4 - x0)^2 - lambda^2 = x0^2 - 1 for |x0| > 1,
//             degenerating to the straight lines x^4 = x0 -+ lambda at |x0| = 1
// Curves are sampled from the closed-form families, never from integration,
// and every curve is checked to pass through (0, 1) before rendering.

#include <cmath>
#include <cstdio>
#include <future>
#include <string>
#include <vector>

#include "confdom/geodesics.hpp"

namespace confdom {

struct FigureSpec {
  int figure = 1;                      // 1..3
  std::vector<double> family_params;   // a values (fig 1) or x0 values (figs 2, 3)
  double x_min = -8.0, x_max = 8.0;    // plane-coordinate plot range
  double lambda_min = 0.0, lambda_max = 3.0;
  int samples_per_curve = 257;
  int parallel = 1;

  static FigureSpec defaults(int n);
  void validate() const;
};

inline FigureSpec FigureSpec::defaults(int n) {
  FigureSpec spec;
  spec.figure = n;
  switch (n) {
    case 1:
      for (int i = 0; i < 11; ++i) spec.family_params.push_back(-2.5 + 0.5 * i);
      spec.x_min = -8.0;
      spec.x_max = 8.0;
      spec.lambda_max = 3.0;
      break;
    case 2:
      for (int i = 0; i < 11; ++i) spec.family_params.push_back(-5.0 + 1.0 * i);
      spec.x_min = -11.0;
      spec.x_max = 11.0;
      spec.lambda_max = 5.5;
      break;
    case 3:
      spec.family_params = {-4.0, -3.25, -2.5, -1.75, -1.0, 1.0, 1.75, 2.5, 3.25, 4.0};
      spec.x_min = -8.0;
      spec.x_max = 8.0;
      spec.lambda_max = 4.0;
      break;
    default:
      throw InvalidSpecError("figure number must be 1, 2 or 3");
  }
  return spec;
}

inline void FigureSpec::validate() const {
  if (figure < 1 || figure > 3) throw InvalidSpecError("figure number must be 1, 2 or 3");
  if (family_params.empty()) throw InvalidSpecError("figure: empty family parameter list");
  if (!(x_min < x_max) || !(lambda_min < lambda_max) || !std::isfinite(x_min) ||
      !std::isfinite(x_max) || !std::isfinite(lambda_max)) {
    throw InvalidSpecError("figure: plot ranges must be finite and nondegenerate");
  }
  if (samples_per_curve < 2) throw InvalidSpecError("figure: need at least 2 samples per curve");
  if (figure == 3) {
    for (const double x0 : family_params) {
      if (std::abs(x0) < 1.0) {
        throw ParamDomainError("figure 3: |x0| >= 1 required for a real curve through (0,1)");
      }
    }
  }
}

/// One plotted family member: the sweep parameter and its (plane coordinate,
/// lambda) samples, plus the worst closed-form invariant residual observed.
struct FigureCurve {
  double param = 0.0;
  std::vector<std::pair<double, double>> points;
  double worst_invariant_residual = 0.0;
};

namespace fig_detail {

/// The closed-form member of figure `n` with sweep parameter v, arranged to
/// pass through (0, 1).
inline ClosedFormGeodesic family_member(int n, double v) {
  switch (n) {
    case 1:
      return ClosedFormGeodesic::null_parabola(v, MinkowskiVector(-v, 0, 0, -v));
    case 2:
      return ClosedFormGeodesic::spacelike_semicircle(std::sqrt(v * v + 1.0), v, +1);
    case 3: {
      const double a = std::sqrt(v * v - 1.0);
      const int branch = v > 0 ? -1 : +1;
      return ClosedFormGeodesic::timelike_hyperbola(a, v, branch);
    }
    default:
      throw InvalidSpecError("figure number must be 1, 2 or 3");
  }
}

/// Plane coordinate of a state: x^1 for figures 1-2, x^4 for figure 3.
inline double plane_coordinate(int n, const GeodesicState& s) {
  return n == 3 ? s.point.x.c[3] : s.point.x.c[0];
}

inline FigureCurve build_curve(const FigureSpec& spec, double v) {
  const ClosedFormGeodesic g = family_member(spec.figure, v);
  FigureCurve curve;
  curve.param = v;

  // Residual of the family invariant at the common point (0, 1).
  GeodesicState at_base;
  at_base.point = ChartPoint(DomainTag::SigmaMinus, MinkowskiVector(0, 0, 0, 0), 1.0, +1);
  if (g.invariant_residual(at_base) > 1e-9) {
    throw InvalidSpecError("figure: family member misses the base point (0,1)");
  }

  const double l_lo = std::max(spec.lambda_min, 0.01);
  const int n = spec.samples_per_curve;
  auto consider = [&](double lambda, int branch_for_fig2 = 0) {
    GeodesicState s;
    if (spec.figure == 2) {
      ClosedFormGeodesic member = ClosedFormGeodesic::spacelike_semicircle(
          std::sqrt(v * v + 1.0), v, branch_for_fig2);
      s = member.state_at(lambda);
      curve.worst_invariant_residual =
          std::max(curve.worst_invariant_residual, member.invariant_residual(s));
    } else {
      s = g.state_at(lambda);
      curve.worst_invariant_residual =
          std::max(curve.worst_invariant_residual, g.invariant_residual(s));
    }
    const double w = plane_coordinate(spec.figure, s);
    if (w < spec.x_min || w > spec.x_max) return;
    if (lambda > spec.lambda_max) return;
    curve.points.emplace_back(w, lambda);
  };

  if (spec.figure == 2) {
    // Walk the full arc by the angle phi in (0, pi): lambda = a sin(phi),
    // branch = sign(cos(phi)). Still sampled from the closed form.
    const double a = std::sqrt(v * v + 1.0);
    const double phi_lo = std::asin(std::min(1.0, l_lo / a));
    for (int i = 0; i < n; ++i) {
      const double phi =
          (M_PI - phi_lo) + (2.0 * phi_lo - M_PI) * static_cast<double>(i) / (n - 1);
      const double lambda = a * std::sin(phi);
      if (!(lambda > 0.0) || lambda >= a) continue;
      consider(lambda, std::cos(phi) >= 0 ? +1 : -1);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double lambda =
          l_lo + (spec.lambda_max - l_lo) * static_cast<double>(i) / (n - 1);
      consider(lambda);
    }
  }
  return curve;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string fmt(double v, const char* f = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

}  // namespace fig_detail

/// Build all family members; curves are ordered as in spec.family_params.
inline std::vector<FigureCurve> figure_curves(const FigureSpec& spec) {
  spec.validate();
  std::vector<FigureCurve> curves(spec.family_params.size());
  auto build = [&](std::size_t i) { curves[i] = fig_detail::build_curve(spec, spec.family_params[i]); };
  if (spec.parallel <= 1) {
    for (std::size_t i = 0; i < curves.size(); ++i) build(i);
  } else {
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      pending.push_back(std::async(std::launch::async, build, i));
      if (pending.size() >= static_cast<std::size_t>(spec.parallel)) {
        for (auto& f : pending) f.get();
        pending.clear();
      }
    }
    for (auto& f : pending) f.get();
  }
  return curves;
}

/// Self-contained SVG: axes with tick labels, one polyline per family member,
/// and the generating command line recorded in a metadata element.
inline std::string render_svg(const FigureSpec& spec, const std::vector<FigureCurve>& curves,
                              const std::string& command_line) {
  const double width = 720.0, height = 540.0;
  const double ml = 56.0, mr = 16.0, mt = 16.0, mb = 44.0;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double l_base = 0.0;  // lambda axis starts at the chart boundary
  auto px = [&](double x) { return ml + (x - spec.x_min) / (spec.x_max - spec.x_min) * pw; };
  auto py = [&](double l) {
    return mt + (spec.lambda_max - l) / (spec.lambda_max - l_base) * ph;
  };

  static const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#17becf"};
  const char* x_label = spec.figure == 3 ? "x4" : (spec.figure == 1 ? "x1 = x4" : "x1");

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<!-- geodesic family plot; generating command recorded in metadata -->\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"540\" "
         "viewBox=\"0 0 720 540\">\n";
  svg += "  <metadata id=\"command-line\">" + fig_detail::xml_escape(command_line) +
         "</metadata>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"720\" height=\"540\" fill=\"#ffffff\"/>\n";

  // Axes.
  svg += "  <g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "    <line x1=\"" + fig_detail::fmt(ml) + "\" y1=\"" + fig_detail::fmt(py(l_base)) +
         "\" x2=\"" + fig_detail::fmt(ml + pw) + "\" y2=\"" + fig_detail::fmt(py(l_base)) +
         "\"/>\n";
  svg += "    <line x1=\"" + fig_detail::fmt(px(0.0)) + "\" y1=\"" + fig_detail::fmt(mt) +
         "\" x2=\"" + fig_detail::fmt(px(0.0)) + "\" y2=\"" + fig_detail::fmt(mt + ph) +
         "\"/>\n";
  svg += "  </g>\n";

  // Ticks and labels.
  svg += "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  const double x_step = std::max(1.0, std::round((spec.x_max - spec.x_min) / 14.0));
  for (double x = std::ceil(spec.x_min); x <= spec.x_max + 1e-9; x += x_step) {
    svg += "    <line stroke=\"#333333\" x1=\"" + fig_detail::fmt(px(x)) + "\" y1=\"" +
           fig_detail::fmt(py(l_base)) + "\" x2=\"" + fig_detail::fmt(px(x)) + "\" y2=\"" +
           fig_detail::fmt(py(l_base) + 4) + "\"/>\n";
    svg += "    <text text-anchor=\"middle\" x=\"" + fig_detail::fmt(px(x)) + "\" y=\"" +
           fig_detail::fmt(py(l_base) + 16) + "\">" + fig_detail::fmt(x, "%g") + "</text>\n";
  }
  for (double l = l_base; l <= spec.lambda_max + 1e-9; l += 1.0) {
    svg += "    <line stroke=\"#333333\" x1=\"" + fig_detail::fmt(ml - 4) + "\" y1=\"" +
           fig_detail::fmt(py(l)) + "\" x2=\"" + fig_detail::fmt(ml) + "\" y2=\"" +
           fig_detail::fmt(py(l)) + "\"/>\n";
    svg += "    <text text-anchor=\"end\" x=\"" + fig_detail::fmt(ml - 7) + "\" y=\"" +
           fig_detail::fmt(py(l) + 4) + "\">" + fig_detail::fmt(l, "%g") + "</text>\n";
  }
  svg += "    <text text-anchor=\"middle\" x=\"" + fig_detail::fmt(ml + pw / 2) + "\" y=\"" +
         fig_detail::fmt(height - 8) + "\">" + x_label + "</text>\n";
  svg += "    <text text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fig_detail::fmt(mt + ph / 2) + ")\" x=\"14\" y=\"" + fig_detail::fmt(mt + ph / 2) +
         "\">lambda</text>\n";
  svg += "  </g>\n";

  // The family, one polyline per member.
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].points.empty()) continue;
    svg += "  <polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"";
    svg += kPalette[i % 6];
    svg += "\" points=\"";
    for (const auto& [w, l] : curves[i].points) {
      svg += fig_detail::fmt(px(w)) + "," + fig_detail::fmt(py(l)) + " ";
    }
    if (svg.back() == ' ') svg.pop_back();
    svg += "\"/>\n";
  }

  // The common point (0, 1).
  svg += "  <circle cx=\"" + fig_detail::fmt(px(0.0)) + "\" cy=\"" + fig_detail::fmt(py(1.0)) +
         "\" r=\"3\" fill=\"#000000\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace confdom
