#pragma once

// Seeded property suite behind the `verify` command. Each property checks one
// module invariant and reports its worst observed residual against the
// threshold it must stay under. Properties draw from independent substreams
// (seed xor name hash), so results do not depend on execution order and the
// suite can run its members concurrently.

#include <algorithm>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "confdom/ambient.hpp"
#include "confdom/charts.hpp"
#include "confdom/compactification.hpp"
#include "confdom/geodesics.hpp"
#include "confdom/group_action.hpp"
#include "confdom/hyperboloids.hpp"
#include "confdom/rng.hpp"

namespace confdom {

struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst residual observed (or violation count for set properties)
  double tol = 0.0;    // threshold `worst` was held against
  long trials = 0;
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  long trials = 0;   // 0 = per-property defaults
  int parallel = 1;  // number of concurrent property evaluations
  bool mutate = false;  // inject a sign flip to demonstrate suite sensitivity
};

namespace verify_detail {

inline MinkowskiVector random_minkowski(Rng& rng, double bound) {
  return MinkowskiVector(rng.uniform(-bound, bound), rng.uniform(-bound, bound),
                         rng.uniform(-bound, bound), rng.uniform(-bound, bound));
}

inline AmbientVector random_ambient(Rng& rng, double bound) {
  AmbientVector X;
  for (int i = 0; i < 6; ++i) X.c[i] = rng.uniform(-bound, bound);
  return X;
}

inline ChartPoint random_chart_point(Rng& rng, DomainTag domain, double x_bound, double l_lo,
                                     double l_hi) {
  return ChartPoint(domain, random_minkowski(rng, x_bound), rng.log_uniform(l_lo, l_hi),
                    rng.uniform() < 0.5 ? +1 : -1);
}

/// Product of up to `max_factors` bounded generators.
inline ConformalMatrix random_conformal(Rng& rng, int max_factors = 5) {
  ConformalMatrix m;
  const int n = rng.uniform_int(1, max_factors);
  for (int k = 0; k < n; ++k) {
    switch (rng.uniform_int(0, 4)) {
      case 0: {
        int i = rng.uniform_int(1, 3);
        int j = rng.uniform_int(i + 1, 4);
        m = m * generator(Rotation{i, j, rng.uniform(-1.0, 1.0)});
        break;
      }
      case 1:
        m = m * generator(Dilation{rng.uniform(-1.0, 1.0)});
        break;
      case 2:
        m = m * generator(Translation{random_minkowski(rng, 1.0)});
        break;
      case 3:
        m = m * generator(SpecialConformal{random_minkowski(rng, 0.4)});
        break;
      default:
        m = m * generator(Inversion{});
        break;
    }
  }
  return m;
}

/// Affine lift of lambda-parameterized initial data with dlambda/ds = c.
inline GeodesicState affine_lift(const GeodesicState& lambda_state, double c) {
  GeodesicState st;
  st.point = lambda_state.point;
  st.velocity.head<4>() = c * lambda_state.velocity.head<4>();
  st.velocity[4] = c;
  return st;
}

/// The three closed-form classes used as integrator oracles.
inline std::vector<ClosedFormGeodesic> oracle_classes() {
  return {
      ClosedFormGeodesic::null_parabola(1.0, MinkowskiVector(0, 0, 0, 0)),
      ClosedFormGeodesic::timelike_hyperbola(1.0, 0.0, +1),
      ClosedFormGeodesic::spacelike_semicircle(std::sqrt(2.0), 0.0, +1),
  };
}

inline std::pair<double, double> oracle_lambda_range(const ClosedFormGeodesic& g) {
  switch (g.kind()) {
    case ClosedFormGeodesic::Kind::SpacelikeSemicircle:
      return {1.0, 1.4};
    case ClosedFormGeodesic::Kind::TimelikeHyperbola:
      return {1.0, 3.0};
    default:
      return {1.0, 2.0};
  }
}

struct Property {
  std::string name;
  long default_trials;
  std::function<PropertyResult(Rng&, long, bool)> run;
};

inline PropertyResult make_result(const std::string& name, double worst, double tol, long trials,
                                  std::string note = {}) {
  PropertyResult r;
  r.name = name;
  r.worst = worst;
  r.tol = tol;
  r.trials = trials;
  r.pass = worst <= tol;
  r.note = std::move(note);
  return r;
}

inline const std::vector<Property>& property_table();

}  // namespace verify_detail

/// Run the whole suite. `options.trials` overrides each property's default
/// sample count when positive.
inline std::vector<PropertyResult> run_property_suite(const VerifyOptions& options) {
  const auto& table = verify_detail::property_table();
  std::vector<PropertyResult> results(table.size());
  auto run_one = [&](std::size_t i) {
    const auto& prop = table[i];
    const long n = options.trials > 0 ? options.trials : prop.default_trials;
    Rng rng(options.seed ^ hash_name(prop.name));
    results[i] = prop.run(rng, n, options.mutate);
    results[i].name = prop.name;
  };
  if (options.parallel <= 1) {
    for (std::size_t i = 0; i < table.size(); ++i) run_one(i);
  } else {
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < table.size(); ++i) {
      pending.push_back(std::async(std::launch::async, run_one, i));
      if (pending.size() >= static_cast<std::size_t>(options.parallel)) {
        for (auto& f : pending) f.get();
        pending.clear();
      }
    }
    for (auto& f : pending) f.get();
  }
  return results;
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.pass; });
}

// ---------------------------------------------------------------------------
// The properties
// ---------------------------------------------------------------------------

namespace verify_detail {

inline PropertyResult p_inner_bilinear(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const AmbientVector X = random_ambient(rng, 10.0);
    const AmbientVector Y = random_ambient(rng, 10.0);
    const AmbientVector Z = random_ambient(rng, 10.0);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const double lhs = inner(a * X + b * Y, Z);
    const double rhs = a * inner(X, Z) + b * inner(Y, Z);
    const double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
    worst = std::max(worst, std::abs(inner(X, Y) - inner(Y, X)) /
                                (1.0 + std::abs(inner(X, Y))));
  }
  return make_result("", worst, 1e-12, n, "bilinearity + symmetry, relative");
}

inline PropertyResult p_normalize_unit_q(Rng& rng, long n, bool) {
  double worst = 0.0;
  long used = 0;
  for (long t = 0; t < n; ++t) {
    const AmbientVector X = random_ambient(rng, 10.0);
    // Rescaling conditions like eps |X|^2 / |Q|, so stay genuinely off the
    // cone; near-cone inputs cannot meet an absolute 1e-12 in doubles.
    if (std::abs(quadratic_form(X)) < 1e-3 * (1.0 + X.c.squaredNorm())) continue;
    ++used;
    worst = std::max(worst, std::abs(std::abs(quadratic_form(normalize_to_sigma(X))) - 1.0));
  }
  return make_result("", worst, 1e-12, used, "| |Q(norm X)| - 1 |, off-cone draws");
}

inline PropertyResult p_ray_equivalence_relation(Rng& rng, long n, bool) {
  long violations = 0;
  for (long t = 0; t < n; ++t) {
    const AmbientVector X = random_ambient(rng, 5.0);
    if (X.c.cwiseAbs().maxCoeff() < 0.1) continue;
    const double c1 = rng.uniform(0.2, 3.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
    const double c2 = rng.uniform(0.2, 3.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
    const AmbientVector Y = c1 * X;
    const AmbientVector Z = c2 * Y;
    for (auto rel : {EquivalenceRelation::Projective, EquivalenceRelation::Oriented}) {
      if (!ray_equivalent(X, X, rel)) ++violations;                       // reflexive
      if (ray_equivalent(X, Y, rel) != ray_equivalent(Y, X, rel)) ++violations;  // symmetric
      if (ray_equivalent(X, Y, rel) && ray_equivalent(Y, Z, rel) &&
          !ray_equivalent(X, Z, rel)) {
        ++violations;  // transitive
      }
    }
    // Oriented equivalence must imply projective equivalence.
    if (ray_equivalent(X, Y, EquivalenceRelation::Oriented) &&
        !ray_equivalent(X, Y, EquivalenceRelation::Projective)) {
      ++violations;
    }
  }
  return make_result("", static_cast<double>(violations), 0.0, n, "violation count");
}

inline PropertyResult p_oriented_refines_projective(Rng& rng, long n, bool) {
  long violations = 0;
  for (long t = 0; t < n; ++t) {
    const AmbientVector X = random_ambient(rng, 5.0);
    if (X.c.cwiseAbs().maxCoeff() < 0.1) continue;
    const double c = rng.uniform(0.2, 3.0);
    const AmbientVector Y = c * X;          // oriented-equivalent
    const AmbientVector Z = (-c) * X;       // projective only
    if (!ray_equivalent(X, Y, EquivalenceRelation::Oriented)) ++violations;
    if (!ray_equivalent(X, Y, EquivalenceRelation::Projective)) ++violations;
    if (ray_equivalent(X, Z, EquivalenceRelation::Oriented)) ++violations;
    if (!ray_equivalent(X, Z, EquivalenceRelation::Projective)) ++violations;
  }
  return make_result("", static_cast<double>(violations), 0.0, n, "violation count");
}

inline PropertyResult p_nullity(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const MinkowskiVector x = random_minkowski(rng, 10.0);
    const double q = minkowski_q(x);
    const double tol_scale = 1.0 + q * q;
    worst = std::max(worst, std::abs(quadratic_form(tau_plus(x))) / tol_scale);
    worst = std::max(worst, std::abs(quadratic_form(tau_minus(x))) / tol_scale);
  }
  return make_result("", worst, 1e-9, n, "|Q(tau(x))| / (1 + q^2)");
}

inline PropertyResult p_section(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const MinkowskiVector x = random_minkowski(rng, 10.0);
    const auto proj = cone_to_minkowski(tau_plus(x));
    const auto& back = std::get<MinkowskiVector>(proj);
    worst = std::max(worst,
                     ((back.c - x.c).cwiseAbs().array() / (1.0 + x.c.cwiseAbs().array())).maxCoeff());
  }
  return make_result("", worst, 1e-12, n, "componentwise relative");
}

inline PropertyResult p_scale_invariance(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const MinkowskiVector x = random_minkowski(rng, 10.0);
    const AmbientVector X = tau_plus(x);
    const double c = rng.log_uniform(0.01, 100.0);
    const auto a = std::get<MinkowskiVector>(cone_to_minkowski(X));
    const auto b = std::get<MinkowskiVector>(cone_to_minkowski(c * X));
    worst = std::max(worst,
                     ((a.c - b.c).cwiseAbs().array() / (1.0 + a.c.cwiseAbs().array())).maxCoeff());
  }
  return make_result("", worst, 1e-12, n, "componentwise relative");
}

inline PropertyResult p_non_intersection(Rng& rng, long n, bool) {
  long violations = 0;
  for (long t = 0; t < n; ++t) {
    const MinkowskiVector x = random_minkowski(rng, 10.0);
    const MinkowskiVector y = random_minkowski(rng, 10.0);
    if (ray_equivalent(tau_plus(x), tau_minus(y), EquivalenceRelation::Oriented)) ++violations;
  }
  return make_result("", static_cast<double>(violations), 0.0, n, "violation count");
}

inline PropertyResult p_polarization(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const MinkowskiVector x = random_minkowski(rng, 10.0);
    const MinkowskiVector y = random_minkowski(rng, 10.0);
    const double lhs = inner(tau_plus(x), tau_plus(y));
    const double rhs = -0.5 * minkowski_q(x - y);
    const double s = x.c.squaredNorm() + y.c.squaredNorm();
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + s * s));
  }
  return make_result("", worst, 1e-9, n, "|(tau x, tau y) + q(x-y)/2| scaled");
}

inline PropertyResult p_embedding_q(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 10.0, 1e-3, 1e3);
    const double q = quadratic_form(chart_to_ambient(p));
    const double p_sq = p.x.c.squaredNorm() + p.lambda * p.lambda;
    const double tol_scale = 1.0 + p_sq * p_sq;
    worst = std::max(worst, std::abs(q - sigma_sign(d)) / tol_scale);
  }
  return make_result("", worst, 1e-9, n, "|Q - (+-1)| / (1 + |p|^4)");
}

inline PropertyResult p_round_trip(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 10.0, 1e-3, 1e3);
    const AmbientVector X = chart_to_ambient(p);
    const ChartPoint back = ambient_to_chart(X);
    worst = std::max(worst, ((back.x.c - p.x.c).cwiseAbs().array() /
                             (1.0 + p.x.c.cwiseAbs().array()))
                                .maxCoeff());
    worst = std::max(worst, std::abs(back.lambda - p.lambda) / (1.0 + p.lambda));
    if (back.side != p.side || back.domain != p.domain) worst = std::max(worst, 1.0);
    // Reverse composition on the ambient side.
    const AmbientVector again = chart_to_ambient(back);
    worst = std::max(worst, ((again.c - X.c).cwiseAbs().array() /
                             (1.0 + X.c.cwiseAbs().array()))
                                .maxCoeff());
  }
  return make_result("", worst, 1e-9, n, "componentwise relative, both directions");
}

inline PropertyResult p_metric_cross_validation(Rng& rng, long n, bool mutate) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 3.0, 0.1, 10.0);
    MetricTensor closed = metric_closed_form(p);
    if (mutate) closed(4, 4) = -closed(4, 4);  // deliberate sign defect
    const MetricTensor numeric = metric_numerical(p, 1e-5);
    const double bound = 1e-6 / (p.lambda * p.lambda);
    worst = std::max(worst, (numeric - closed).cwiseAbs().maxCoeff() / bound);
  }
  return make_result("", worst, 1.0, n, "entrywise vs 1e-6/lambda^2 (ratio)");
}

inline PropertyResult p_conformal_flatness(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 10.0, 1e-2, 1e2);
    Vec5 flat;
    flat << 1, 1, 1, -1, flat_lambda_sign(d);
    const Mat5 expected = (flat / (p.lambda * p.lambda)).asDiagonal();
    worst = std::max(worst, (metric_closed_form(p) - expected).cwiseAbs().maxCoeff());
    // Conformal factor must depend on lambda only.
    const ChartPoint p2(d, random_minkowski(rng, 10.0), p.lambda, p.side);
    worst = std::max(worst,
                     (metric_closed_form(p) - metric_closed_form(p2)).cwiseAbs().maxCoeff());
  }
  return make_result("", worst, 0.0, n, "exact equality with (1/l^2) diag");
}

inline PropertyResult p_side_coverage(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 5.0, 0.01, 100.0);
    const AmbientVector X = chart_to_ambient(p);
    const ChartPoint base = ambient_to_chart(X);
    const ChartPoint flipped = ambient_to_chart(antipode(X));
    worst = std::max(worst, (flipped.x.c - base.x.c).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(flipped.lambda - base.lambda));
    if (flipped.side != -base.side) worst = std::max(worst, 1.0);
  }
  return make_result("", worst, 1e-12, n, "x, lambda preserved; side flipped");
}

inline PropertyResult p_christoffel_cross_validation(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 3.0, 0.1, 10.0);
    const ChristoffelSymbols closed = christoffel_closed_form(p);
    const ChristoffelSymbols numeric = christoffel_numerical(p, 1e-5);
    const double bound = 1e-4 / p.lambda;
    double diff = 0.0;
    for (std::size_t k = 0; k < closed.v.size(); ++k) {
      diff = std::max(diff, std::abs(closed.v[k] - numeric.v[k]));
    }
    worst = std::max(worst, diff / bound);
  }
  return make_result("", worst, 1.0, n, "entrywise vs 1e-4/lambda (ratio)");
}

inline PropertyResult p_christoffel_symmetry(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const DomainTag d = rng.uniform() < 0.5 ? DomainTag::SigmaMinus : DomainTag::SigmaPlus;
    const ChartPoint p = random_chart_point(rng, d, 3.0, 0.1, 10.0);
    for (const auto& gam : {christoffel_closed_form(p), christoffel_numerical(p, 1e-5)}) {
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          for (int c = b; c < 5; ++c)
            worst = std::max(worst, std::abs(gam(a, b, c) - gam(a, c, b)));
    }
  }
  return make_result("", worst, 1e-12, n, "Gamma^a_{bc} - Gamma^a_{cb}");
}

/// Whether a path stayed numerically resolved: ran to completion with lambda
/// inside a moderate window. Trajectories that escape toward the chart
/// boundary (lambda -> 0 or the finite-affine-parameter lambda -> inf pole)
/// are valid integrator outputs but unusable for tight conservation checks.
inline bool path_resolved(const GeodesicPath& path, double l_lo = 1e-2, double l_hi = 1e2) {
  if (path.termination != TerminationReason::Completed) return false;
  for (const auto& s : path.samples) {
    if (s.state.point.lambda < l_lo || s.state.point.lambda > l_hi) return false;
  }
  return true;
}

inline GeodesicState random_affine_state(Rng& rng, double v_bound) {
  GeodesicState st;
  st.point =
      ChartPoint(DomainTag::SigmaMinus, random_minkowski(rng, 2.0), rng.uniform(0.5, 2.0), +1);
  for (int i = 0; i < 5; ++i) st.velocity[i] = rng.uniform(-v_bound, v_bound);
  return st;
}

inline PropertyResult p_affine_conservation(Rng& rng, long n, bool) {
  double worst = 0.0;
  std::vector<GeodesicPath> paths;
  for (const auto& g : oracle_classes()) {
    paths.push_back(integrate_affine(affine_lift(g.state_at(1.0), 0.1), 10.0, 1e-3));
  }
  const long wanted = std::max(1L, n / 4);
  for (long accepted = 0; accepted < wanted;) {
    GeodesicPath path = integrate_affine(random_affine_state(rng, 0.1), 10.0, 1e-3);
    if (!path_resolved(path)) continue;  // escaped the chart; redraw
    paths.push_back(std::move(path));
    ++accepted;
  }
  for (const auto& path : paths) {
    const double c0 = metric_speed(path.front().state);
    const double bound = 1e-8 * (1.0 + std::abs(c0));
    for (const auto& s : path.samples) {
      worst = std::max(worst, std::abs(metric_speed(s.state) - c0) / bound);
    }
  }
  return make_result("", worst, 1.0, static_cast<long>(paths.size()),
                     "speed drift vs 1e-8 (1+|c0|) (ratio)");
}

inline PropertyResult p_oracle_agreement(Rng& rng, long n, bool) {
  double worst = 0.0;
  long runs = 0;
  auto check = [&](const ClosedFormGeodesic& g, double l0, double l1) {
    const GeodesicState s0 = g.state_at(l0);
    const GeodesicPath path =
        integrate_lambda(s0.point.x, Vec4(s0.velocity.head<4>()), l0, l1, 1e-3);
    worst = std::max(worst, g.invariant_residual(path));
    ++runs;
  };
  for (const auto& g : oracle_classes()) {
    const auto [l0, l1] = oracle_lambda_range(g);
    check(g, l0, l1);
  }
  for (long t = 0; t < std::max(1L, n / 20); ++t) {
    const double a = rng.uniform(0.5, 2.0);
    check(ClosedFormGeodesic::null_parabola(rng.uniform(-1.5, 1.5),
                                            random_minkowski(rng, 2.0)),
          0.5, 2.0);
    check(ClosedFormGeodesic::timelike_hyperbola(a, rng.uniform(-2.0, 2.0),
                                                 rng.uniform() < 0.5 ? +1 : -1),
          0.5, 2.5);
    check(ClosedFormGeodesic::spacelike_semicircle(a, rng.uniform(-2.0, 2.0),
                                                   rng.uniform() < 0.5 ? +1 : -1),
          0.4 * a, 0.9 * a);
  }
  return make_result("", worst, 1e-6, runs, "closed-form invariant along RK4 path");
}

inline PropertyResult p_direction_constancy(Rng& rng, long n, bool) {
  double worst = 0.0;
  long runs = 0;
  auto check = [&](const MinkowskiVector& x0, const Vec4& xp0, double l0, double l1) {
    if (xp0.norm() < 1e-6) return;
    const Vec4 dir0 = xp0.normalized();
    const GeodesicPath path = integrate_lambda(x0, xp0, l0, l1, 1e-3);
    for (const auto& s : path.samples) {
      const Vec4 xp = s.state.velocity.head<4>();
      if (xp.norm() < 1e-12) continue;
      const Vec4 dir = xp.normalized();
      worst = std::max(worst, std::min((dir - dir0).norm(), (dir + dir0).norm()));
    }
    ++runs;
  };
  for (const auto& g : oracle_classes()) {
    const auto [l0, l1] = oracle_lambda_range(g);
    const GeodesicState s0 = g.state_at(l0);
    check(s0.point.x, Vec4(s0.velocity.head<4>()), l0, l1);
  }
  for (long t = 0; t < std::max(1L, n / 20); ++t) {
    Vec4 xp;
    for (int i = 0; i < 4; ++i) xp[i] = rng.uniform(-1.0, 1.0);
    // A spacelike-class member reaches its apex (vertical tangent, x' -> inf)
    // at lambda0 sqrt(1 + 1/x'^2); lambda stays a valid parameter below it.
    const double l0 = 1.0;
    double l1 = rng.uniform(1.2, 2.0);
    const double xp_sq = minkowski_q(MinkowskiVector(xp));
    if (xp_sq > 1e-9) l1 = std::min(l1, 0.95 * l0 * std::sqrt(1.0 + 1.0 / xp_sq));
    check(random_minkowski(rng, 2.0), xp, l0, l1);
  }
  return make_result("", worst, 1e-8, runs, "drift of x'/|x'| along the path");
}

inline PropertyResult p_plane_sections(Rng& rng, long n, bool) {
  double worst_closed = 0.0, worst_integrated = 0.0;
  for (const auto& g : oracle_classes()) {
    const auto [l0, l1] = oracle_lambda_range(g);
    worst_closed = std::max(worst_closed, plane_section_residual(g.sample(l0, l1, 50)));
  }
  worst_closed = std::max(
      worst_closed,
      plane_section_residual(
          ClosedFormGeodesic::constant_lambda_null(Vec4(1, 0, 0, 1), MinkowskiVector(), 1.0)
              .sample(0.0, 5.0, 50)));
  long runs = 0;
  const long wanted = std::max(1L, n / 20);
  while (runs < wanted) {
    const GeodesicPath path = integrate_affine(random_affine_state(rng, 1.0), 2.0, 1e-3);
    if (!path_resolved(path)) continue;  // escaped the chart; redraw
    worst_integrated = std::max(worst_integrated, plane_section_residual(path));
    ++runs;
  }
  const double worst = std::max(worst_closed / 1e-10, worst_integrated / 1e-7);
  return make_result("", worst, 1.0, runs + 4,
                     "sigma3/sigma1 vs 1e-10 closed / 1e-7 integrated (ratio)");
}

inline PropertyResult p_parameterization_consistency(Rng& rng, long n, bool) {
  double worst = 0.0;
  long used = 0;
  for (long t = 0; t < std::max(1L, n / 20); ++t) {
    GeodesicState st;
    st.point = ChartPoint(DomainTag::SigmaMinus, random_minkowski(rng, 2.0),
                          rng.uniform(0.8, 1.5), +1);
    for (int i = 0; i < 4; ++i) st.velocity[i] = rng.uniform(-0.05, 0.05);
    st.velocity[4] = rng.uniform(0.15, 0.3);
    const GeodesicPath path = integrate_affine(st, 5.0, 1e-3);
    for (const auto& s : path.samples) {
      const auto rhs = affine_rhs(s.state);
      const double vl = s.state.velocity[4];
      if (std::abs(vl) < 0.05) continue;  // chain rule ill-conditioned near dlambda/ds = 0
      const Vec4 vx = s.state.velocity.head<4>();
      const Vec4 ax(rhs[5], rhs[6], rhs[7], rhs[8]);
      const double al = rhs[9];
      const Vec4 xprime = vx / vl;
      const Vec4 xsecond = (ax * vl - vx * al) / (vl * vl * vl);
      worst = std::max(worst,
                       (xsecond - lambda_rhs(xprime, s.state.point.lambda)).cwiseAbs().maxCoeff());
      ++used;
    }
  }
  return make_result("", worst, 1e-6, used, "chain-rule residual vs reduced equation");
}

inline PropertyResult p_null_degenerate_equivalence(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    // Directions with exactly representable x'^2 = 0.
    const double c = rng.uniform(-3.0, 3.0);
    Vec4 u;
    const int axis = rng.uniform_int(0, 2);
    u.setZero();
    u[axis] = c;
    u[3] = c;
    const double l = rng.log_uniform(0.1, 10.0);
    worst = std::max(worst, (lambda_rhs(u, l) - Vec4(u / l)).cwiseAbs().maxCoeff());
  }
  return make_result("", worst, 0.0, n, "x'' = x'/lambda exactly when x'^2 = 0");
}

inline PropertyResult p_group_closure(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const ConformalMatrix a = random_conformal(rng);
    const ConformalMatrix b = random_conformal(rng);
    const Mat6& g = ambient_metric();
    auto residual = [&](const Mat6& m) {
      return (m.transpose() * g * m - g).cwiseAbs().maxCoeff();
    };
    worst = std::max(worst, residual((a * b).m));
    worst = std::max(worst, residual(inverse(a).m));
    worst = std::max(worst, ((a * inverse(a)).m - Mat6::Identity()).cwiseAbs().maxCoeff());
  }
  return make_result("", worst, 1e-9, n, "M^T G M - G and M M^{-1} - I");
}

inline PropertyResult p_q_invariance(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const ConformalMatrix m = random_conformal(rng);
    const AmbientVector X = random_ambient(rng, 5.0);
    const double dq = std::abs(quadratic_form(act_ambient(m, X)) - quadratic_form(X));
    worst = std::max(worst, dq / (1.0 + X.c.squaredNorm()));
  }
  return make_result("", worst, 1e-9, n, "|Q(MX) - Q(X)| / (1 + |X|^2)");
}

/// Whether the image of p under m stays in the region where FD-based checks
/// are well conditioned (far from the X^5 = X^6 singular locus).
inline bool image_well_inside_chart(const ConformalMatrix& m, const ChartPoint& p) {
  try {
    const ChartPoint q = act_chart(m, p);
    return q.lambda > 1e-2 && q.lambda < 1e2 && q.x.c.cwiseAbs().maxCoeff() < 1e2;
  } catch (const AtDomainInfinityError&) {
    return false;
  }
}

inline PropertyResult p_isometry(Rng& rng, long n, bool) {
  double worst = 0.0;
  long runs = 0;
  const long wanted = std::max(1L, n / 100);
  while (runs < wanted) {
    const ConformalMatrix m = random_conformal(rng);
    const ChartPoint p = random_chart_point(rng, DomainTag::SigmaMinus, 2.0, 0.5, 2.0);
    if (!image_well_inside_chart(m, p)) continue;  // redraw
    try {
      worst = std::max(worst, pullback_metric_residual(m, p, 1e-6));
    } catch (const AtDomainInfinityError&) {
      continue;  // an FD probe left the chart; redraw
    }
    ++runs;
  }
  return make_result("", worst, 1e-6, runs, "max |J^T g J - g|, image inside chart");
}

inline PropertyResult p_geodesic_equivariance(Rng& rng, long n, bool) {
  double worst = 0.0;
  long runs = 0;
  const long wanted = std::max(1L, n / 200);
  while (runs < wanted) {
    GeodesicState st;
    st.point = ChartPoint(DomainTag::SigmaMinus, random_minkowski(rng, 1.0),
                          rng.uniform(0.8, 1.5), +1);
    for (int i = 0; i < 5; ++i) st.velocity[i] = rng.uniform(-0.5, 0.5);
    const GeodesicPath path = integrate_affine(st, 2.0, 1e-3);
    if (!path_resolved(path)) continue;
    const ConformalMatrix m = random_conformal(rng, 3);
    GeodesicPath mapped = path;
    bool ok = true;
    try {
      for (auto& s : mapped.samples) s.state.point = act_chart(m, s.state.point);
    } catch (const AtDomainInfinityError&) {
      ok = false;
    }
    if (!ok) continue;
    worst = std::max(worst, plane_section_residual(mapped));
    ++runs;
  }
  return make_result("", worst, 1e-7, runs, "plane residual of mapped geodesics");
}

inline PropertyResult p_minkowski_conformality(Rng& rng, long n, bool) {
  double worst = 0.0;
  long runs = 0;
  const long wanted = std::max(1L, n / 100);
  while (runs < wanted) {
    const ConformalMatrix m = random_conformal(rng);
    const MinkowskiVector x = random_minkowski(rng, 2.0);
    const double h = 1e-6;
    Eigen::Matrix4d jac;
    bool ok = true;
    for (int a = 0; a < 4 && ok; ++a) {
      MinkowskiVector xp = x, xm = x;
      const double step = h * std::max(1.0, std::abs(x.c[a]));
      xp.c[a] += step;
      xm.c[a] -= step;
      const auto ip = act_minkowski(m, xp);
      const auto im = act_minkowski(m, xm);
      if (!ip.conformal_scale || !im.conformal_scale) {
        ok = false;
        break;
      }
      jac.col(a) = (std::get<MinkowskiVector>(ip.image).c -
                    std::get<MinkowskiVector>(im.image).c) /
                   (2.0 * step);
    }
    if (!ok) continue;
    const auto base = act_minkowski(m, x);
    if (!base.conformal_scale || std::abs(*base.conformal_scale) > 1e3) continue;
    const Eigen::Matrix4d pulled = jac.transpose() * minkowski_metric() * jac;
    const double c = pulled(0, 0);
    if (!(c > 0.0)) {
      worst = std::max(worst, 1.0);
      ++runs;
      continue;
    }
    worst = std::max(worst,
                     (pulled - c * minkowski_metric()).cwiseAbs().maxCoeff() / std::abs(c));
    ++runs;
  }
  return make_result("", worst, 1e-5, runs, "|J^T eta J - c eta| / c");
}

inline PropertyResult p_incidence_identity(Rng& rng, long n, bool) {
  double worst = 0.0;
  for (long t = 0; t < n; ++t) {
    const MinkowskiVector x = random_minkowski(rng, 10.0);
    const ChartPoint p = random_chart_point(rng, DomainTag::SigmaMinus, 10.0, 0.1, 10.0);
    const auto [r_tau, r_q] = incidence_residuals(x, p);
    const double s = x.c.squaredNorm() + p.x.c.squaredNorm() + p.lambda * p.lambda;
    worst = std::max(worst, std::abs(r_tau + 0.5 * r_q) / (1.0 + s * s));
  }
  return make_result("", worst, 1e-9, n, "|(tau x, Y) + (q(x-y)+l^2)/2| scaled");
}

inline PropertyResult p_apex_membership(Rng& rng, long n, bool) {
  long violations = 0;
  for (long t = 0; t < n; ++t) {
    const ChartPoint p = random_chart_point(rng, DomainTag::SigmaMinus, 10.0, 0.1, 10.0);
    for (const double sgn : {+1.0, -1.0}) {
      MinkowskiVector apex = p.x;
      apex.c[3] += sgn * p.lambda;
      if (!incidence(apex, p)) ++violations;
    }
  }
  return make_result("", static_cast<double>(violations), 0.0, n, "violation count");
}

inline PropertyResult p_incidence_equivariance(Rng& rng, long n, bool) {
  long violations = 0;
  long used = 0;
  for (long t = 0; t < n; ++t) {
    const ChartPoint p = random_chart_point(rng, DomainTag::SigmaMinus, 2.0, 0.5, 2.0);
    // Exact point of the hyperboloid: x = y + (s, +-sqrt(lambda^2 + |s|^2)).
    Eigen::Vector3d sp;
    for (int i = 0; i < 3; ++i) sp[i] = rng.uniform(-1.0, 1.0);
    MinkowskiVector x = p.x;
    x.c.head<3>() += sp;
    x.c[3] += (rng.uniform() < 0.5 ? 1.0 : -1.0) *
              std::sqrt(p.lambda * p.lambda + sp.squaredNorm());
    if (!incidence(x, p)) ++violations;
    ConformalMatrix m;
    if (rng.uniform() < 0.5) {
      m = generator(Translation{random_minkowski(rng, 1.0)});
    } else {
      int i = rng.uniform_int(1, 2);
      m = generator(Rotation{i, rng.uniform_int(i + 1, 3), rng.uniform(-1.0, 1.0)});
    }
    try {
      const ChartPoint p_mapped = act_chart(m, p);
      const auto x_mapped = act_minkowski(m, x);
      if (!x_mapped.conformal_scale) continue;
      ++used;
      if (!incidence(std::get<MinkowskiVector>(x_mapped.image), p_mapped)) ++violations;
    } catch (const AtDomainInfinityError&) {
      continue;
    }
  }
  return make_result("", static_cast<double>(violations), 0.0, used, "violation count");
}

inline const std::vector<Property>& property_table() {
  static const std::vector<Property> table = {
      {"ambient.inner_bilinear_symmetric", 10000, p_inner_bilinear},
      {"ambient.normalize_unit_q", 10000, p_normalize_unit_q},
      {"ambient.ray_equivalence_relation", 2000, p_ray_equivalence_relation},
      {"ambient.oriented_refines_projective", 2000, p_oriented_refines_projective},
      {"compactification.nullity", 10000, p_nullity},
      {"compactification.section", 10000, p_section},
      {"compactification.scale_invariance", 10000, p_scale_invariance},
      {"compactification.non_intersection", 10000, p_non_intersection},
      {"compactification.polarization", 10000, p_polarization},
      {"charts.embedding_q", 10000, p_embedding_q},
      {"charts.round_trip", 10000, p_round_trip},
      {"charts.metric_cross_validation", 1000, p_metric_cross_validation},
      {"charts.conformal_flatness", 1000, p_conformal_flatness},
      {"charts.side_coverage", 10000, p_side_coverage},
      {"geodesics.christoffel_cross_validation", 1000, p_christoffel_cross_validation},
      {"geodesics.christoffel_symmetry", 100, p_christoffel_symmetry},
      {"geodesics.affine_conservation", 40, p_affine_conservation},
      {"geodesics.oracle_agreement", 200, p_oracle_agreement},
      {"geodesics.direction_constancy", 200, p_direction_constancy},
      {"geodesics.plane_sections", 400, p_plane_sections},
      {"geodesics.parameterization_consistency", 200, p_parameterization_consistency},
      {"geodesics.null_degenerate_equivalence", 10000, p_null_degenerate_equivalence},
      {"group.closure", 1000, p_group_closure},
      {"group.q_invariance", 10000, p_q_invariance},
      {"group.isometry", 10000, p_isometry},
      {"group.geodesic_equivariance", 10000, p_geodesic_equivariance},
      {"group.minkowski_conformality", 10000, p_minkowski_conformality},
      {"hyperboloids.incidence_identity", 10000, p_incidence_identity},
      {"hyperboloids.apex_membership", 10000, p_apex_membership},
      {"hyperboloids.incidence_equivariance", 2000, p_incidence_equivariance},
  };
  return table;
}

}  // namespace verify_detail

}  // namespace confdom
