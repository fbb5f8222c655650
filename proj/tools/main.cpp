// confdom command-line interface.
//
// Subcommands: embed, chart, metric, christoffel, geodesic, figure, verify,
// transform. JSON output is one object per invocation with fields
// command / inputs / result / diagnostics; CSV uses a fixed header and 17
// significant digits. Exit codes are part of the contract:
//   0 ok, 1 verification failure, 2 usage, 3 domain infinity,
//   4 not on the manifold, 5 bad step, 6 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confdom/confdom.hpp"

using json = nlohmann::ordered_json;
using namespace confdom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomainInfinity = 3;
constexpr int kExitNotOnManifold = 4;
constexpr int kExitBadStep = 5;
constexpr int kExitIo = 6;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_reals(const std::string& text, std::size_t expected,
                                const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw std::invalid_argument(tok);
      if (!std::isfinite(v)) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": cannot parse '" + tok + "' as a finite real");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw UsageError(what + ": expected " + std::to_string(expected) + " comma-separated reals, got " +
                     std::to_string(out.size()));
  }
  return out;
}

MinkowskiVector parse_minkowski(const std::string& text, const std::string& what) {
  const auto v = parse_reals(text, 4, what);
  return MinkowskiVector(v[0], v[1], v[2], v[3]);
}

DomainTag parse_domain(const std::string& text) {
  if (text == "sigma-minus") return DomainTag::SigmaMinus;
  if (text == "sigma-plus") return DomainTag::SigmaPlus;
  throw UsageError("--domain must be sigma-minus or sigma-plus");
}

const char* domain_name(DomainTag d) {
  return d == DomainTag::SigmaMinus ? "sigma-minus" : "sigma-plus";
}

json to_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }
json to_json(const Vec6& v) { return json::array({v[0], v[1], v[2], v[3], v[4], v[5]}); }

json to_json(const Mat5& m) {
  json rows = json::array();
  for (int i = 0; i < 5; ++i) {
    json row = json::array();
    for (int j = 0; j < 5; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json chart_point_json(const ChartPoint& p) {
  return json{{"domain", domain_name(p.domain)},
              {"x", to_json(p.x.c)},
              {"lambda", p.lambda},
              {"side", p.side}};
}

void emit(const json& doc, const std::optional<std::string>& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path) {
    std::ofstream os(*out_path, std::ios::binary);
    if (!os || !(os << text)) throw IoError("cannot write " + *out_path);
  } else {
    std::cout << text;
  }
}

void emit_text(const std::string& text, const std::optional<std::string>& out_path) {
  if (out_path) {
    std::ofstream os(*out_path, std::ios::binary);
    if (!os || !(os << text)) throw IoError("cannot write " + *out_path);
  } else {
    std::cout << text;
  }
}

std::string command_line_string(int argc, char** argv) {
  std::string s = "confdom";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

// --------------------------------------------------------------------------
// embed
// --------------------------------------------------------------------------

struct EmbedArgs {
  std::string x;
  std::string map = "tau-plus";
  std::string format = "json";
  std::optional<std::string> out;
};

int run_embed(const EmbedArgs& a) {
  const MinkowskiVector x = parse_minkowski(a.x, "--x");
  AmbientVector X;
  if (a.map == "tau-plus") X = tau_plus(x);
  else if (a.map == "tau-minus") X = tau_minus(x);
  else throw UsageError("--map must be tau-plus or tau-minus");

  if (a.format == "csv") {
    std::string csv = "X1,X2,X3,X4,X5,X6\n";
    for (int i = 0; i < 6; ++i) csv += fmt17(X.c[i]) + (i < 5 ? "," : "\n");
    emit_text(csv, a.out);
  } else if (a.format == "json") {
    emit(json{{"command", "embed"},
              {"inputs", {{"x", to_json(x.c)}, {"map", a.map}}},
              {"result", {{"X", to_json(X.c)}, {"Q", quadratic_form(X)}}},
              {"diagnostics", json::object()}},
         a.out);
  } else {
    throw UsageError("embed supports --format json|csv");
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// chart
// --------------------------------------------------------------------------

struct ChartArgs {
  std::string x;
  std::string X;
  std::string domain = "sigma-minus";
  double lambda = 1.0;
  int side = +1;
  std::optional<std::string> out;
};

int run_chart_to_ambient(const ChartArgs& a) {
  const ChartPoint p(parse_domain(a.domain), parse_minkowski(a.x, "--x"), a.lambda, a.side);
  const AmbientVector X = chart_to_ambient(p);
  emit(json{{"command", "chart to-ambient"},
            {"inputs", chart_point_json(p)},
            {"result", {{"X", to_json(X.c)}, {"Q", quadratic_form(X)}}},
            {"diagnostics", json::object()}},
       a.out);
  return kExitOk;
}

int run_chart_to_chart(const ChartArgs& a) {
  const auto v = parse_reals(a.X, 6, "--X");
  const AmbientVector X(v[0], v[1], v[2], v[3], v[4], v[5]);
  try {
    const ChartPoint p = ambient_to_chart(X);
    emit(json{{"command", "chart to-chart"},
              {"inputs", {{"X", to_json(X.c)}}},
              {"result", chart_point_json(p)},
              {"diagnostics", json::object()}},
         a.out);
    return kExitOk;
  } catch (const AtDomainInfinityError&) {
    // Classify the infinity point: the reduced vector sits on the
    // two-sheeted (Sigma_-) or one-sheeted (Sigma_+) hyperboloid.
    const bool at_inf = is_domain_infinity(X);
    const double q = quadratic_form(X);
    const DomainTag d = q > 0 ? DomainTag::SigmaPlus : DomainTag::SigmaMinus;
    emit(json{{"command", "chart to-chart"},
              {"inputs", {{"X", to_json(X.c)}}},
              {"result",
               {{"type", "domain-infinity"},
                {"domain", domain_name(d)},
                {"reduced_point", to_json(Vec4(X.c.head<4>()))},
                {"reduced_q", minkowski_q(X.minkowski_part())},
                {"hyperboloid", d == DomainTag::SigmaMinus ? "two-sheeted" : "one-sheeted"},
                {"at_infinity", at_inf}}},
              {"diagnostics", json::object()}},
         a.out);
    return kExitDomainInfinity;
  }
}

// --------------------------------------------------------------------------
// metric / christoffel
// --------------------------------------------------------------------------

struct MetricArgs {
  std::string domain = "sigma-minus";
  double lambda = 1.0;
  std::string x = "0,0,0,0";
  bool numerical = false;
  double h = 1e-5;
  std::optional<std::string> out;
};

int run_metric(const MetricArgs& a) {
  const ChartPoint p(parse_domain(a.domain), parse_minkowski(a.x, "--x"), a.lambda, +1);
  const MetricTensor closed = metric_closed_form(p);
  json result{{"metric", to_json(closed)}};
  json diagnostics = json::object();
  if (a.numerical) {
    const MetricTensor numeric = metric_numerical(p, a.h);
    result["metric_numerical"] = to_json(numeric);
    diagnostics["max_deviation"] = (numeric - closed).cwiseAbs().maxCoeff();
  }
  emit(json{{"command", "metric"},
            {"inputs", {{"domain", a.domain}, {"x", to_json(p.x.c)}, {"lambda", a.lambda}}},
            {"result", result},
            {"diagnostics", diagnostics}},
       a.out);
  return kExitOk;
}

int run_christoffel(const MetricArgs& a) {
  const ChartPoint p(parse_domain(a.domain), parse_minkowski(a.x, "--x"), a.lambda, +1);
  const ChristoffelSymbols closed = christoffel_closed_form(p);
  json entries = json::array();
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        if (closed(i, j, k) != 0.0) {
          entries.push_back(json{{"indices", {i + 1, j + 1, k + 1}}, {"value", closed(i, j, k)}});
        }
      }
    }
  }
  json result{{"nonzero", entries}};
  json diagnostics = json::object();
  if (a.numerical) {
    const ChristoffelSymbols numeric = christoffel_numerical(p, a.h);
    double dev = 0.0;
    for (std::size_t i = 0; i < numeric.v.size(); ++i) {
      dev = std::max(dev, std::abs(numeric.v[i] - closed.v[i]));
    }
    diagnostics["max_deviation"] = dev;
  }
  emit(json{{"command", "christoffel"},
            {"inputs", {{"domain", a.domain}, {"x", to_json(p.x.c)}, {"lambda", a.lambda}}},
            {"result", result},
            {"diagnostics", diagnostics}},
       a.out);
  return kExitOk;
}

// --------------------------------------------------------------------------
// geodesic
// --------------------------------------------------------------------------

struct GeodesicArgs {
  std::string param = "affine";
  std::string start = "0,0,0,0";
  double lambda = 1.0;
  std::string vel;       // affine: 5 components
  std::string dir;       // lambda: 4 components dx/dlambda
  double lambda_end = 2.0;
  double smax = 10.0;
  double h = 1e-3;
  double lambda_floor = 1e-6;
  std::string domain = "sigma-minus";
  std::string format = "csv";
  std::string plane = "x1";
  bool check = false;
  std::optional<std::string> out;
};

const char* termination_name(TerminationReason t) {
  switch (t) {
    case TerminationReason::Completed: return "completed";
    case TerminationReason::LambdaFloorReached: return "lambda-floor-reached";
    default: return "step-failure";
  }
}

int plane_index(const std::string& plane) {
  if (plane == "x1") return 0;
  if (plane == "x2") return 1;
  if (plane == "x3") return 2;
  if (plane == "x4") return 3;
  throw UsageError("--plane must be one of x1, x2, x3, x4");
}

std::string path_csv(const GeodesicPath& path) {
  std::string csv = "param,x1,x2,x3,x4,lambda\n";
  for (const auto& s : path.samples) {
    csv += fmt17(s.param);
    for (int i = 0; i < 4; ++i) csv += "," + fmt17(s.state.point.x.c[i]);
    csv += "," + fmt17(s.state.point.lambda) + "\n";
  }
  return csv;
}

std::string path_svg(const GeodesicPath& path, int plane, const std::string& command_line) {
  double wmin = 0, wmax = 0, lmax = 1;
  bool first = true;
  for (const auto& s : path.samples) {
    const double w = s.state.point.x.c[plane];
    const double l = s.state.point.lambda;
    if (first) { wmin = wmax = w; lmax = l; first = false; }
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
    lmax = std::max(lmax, l);
  }
  const double pad = std::max(0.5, 0.05 * (wmax - wmin));
  FigureSpec frame;  // reuse the figure renderer's geometry with a single curve
  frame.figure = 1;
  frame.family_params = {0.0};
  frame.x_min = wmin - pad;
  frame.x_max = wmax + pad;
  frame.lambda_max = lmax * 1.05;
  FigureCurve curve;
  for (const auto& s : path.samples) {
    curve.points.emplace_back(s.state.point.x.c[plane], s.state.point.lambda);
  }
  return render_svg(frame, {curve}, command_line);
}

json path_diagnostics(const GeodesicPath& path) {
  json d;
  d["termination"] = termination_name(path.termination);
  d["samples"] = path.size();
  if (path.parameterization == Parameterization::Affine) {
    const double c0 = metric_speed(path.front().state);
    double drift = 0.0;
    for (const auto& s : path.samples) {
      drift = std::max(drift, std::abs(metric_speed(s.state) - c0));
    }
    d["metric_speed_initial"] = c0;
    d["metric_speed_max_drift"] = drift;
  } else {
    const Vec4 xp0 = path.front().state.velocity.head<4>();
    if (xp0.norm() > 0) {
      const Vec4 dir0 = xp0.normalized();
      double drift = 0.0;
      for (const auto& s : path.samples) {
        const Vec4 xp = s.state.velocity.head<4>();
        if (xp.norm() == 0.0) continue;
        const Vec4 dir = xp.normalized();
        drift = std::max(drift, std::min((dir - dir0).norm(), (dir + dir0).norm()));
      }
      d["direction_max_drift"] = drift;
    }
  }
  if (path.size() >= 3) d["plane_section_residual"] = plane_section_residual(path);
  return d;
}

int run_geodesic(const GeodesicArgs& a, const std::string& command_line) {
  GeodesicPath path;
  json inputs{{"param", a.param}, {"start", nullptr}, {"lambda", a.lambda}};
  const MinkowskiVector x0 = parse_minkowski(a.start, "--start");
  inputs["start"] = to_json(x0.c);

  if (a.param == "affine") {
    if (a.vel.empty()) throw UsageError("affine parameterization needs --vel v1,v2,v3,v4,vlambda");
    const auto v = parse_reals(a.vel, 5, "--vel");
    GeodesicState st;
    st.point = ChartPoint(parse_domain(a.domain), x0, a.lambda, +1);
    for (int i = 0; i < 5; ++i) st.velocity[i] = v[i];
    inputs["vel"] = json::array({v[0], v[1], v[2], v[3], v[4]});
    inputs["smax"] = a.smax;
    inputs["h"] = a.h;
    inputs["lambda_floor"] = a.lambda_floor;
    path = integrate_affine(st, a.smax, a.h, a.lambda_floor);
  } else if (a.param == "lambda") {
    if (a.dir.empty()) throw UsageError("lambda parameterization needs --dir dx1,dx2,dx3,dx4");
    const auto v = parse_reals(a.dir, 4, "--dir");
    inputs["dir"] = json::array({v[0], v[1], v[2], v[3]});
    inputs["lambda_end"] = a.lambda_end;
    inputs["h"] = a.h;
    path = integrate_lambda(x0, Vec4(v[0], v[1], v[2], v[3]), a.lambda, a.lambda_end, a.h);
  } else {
    throw UsageError("--param must be affine or lambda");
  }

  if (a.format == "csv") {
    emit_text(path_csv(path), a.out);
    // Keep the CSV schema fixed; the termination reason and any --check
    // diagnostics go to the error stream.
    if (a.check) {
      std::cerr << path_diagnostics(path).dump(2) << "\n";
    } else {
      std::cerr << "termination: " << termination_name(path.termination) << "\n";
    }
  } else if (a.format == "json") {
    json samples = json::array();
    for (const auto& s : path.samples) {
      samples.push_back(json{{"param", s.param},
                             {"x", to_json(s.state.point.x.c)},
                             {"lambda", s.state.point.lambda}});
    }
    json result{{"parameterization", a.param},
                {"termination", termination_name(path.termination)},
                {"samples", samples}};
    emit(json{{"command", "geodesic"},
              {"inputs", inputs},
              {"result", result},
              {"diagnostics", a.check ? path_diagnostics(path) : json::object()}},
         a.out);
  } else if (a.format == "svg") {
    emit_text(path_svg(path, plane_index(a.plane), command_line), a.out);
    if (a.check) std::cerr << path_diagnostics(path).dump(2) << "\n";
  } else {
    throw UsageError("geodesic supports --format csv|json|svg");
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// figure
// --------------------------------------------------------------------------

struct FigureArgs {
  int n = 1;
  std::string out;
  std::string params;
  int samples = 0;
  double xmin = 0, xmax = 0, lmax = 0;
  bool have_xrange = false, have_lmax = false;
  int parallel = 1;
};

int run_figure(const FigureArgs& a, const std::string& command_line) {
  FigureSpec spec = FigureSpec::defaults(a.n);
  if (!a.params.empty()) spec.family_params = parse_reals(a.params, 0, "--params");
  if (a.samples > 0) spec.samples_per_curve = a.samples;
  if (a.have_xrange) {
    spec.x_min = a.xmin;
    spec.x_max = a.xmax;
  }
  if (a.have_lmax) spec.lambda_max = a.lmax;
  spec.parallel = a.parallel;

  const auto curves = figure_curves(spec);
  for (const auto& c : curves) {
    if (c.worst_invariant_residual > 1e-9) {
      throw InvalidSpecError("figure: closed-form invariant residual above 1e-9");
    }
  }
  const std::string svg = render_svg(spec, curves, command_line);
  std::ofstream os(a.out, std::ios::binary);
  if (!os || !(os << svg)) throw IoError("cannot write " + a.out);
  return kExitOk;
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 42;
  long trials = 0;
  int parallel = 1;
  bool mutate = false;
  std::string format = "text";
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.trials = a.trials;
  opt.parallel = a.parallel;
  opt.mutate = a.mutate;
  const auto results = run_property_suite(opt);

  if (a.format == "json") {
    json props = json::array();
    for (const auto& r : results) {
      props.push_back(json{{"name", r.name},
                           {"pass", r.pass},
                           {"worst", r.worst},
                           {"tol", r.tol},
                           {"trials", r.trials},
                           {"note", r.note}});
    }
    emit(json{{"command", "verify"},
              {"inputs", {{"seed", a.seed}, {"trials", a.trials}, {"mutate", a.mutate}}},
              {"result", {{"all_passed", all_passed(results)}, {"properties", props}}},
              {"diagnostics", json::object()}},
         std::nullopt);
  } else {
    int passed = 0;
    for (const auto& r : results) {
      std::printf("%s  %-42s worst %.3e  tol %.3e  trials %-6ld %s\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tol, r.trials,
                  r.note.c_str());
      if (r.pass) ++passed;
    }
    std::printf("verify: %d/%zu properties passed (seed %llu)\n", passed, results.size(),
                static_cast<unsigned long long>(a.seed));
  }
  return all_passed(results) ? kExitOk : kExitVerifyFailure;
}

// --------------------------------------------------------------------------
// transform
// --------------------------------------------------------------------------

struct TransformArgs {
  std::string gens;
  std::string x;        // Minkowski target
  std::string X;        // ambient target
  std::string chart_x;  // chart target
  double lambda = 1.0;
  std::string domain = "sigma-minus";
  int side = +1;
  bool print_matrix = false;
  std::optional<std::string> out;
};

ConformalMatrix parse_generator_chain(const std::string& text) {
  ConformalMatrix total;  // identity
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const std::string kind = item.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : item.substr(colon + 1);
    ConformalMatrix g;
    if (kind == "rotate" || kind == "boost") {
      const auto v = parse_reals(args, 3, kind);
      const int i = static_cast<int>(v[0]);
      const int j = static_cast<int>(v[1]);
      if (v[0] != i || v[1] != j) {
        throw UsageError(kind + ": plane indices must be integers in 1..4");
      }
      g = generator(Rotation{i, j, v[2]});
    } else if (kind == "dilate") {
      const auto v = parse_reals(args, 1, kind);
      g = generator(Dilation{v[0]});
    } else if (kind == "translate") {
      const auto v = parse_reals(args, 4, kind);
      g = generator(Translation{MinkowskiVector(v[0], v[1], v[2], v[3])});
    } else if (kind == "sct") {
      const auto v = parse_reals(args, 4, kind);
      g = generator(SpecialConformal{MinkowskiVector(v[0], v[1], v[2], v[3])});
    } else if (kind == "invert") {
      g = generator(Inversion{});
    } else {
      throw UsageError("unknown generator '" + kind +
                       "' (use rotate:i,j,theta boost:i,4,theta dilate:theta "
                       "translate:a1,a2,a3,a4 sct:b1,b2,b3,b4 invert)");
    }
    total = g * total;  // listed order is application order
  }
  return total;
}

int run_transform(const TransformArgs& a) {
  if (a.gens.empty()) throw UsageError("transform needs --gens");
  const ConformalMatrix m = parse_generator_chain(a.gens);
  json result;
  json diagnostics = json::object();

  const int targets = (!a.x.empty()) + (!a.X.empty()) + (!a.chart_x.empty());
  if (targets != 1) throw UsageError("transform needs exactly one of --x, --X, --chart-x");

  if (!a.x.empty()) {
    const auto act = act_minkowski(m, parse_minkowski(a.x, "--x"));
    if (is_at_infinity(act.image)) {
      result["type"] = "at-infinity";
      result["representative"] = to_json(std::get<AtInfinity>(act.image).representative.c);
    } else {
      result["type"] = "finite";
      result["x"] = to_json(std::get<MinkowskiVector>(act.image).c);
      result["conformal_scale"] = *act.conformal_scale;
    }
  } else if (!a.X.empty()) {
    const auto v = parse_reals(a.X, 6, "--X");
    const AmbientVector X(v[0], v[1], v[2], v[3], v[4], v[5]);
    const AmbientVector image = act_ambient(m, X);
    result["X"] = to_json(image.c);
    diagnostics["Q_before"] = quadratic_form(X);
    diagnostics["Q_after"] = quadratic_form(image);
  } else {
    const ChartPoint p(parse_domain(a.domain), parse_minkowski(a.chart_x, "--chart-x"), a.lambda,
                       a.side);
    const ChartPoint image = act_chart(m, p);
    result = chart_point_json(image);
  }

  if (a.print_matrix) {
    json flat = json::array();  // row-major
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) flat.push_back(m.m(i, j));
    result["matrix"] = flat;
    diagnostics["is_conformal"] = is_conformal_matrix(m);
  }

  emit(json{{"command", "transform"},
            {"inputs", {{"gens", a.gens}}},
            {"result", result},
            {"diagnostics", diagnostics}},
       a.out);
  return kExitOk;
}

int map_exception(const std::exception& e) {
  if (dynamic_cast<const AtDomainInfinityError*>(&e)) return kExitDomainInfinity;
  if (dynamic_cast<const NotOnSigmaError*>(&e)) return kExitNotOnManifold;
  if (dynamic_cast<const NotOnConeError*>(&e)) return kExitNotOnManifold;
  if (dynamic_cast<const StepTooLargeError*>(&e)) return kExitBadStep;
  if (dynamic_cast<const InvalidStepError*>(&e)) return kExitBadStep;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of the five-dimensional conformal domains of O(4,2)"};
  app.require_subcommand(1);
  // --h is a finite-difference step option, so help is long-form only.
  app.set_help_flag("--help", "print help");
  const std::string command_line = command_line_string(argc, argv);
  auto sub = [](CLI::App* s) {
    s->set_help_flag("--help", "print help");
    return s;
  };

  EmbedArgs embed_args;
  auto* cmd_embed = sub(app.add_subcommand("embed", "Embed a Minkowski point into the null cone"));
  cmd_embed->add_option("--x", embed_args.x, "Minkowski point x1,x2,x3,x4")->required();
  cmd_embed->add_option("--map", embed_args.map, "tau-plus | tau-minus");
  cmd_embed->add_option("--format", embed_args.format, "json | csv");
  cmd_embed->add_option("--out", embed_args.out, "output file (default stdout)");

  ChartArgs chart_args;
  auto* cmd_chart = sub(app.add_subcommand("chart", "Half-space chart conversions"));
  auto* to_ambient = sub(cmd_chart->add_subcommand("to-ambient", "chart point -> ambient vector"));
  to_ambient->add_option("--domain", chart_args.domain, "sigma-minus | sigma-plus");
  to_ambient->add_option("--x", chart_args.x, "x1,x2,x3,x4")->required();
  to_ambient->add_option("--lambda", chart_args.lambda, "lambda > 0")->required();
  to_ambient->add_option("--side", chart_args.side, "+1 | -1");
  to_ambient->add_option("--out", chart_args.out);
  auto* to_chart = sub(cmd_chart->add_subcommand("to-chart", "ambient vector -> chart point"));
  to_chart->add_option("--X", chart_args.X, "X1,...,X6 with Q = +-1")->required();
  to_chart->add_option("--out", chart_args.out);

  MetricArgs metric_args;
  auto* cmd_metric = sub(app.add_subcommand("metric", "Induced chart metric"));
  cmd_metric->add_option("--domain", metric_args.domain);
  cmd_metric->add_option("--lambda", metric_args.lambda)->required();
  cmd_metric->add_option("--x", metric_args.x);
  cmd_metric->add_flag("--numerical", metric_args.numerical,
                       "also compute the finite-difference metric");
  cmd_metric->add_option("--h", metric_args.h, "finite-difference step");
  cmd_metric->add_option("--out", metric_args.out);

  MetricArgs christoffel_args;
  auto* cmd_christoffel = sub(app.add_subcommand("christoffel", "Christoffel symbols"));
  cmd_christoffel->add_option("--domain", christoffel_args.domain);
  cmd_christoffel->add_option("--lambda", christoffel_args.lambda)->required();
  cmd_christoffel->add_option("--x", christoffel_args.x);
  cmd_christoffel->add_flag("--numerical", christoffel_args.numerical,
                            "cross-validate against the metric-derived symbols");
  cmd_christoffel->add_option("--h", christoffel_args.h);
  cmd_christoffel->add_option("--out", christoffel_args.out);

  GeodesicArgs geo_args;
  auto* cmd_geodesic = sub(app.add_subcommand("geodesic", "Integrate a geodesic"));
  cmd_geodesic->add_option("--param", geo_args.param, "affine | lambda");
  cmd_geodesic->add_option("--start", geo_args.start, "x1,x2,x3,x4")->required();
  cmd_geodesic->add_option("--lambda", geo_args.lambda, "initial lambda")->required();
  cmd_geodesic->add_option("--vel", geo_args.vel, "affine velocity v1,...,v4,vlambda");
  cmd_geodesic->add_option("--dir", geo_args.dir, "lambda-param direction dx1,...,dx4");
  cmd_geodesic->add_option("--lambda-end", geo_args.lambda_end, "target lambda (lambda param)");
  cmd_geodesic->add_option("--smax", geo_args.smax, "affine parameter range");
  cmd_geodesic->add_option("--h", geo_args.h, "step size");
  cmd_geodesic->add_option("--lambda-floor", geo_args.lambda_floor, "early-stop floor");
  cmd_geodesic->add_option("--domain", geo_args.domain);
  cmd_geodesic->add_option("--format", geo_args.format, "csv | json | svg");
  cmd_geodesic->add_option("--plane", geo_args.plane, "svg plane coordinate (x1..x4)");
  cmd_geodesic->add_flag("--check", geo_args.check, "append conservation/plane diagnostics");
  cmd_geodesic->add_option("--out", geo_args.out);

  FigureArgs fig_args;
  auto* cmd_figure = sub(app.add_subcommand("figure", "Geodesic family figures (SVG)"));
  cmd_figure->add_option("--n", fig_args.n, "figure number 1 | 2 | 3")->required();
  cmd_figure->add_option("--out", fig_args.out, "output SVG path")->required();
  cmd_figure->add_option("--params", fig_args.params, "family parameter sweep (comma list)");
  cmd_figure->add_option("--samples", fig_args.samples, "samples per curve");
  auto* oxmin = cmd_figure->add_option("--xmin", fig_args.xmin);
  auto* oxmax = cmd_figure->add_option("--xmax", fig_args.xmax);
  auto* olmax = cmd_figure->add_option("--lmax", fig_args.lmax);
  cmd_figure->add_option("--parallel", fig_args.parallel, "concurrent family members");

  VerifyArgs verify_args;
  auto* cmd_verify = sub(app.add_subcommand("verify", "Run the module property suites"));
  cmd_verify->add_option("--seed", verify_args.seed, "generator seed (default 42)");
  cmd_verify->add_option("--trials", verify_args.trials, "override per-property sample counts");
  cmd_verify->add_option("--parallel", verify_args.parallel, "concurrent properties");
  cmd_verify->add_flag("--mutate", verify_args.mutate,
                       "inject a sign defect (the suite must then fail)");
  cmd_verify->add_option("--format", verify_args.format, "text | json");

  TransformArgs tr_args;
  auto* cmd_transform = sub(app.add_subcommand("transform", "Apply an O(4,2) element"));
  cmd_transform->add_option("--gens", tr_args.gens,
                            "generator chain, e.g. 'dilate:0.3;translate:1,0,0,0'")
      ->required();
  cmd_transform->add_option("--x", tr_args.x, "Minkowski target point");
  cmd_transform->add_option("--X", tr_args.X, "ambient target point");
  cmd_transform->add_option("--chart-x", tr_args.chart_x, "chart target point x1,..,x4");
  cmd_transform->add_option("--lambda", tr_args.lambda, "chart target lambda");
  cmd_transform->add_option("--domain", tr_args.domain);
  cmd_transform->add_option("--side", tr_args.side);
  cmd_transform->add_flag("--print-matrix", tr_args.print_matrix, "include the 6x6 matrix");
  cmd_transform->add_option("--out", tr_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*cmd_embed) return run_embed(embed_args);
    if (*cmd_chart) {
      if (*to_ambient) return run_chart_to_ambient(chart_args);
      if (*to_chart) return run_chart_to_chart(chart_args);
      throw UsageError("chart needs a to-ambient or to-chart subcommand");
    }
    if (*cmd_metric) return run_metric(metric_args);
    if (*cmd_christoffel) return run_christoffel(christoffel_args);
    if (*cmd_geodesic) return run_geodesic(geo_args, command_line);
    if (*cmd_figure) {
      fig_args.have_xrange = oxmin->count() > 0 || oxmax->count() > 0;
      if (oxmin->count() == 0) fig_args.xmin = -fig_args.xmax;
      if (oxmax->count() == 0) fig_args.xmax = -fig_args.xmin;
      fig_args.have_lmax = olmax->count() > 0;
      return run_figure(fig_args, command_line);
    }
    if (*cmd_verify) return run_verify(verify_args);
    if (*cmd_transform) return run_transform(tr_args);
    throw UsageError("no subcommand given");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return map_exception(e);
  }
}
