#include "billiards/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "billiards/coding.hpp"
#include "billiards/csv.hpp"
#include "billiards/diagonals.hpp"
#include "billiards/equivalence.hpp"
#include "billiards/polygon_io.hpp"
#include "billiards/surface.hpp"

namespace billiards::cli {

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw CLI::ValidationError("not a number: '" + std::string(s) + "'");
  return v;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct StartOptions {
  int side = 1;
  std::string pos;
  std::string theta;

  void add(CLI::App* app, const std::string& suffix = "", bool required = true) {
    auto* s = app->add_option("--side" + suffix, side, "Side index (1-based)");
    auto* p = app->add_option("--pos" + suffix, pos, "Arc length from the side's first corner, or frac:<t>");
    auto* t = app->add_option("--theta" + suffix, theta,
                              "Angle from the inward normal in radians, or deg:<x>");
    if (required) {
      s->required();
      p->required();
      t->required();
    }
  }
  bool given() const { return !pos.empty() || !theta.empty(); }
  PhasePoint phase_point(const Polygon& poly) const {
    if (side < 1 || side > poly.size()) throw DomainError("side index " + std::to_string(side) + " out of range");
    return {{side, parse_position(pos, poly.side_length(side))}, parse_angle(theta)};
  }
};

class Context {
 public:
  Context(std::vector<std::string> args, std::ostream& out) : args_(std::move(args)), out_(out) {}

  std::vector<std::string> header() const {
    std::string scenario;
    for (const auto& a : args_) scenario += (scenario.empty() ? "" : " ") + a;
    return {std::string("tool billiards-cli ") + kToolVersion, "scenario " + scenario};
  }

  std::string header_text() const {
    std::string s;
    for (const auto& h : header()) s += "# " + h + "\n";
    return s;
  }

  void emit(const std::string& path, const std::string& content) const {
    if (path.empty() || path == "-")
      out_ << content;
    else
      write_file_atomic(path, content);
  }

  void emit_table(const std::string& path, CsvTable t, const std::vector<std::string>& extra = {}) const {
    std::vector<std::string> comments = header();
    comments.insert(comments.end(), extra.begin(), extra.end());
    comments.insert(comments.end(), t.comments.begin(), t.comments.end());
    t.comments = std::move(comments);
    emit(path, t.to_string());
  }

 private:
  std::vector<std::string> args_;
  std::ostream& out_;
};

std::string termination_text(const Orbit& o) {
  if (!o.terminated) return "none";
  if (const auto* c = std::get_if<CornerHit>(&*o.terminated))
    return "corner " + std::to_string(c->corner) + (c->toleranceLimited ? " (within snap tolerance)" : "");
  return "tangency on side " + std::to_string(std::get<Tangency>(*o.terminated).side);
}

Eigen::Affine2d fit_affine(const Polygon& P, const Polygon& Q) {
  // Least-squares fit of x -> A x + b over corresponding vertices.
  const int k = P.size();
  Eigen::MatrixXd M(2 * k, 6);
  Eigen::VectorXd rhs(2 * k);
  M.setZero();
  for (int i = 0; i < k; ++i) {
    const Point& x = P.corner(i + 1);
    const Point& y = Q.corner(i + 1);
    M.row(2 * i) << x.x(), x.y(), 0, 0, 1, 0;
    M.row(2 * i + 1) << 0, 0, x.x(), x.y(), 0, 1;
    rhs(2 * i) = y.x();
    rhs(2 * i + 1) = y.y();
  }
  const Eigen::VectorXd c = M.colPivHouseholderQr().solve(rhs);
  Eigen::Affine2d map = Eigen::Affine2d::Identity();
  map.linear() << c(0), c(1), c(2), c(3);
  map.translation() << c(4), c(5);
  for (int i = 1; i <= k; ++i)
    if ((map * P.corner(i) - Q.corner(i)).norm() > 1e-9 * Q.diameter())
      throw DomainError("no affine map takes P onto Q with this labeling");
  return map;
}

Polygon relabel(const Polygon& Q, int rotation) {
  std::vector<Point> v;
  std::vector<std::optional<Fraction>> specs;
  for (int i = 1; i <= Q.size(); ++i) {
    v.push_back(Q.corner(i + rotation));
    specs.push_back(Q.angle_spec(i + rotation));
  }
  return validate_polygon(v, Q.has_angle_specs() ? specs : std::vector<std::optional<Fraction>>{}, Q.name());
}

struct PairSetup {
  LeaderPair lp;
  SimilarityVerdict verdict;
  bool transported = false;
};

PairSetup leader_pair(const std::string& pFile, const std::string& qFile, const StartOptions& s,
                      const StartOptions& s2) {
  const Polygon P = load_polygon(pFile);
  const Polygon Q0 = load_polygon(qFile);
  if (P.size() != Q0.size()) throw DomainError("polygons have different side counts");
  const SimilarityVerdict verdict = similarity_verdict(P, Q0);
  const PhasePoint u = s.phase_point(P);
  if (s2.given()) {
    const Polygon Q = relabel(Q0, verdict.rotation);
    return {LeaderPair{P, Q, u, s2.phase_point(Q), 0}, verdict, false};
  }
  if (verdict.kind != SimilarityVerdict::Kind::Similar && verdict.kind != SimilarityVerdict::Kind::AffinelySimilar)
    throw DomainError("no explicit conjugacy between the polygons; give --side2, --pos2 and --theta2");
  const Polygon Q = relabel(Q0, verdict.rotation);
  const PhasePoint v = transport(Q, fit_affine(P, Q), P, u);
  return {LeaderPair{P, Q, u, v, 0}, verdict, true};
}

std::string witness_text(const OrderComparison& c) {
  if (!c.witness) return "none";
  const auto& w = *c.witness;
  return std::to_string(w[0]) + "-" + std::to_string(w[1]) + "-" + std::to_string(w[2]);
}

std::string svg_plot(const Polygon& p, const Orbit& o) {
  double minX = p.corner(1).x(), maxX = minX, minY = p.corner(1).y(), maxY = minY;
  for (const Point& v : p.vertices()) {
    minX = std::min(minX, v.x());
    maxX = std::max(maxX, v.x());
    minY = std::min(minY, v.y());
    maxY = std::max(maxY, v.y());
  }
  const double size = 600.0, margin = 20.0;
  const double scale = (size - 2 * margin) / std::max(maxX - minX, maxY - minY);
  auto px = [&](const Point& x) {
    return fmt17(margin + (x.x() - minX) * scale) + "," + fmt17(size - margin - (x.y() - minY) * scale);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) os << (i ? " " : "") << px(p.vertices()[i]);
  os << "\"/>\n";
  std::vector<Point> pts;
  for (const PhasePoint& x : o.points) pts.push_back(boundary_to_plane(p, x.base));
  if (o.terminated)
    if (const auto* c = std::get_if<CornerHit>(&*o.terminated)) pts.push_back(c->where);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"" << px(pts[i]) << " "
       << px(pts[i + 1]) << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace

double parse_angle(const std::string& text) {
  if (starts_with(text, "deg:")) return parse_number(std::string_view(text).substr(4)) * std::numbers::pi / 180.0;
  return parse_number(text);
}

double parse_position(const std::string& text, double sideLength) {
  if (starts_with(text, "frac:")) return parse_number(std::string_view(text).substr(5)) * sideLength;
  return parse_number(text);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polygonal billiards: orbits, codes, rational surfaces, diagonals, equivalence"};
  app.name("billiards-cli");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Context ctx(args, out);
  std::string polygon, polygon2, outPath;
  StartOptions start, start2;
  std::size_t steps = 100;
  std::function<void()> action;

  auto add_polygon = [&](CLI::App* sub) {
    sub->add_option("--polygon", polygon, "Polygon file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", outPath, "Output file (default: standard output)");
  };

  auto* validate = app.add_subcommand("validate", "Check a polygon file");
  add_polygon(validate);
  validate->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      std::ostringstream os;
      os << ctx.header_text() << "valid " << (p.name().empty() ? "unnamed" : p.name()) << "\n"
         << "sides " << p.size() << "\n"
         << "perimeter " << fmt17(p.perimeter()) << "\n"
         << "diameter " << fmt17(p.diameter()) << "\n";
      ctx.emit(outPath, os.str());
    };
  });

  std::int64_t maxDen = 100;
  auto* classify = app.add_subcommand("classify", "Decide whether the corner angles are rational multiples of pi");
  add_polygon(classify);
  classify->add_option("--max-denominator", maxDen, "Largest denominator tried")->check(CLI::PositiveNumber);
  classify->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      const AngleClass c = classify_rationality(p, maxDen);
      CsvTable t;
      t.header = {"corner", "angle", "m", "n"};
      for (int i = 1; i <= p.size(); ++i) {
        const bool have = c.kind == AngleClass::Kind::Rational;
        t.rows.push_back({std::to_string(i), fmt17(p.angle(i)),
                          have ? std::to_string(c.fractions[i - 1].num) : "",
                          have ? std::to_string(c.fractions[i - 1].den) : ""});
      }
      ctx.emit_table(outPath, t, {std::string("kind ") + to_string(c.kind), "N " + std::to_string(c.N)});
    };
  });

  auto* orbit = app.add_subcommand("orbit", "Iterate the billiard map");
  add_polygon(orbit);
  start.add(orbit);
  orbit->add_option("--steps", steps, "Number of bounces");
  orbit->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      const Orbit o = iterate(p, start.phase_point(p), steps);
      CsvTable t;
      t.header = {"n", "sideIndex", "position", "theta", "planeDirection", "x", "y"};
      for (std::size_t i = 0; i < o.points.size(); ++i) {
        const PhasePoint& x = o.points[i];
        const Point q = boundary_to_plane(p, x.base);
        t.rows.push_back({std::to_string(i), std::to_string(x.base.side), fmt17(x.base.position), fmt17(x.theta),
                          fmt17(o.planeDirections[i]), fmt17(q.x()), fmt17(q.y())});
      }
      ctx.emit_table(outPath, t, {"terminated " + termination_text(o)});
    };
  });

  auto* code = app.add_subcommand("code", "Forward side itinerary");
  add_polygon(code);
  start.add(code);
  code->add_option("--steps", steps, "Number of symbols");
  code->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      const Orbit o = iterate(p, start.phase_point(p), steps == 0 ? 0 : steps - 1);
      const Code c = code_of(o);
      CsvTable t;
      t.header = {"n", "symbol"};
      for (std::size_t i = 0; i < c.size(); ++i) t.rows.push_back({std::to_string(i), std::to_string(c.symbols[i])});
      ctx.emit_table(outPath, t, {"complete " + yes_no(c.complete && c.size() == steps)});
    };
  });

  std::vector<std::size_t> ms{1, 10, 100, 1000};
  auto* eps = app.add_subcommand("epsilon", "Size of the prefix cells around a start");
  add_polygon(eps);
  start.add(eps);
  eps->add_option("--m", ms, "Prefix lengths, comma separated")->delimiter(',');
  eps->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      std::sort(ms.begin(), ms.end());
      const auto profile = epsilon_profile(p, start.phase_point(p), ms);
      CsvTable t;
      t.header = {"m", "eps1", "eps2", "eps"};
      for (const auto& r : profile) t.rows.push_back({std::to_string(r.m), fmt17(r.eps1), fmt17(r.eps2), fmt17(r.eps)});
      ctx.emit_table(outPath, t);
    };
  });

  int maxSegments = 4;
  auto* diag = app.add_subcommand("diagonals", "Enumerate generalized diagonals");
  add_polygon(diag);
  diag->add_option("--max-segments", maxSegments, "Largest number of segments")->check(CLI::PositiveNumber);
  diag->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      CsvTable t;
      t.header = {"startCorner", "endCorner", "segments", "direction", "length", "codeWord"};
      for (const auto& g : enumerate_diagonals(p, maxSegments))
        t.rows.push_back({std::to_string(g.startCorner), std::to_string(g.endCorner),
                          std::to_string(g.combinatorialLength), fmt17(g.planeDirection), fmt17(g.euclideanLength),
                          format_code_word(g.codeWord)});
      ctx.emit_table(outPath, t);
    };
  });

  auto* surface = app.add_subcommand("surface", "Glue the flat surface of a rational polygon");
  add_polygon(surface);
  surface->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      ctx.emit(outPath, ctx.header_text() + format_surface(p, build_surface(p)));
    };
  });

  std::string direction;
  auto* skel = app.add_subcommand("skeleton", "Skeleton edges and their mu-lengths for a plane direction");
  add_polygon(skel);
  skel->add_option("--direction", direction, "Plane direction in radians, or deg:<x>")->required();
  skel->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      const DirectionOrbit d = direction_orbit(p, parse_angle(direction));
      const Skeleton sk = skeleton(p, d);
      CsvTable t;
      t.header = {"side", "angleIndex", "partnerIndex", "direction", "muLength", "zeroMeasure"};
      for (const auto& e : sk.edges)
        t.rows.push_back({std::to_string(e.side), std::to_string(e.angleIndex), std::to_string(e.partnerIndex),
                          fmt17(e.direction), fmt17(e.muLength), yes_no(e.zeroMeasure)});
      ctx.emit_table(outPath, t,
                     {"orbit size " + std::to_string(d.size()), "stabilizer " + std::to_string(d.stabilizer),
                      "total mu " + fmt17(sk.totalMu)});
    };
  });

  std::size_t bins = 20;
  auto* birk = app.add_subcommand("birkhoff", "Empirical hit frequencies against the skeleton measure");
  add_polygon(birk);
  start.add(birk);
  birk->add_option("--steps", steps, "Number of bounces");
  birk->add_option("--bins", bins, "Histogram bins per side")->check(CLI::PositiveNumber);
  birk->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      const BirkhoffReport r = birkhoff_side_distribution(p, start.phase_point(p), steps, bins);
      CsvTable t;
      t.header = {"record", "side", "edge", "direction", "count", "frequency", "muShare", "discrepancy"};
      for (const auto& c : r.classes)
        t.rows.push_back({"class", std::to_string(c.side), std::to_string(c.edge),
                          fmt17(r.skeleton.edges[c.edge].direction), std::to_string(c.count), fmt17(c.frequency),
                          fmt17(c.muShare), ""});
      for (int j = 1; j <= p.size(); ++j)
        t.rows.push_back({"side", std::to_string(j), "", "", std::to_string(r.sideHits[j - 1]),
                          fmt17(r.hits ? static_cast<double>(r.sideHits[j - 1]) / static_cast<double>(r.hits) : 0.0),
                          "", fmt17(r.discrepancy[j - 1])});
      ctx.emit_table(outPath, t, {"hits " + std::to_string(r.hits), "unmatched " + std::to_string(r.unmatched)});
    };
  });

  std::size_t orderPoints = 1000;
  auto add_pair = [&](CLI::App* sub) {
    add_polygon(sub);
    sub->add_option("--polygon2", polygon2, "Second polygon file")->required()->check(CLI::ExistingFile);
    start.add(sub);
    start2.add(sub, "2", false);
  };

  auto* equiv = app.add_subcommand("equiv", "Compare codes, orders and shapes of two billiards");
  add_pair(equiv);
  equiv->add_option("--steps", steps, "Code horizon");
  equiv->add_option("--order-points", orderPoints, "Points used for the order comparison");
  equiv->callback([&] {
    action = [&] {
      const PairSetup s = leader_pair(polygon, polygon2, start, start2);
      CsvTable t;
      t.header = {"metric", "value"};
      t.rows.push_back({"similarity", to_string(s.verdict.kind)});
      t.rows.push_back({"rotation", std::to_string(s.verdict.rotation)});
      t.rows.push_back({"a", fmt17(s.verdict.a)});
      t.rows.push_back({"b", fmt17(s.verdict.b)});
      t.rows.push_back({"witness", std::to_string(s.verdict.witness)});
      t.rows.push_back({"leaderFromConjugacy", yes_no(s.transported)});
      const auto sep = codes_agree(s.lp, steps);
      t.rows.push_back({"codeHorizon", std::to_string(steps)});
      t.rows.push_back({"separation", sep ? std::to_string(*sep) : "none"});
      const OrderComparison oc = order_agree(s.lp, orderPoints);
      t.rows.push_back({"orderAgree", yes_no(oc.same)});
      t.rows.push_back({"orderWitness", witness_text(oc)});
      if (!sep) {
        const GSample g = g_function(s.lp, s.lp.u.base.side, plane_angle(direction_of(s.lp.P, s.lp.u)), steps);
        t.rows.push_back({"gSpread", fmt17(g.maxSpread)});
      }
      ctx.emit_table(outPath, t);
    };
  });

  auto* order = app.add_subcommand("order", "Compare the circular order of two orbits' boundary points");
  add_pair(order);
  order->add_option("--points", orderPoints, "Number of points");
  order->callback([&] {
    action = [&] {
      const PairSetup s = leader_pair(polygon, polygon2, start, start2);
      const OrderComparison oc = order_agree(s.lp, orderPoints);
      CsvTable t;
      t.header = {"metric", "value"};
      t.rows.push_back({"points", std::to_string(orderPoints)});
      t.rows.push_back({"orderAgree", yes_no(oc.same)});
      t.rows.push_back({"witness", witness_text(oc)});
      ctx.emit_table(outPath, t);
    };
  });

  auto* plot = app.add_subcommand("plot", "Draw the polygon and an orbit as SVG");
  add_polygon(plot);
  start.add(plot);
  plot->add_option("--steps", steps, "Number of bounces");
  plot->callback([&] {
    action = [&] {
      const Polygon p = load_polygon(polygon);
      const Orbit o = iterate(p, start.phase_point(p), steps);
      std::string svg = svg_plot(p, o);
      std::string comment = "<!--";
      for (const auto& h : ctx.header()) comment += " " + h + ";";
      svg.insert(svg.find('\n') + 1, comment + " -->\n");
      ctx.emit(outPath, svg);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    err << "invalid polygon (" << to_string(e.defect()) << "): " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace billiards::cli
