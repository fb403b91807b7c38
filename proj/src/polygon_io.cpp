#include "billiards/polygon_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "billiards/csv.hpp"

namespace billiards {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream is(body);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double parse_double(const std::string& s, int line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "bad number '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s, int line) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "bad integer '" + s + "'");
  return v;
}

}  // namespace

Polygon parse_polygon(std::istream& in, const Tolerances& tol) {
  std::string name;
  bool sawHeader = false;
  std::vector<Point> vertices;
  std::map<std::int64_t, Fraction> specs;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto t = tokens(line);
    if (t.empty()) continue;
    if (t[0] == "polygon") {
      if (sawHeader) throw ParseError(lineNo, "second polygon header");
      if (t.size() != 2) throw ParseError(lineNo, "expected 'polygon <name>'");
      name = t[1];
      sawHeader = true;
    } else if (t[0] == "vertex") {
      if (!sawHeader) throw ParseError(lineNo, "vertex before polygon header");
      if (t.size() != 3) throw ParseError(lineNo, "expected 'vertex <x> <y>'");
      vertices.emplace_back(parse_double(t[1], lineNo), parse_double(t[2], lineNo));
    } else if (t[0] == "angle") {
      if (!sawHeader) throw ParseError(lineNo, "angle before polygon header");
      if (t.size() != 3) throw ParseError(lineNo, "expected 'angle <corner> <m>/<n>'");
      const std::int64_t corner = parse_int(t[1], lineNo);
      const auto slash = t[2].find('/');
      if (slash == std::string::npos) throw ParseError(lineNo, "expected fraction m/n");
      const std::int64_t m = parse_int(t[2].substr(0, slash), lineNo);
      const std::int64_t n = parse_int(t[2].substr(slash + 1), lineNo);
      if (n <= 0 || m <= 0) throw ParseError(lineNo, "angle fraction must be positive");
      if (specs.count(corner)) throw ParseError(lineNo, "corner declared twice");
      specs[corner] = Fraction{m, n};
    } else {
      throw ParseError(lineNo, "unknown directive '" + t[0] + "'");
    }
  }
  if (!sawHeader) throw ParseError(0, "missing 'polygon <name>' header");
  std::vector<std::optional<Fraction>> angleSpecs(vertices.size());
  for (const auto& [corner, f] : specs) {
    if (corner < 1 || corner > static_cast<std::int64_t>(vertices.size()))
      throw ParseError(0, "angle declared for nonexistent corner " + std::to_string(corner));
    angleSpecs[corner - 1] = f;
  }
  return validate_polygon(std::move(vertices), std::move(angleSpecs), name, tol);
}

Polygon parse_polygon_text(const std::string& text, const Tolerances& tol) {
  std::istringstream is(text);
  return parse_polygon(is, tol);
}

Polygon load_polygon(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open polygon file '" + path + "'");
  return parse_polygon(in, tol);
}

std::string format_polygon(const Polygon& p) {
  std::ostringstream os;
  os << "polygon " << (p.name().empty() ? "unnamed" : p.name()) << "\n";
  for (const Point& v : p.vertices()) os << "vertex " << fmt17(v.x()) << " " << fmt17(v.y()) << "\n";
  for (int i = 1; i <= p.size(); ++i)
    if (const auto& s = p.angle_spec(i)) os << "angle " << i << " " << s->num << "/" << s->den << "\n";
  return os.str();
}

}  // namespace billiards
