#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "billiards/cli.hpp"
#include "billiards/csv.hpp"

using namespace billiards;
namespace fs = std::filesystem;

namespace {
const std::string kData = BILLIARDS_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string poly(const std::string& name) { return kData + "/" + name + ".poly"; }

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("billiards-cli-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}
}  // namespace

TEST_CASE("validate reports the shape") {
  const Result r = run({"validate", "--polygon", poly("square")});
  CHECK(r.code == 0);
  CHECK(r.out.find("# tool billiards-cli 0.1.0\n") == 0);
  CHECK(r.out.find("# scenario validate --polygon ") != std::string::npos);
  CHECK(r.out.find("valid square\n") != std::string::npos);
  CHECK(r.out.find("sides 4\n") != std::string::npos);
  CHECK(r.out.find("perimeter 4\n") != std::string::npos);
}

TEST_CASE("orbit of the diamond") {
  const Result r =
      run({"orbit", "--polygon", poly("square"), "--side", "1", "--pos", "0.5", "--theta", "deg:45", "--steps", "4"});
  REQUIRE(r.code == 0);
  const CsvTable t = CsvTable::parse(r.out);
  CHECK(t.header == std::vector<std::string>{"n", "sideIndex", "position", "theta", "planeDirection", "x", "y"});
  REQUIRE(t.rows.size() == 5);
  const std::size_t side = t.column("sideIndex");
  std::vector<std::string> sides;
  for (const auto& row : t.rows) sides.push_back(row[side]);
  CHECK(sides == std::vector<std::string>{"1", "2", "3", "4", "1"});
  CHECK(std::stod(t.rows[2][t.column("position")]) == doctest::Approx(0.5));
}

TEST_CASE("code, epsilon and classify tables") {
  const Result c =
      run({"code", "--polygon", poly("square"), "--side", "1", "--pos", "frac:0.5", "--theta", "deg:45", "--steps", "5"});
  REQUIRE(c.code == 0);
  const CsvTable ct = CsvTable::parse(c.out);
  std::vector<std::string> symbols;
  for (const auto& row : ct.rows) symbols.push_back(row[ct.column("symbol")]);
  CHECK(symbols == std::vector<std::string>{"1", "2", "3", "4", "1"});

  const Result e = run({"epsilon", "--polygon", poly("square"), "--side", "1", "--pos", "0.3", "--theta", "0.55",
                        "--m", "10,100"});
  REQUIRE(e.code == 0);
  const CsvTable et = CsvTable::parse(e.out);
  REQUIRE(et.rows.size() == 2);
  CHECK(std::stod(et.rows[1][et.column("eps")]) <= std::stod(et.rows[0][et.column("eps")]));

  const Result k = run({"classify", "--polygon", poly("right_triangle_pi8")});
  REQUIRE(k.code == 0);
  CHECK(k.out.find("# N 8") != std::string::npos);
  const CsvTable kt = CsvTable::parse(k.out);
  CHECK(kt.rows[2][kt.column("m")] == "3");
  CHECK(kt.rows[2][kt.column("n")] == "8");
}

TEST_CASE("surface and diagonals") {
  const Result s = run({"surface", "--polygon", poly("square")});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("copies 4\n") != std::string::npos);
  CHECK(s.out.find("genus 1\n") != std::string::npos);

  const Result l = run({"surface", "--polygon", poly("l_shape")});
  CHECK(l.out.find("genus 2\n") != std::string::npos);

  const Result d = run({"diagonals", "--polygon", poly("square"), "--max-segments", "2"});
  REQUIRE(d.code == 0);
  const CsvTable dt = CsvTable::parse(d.out);
  CHECK(dt.rows.size() == 12);
  CHECK(dt.header.back() == "codeWord");
}

TEST_CASE("skeleton and birkhoff") {
  const Result k = run({"skeleton", "--polygon", poly("square"), "--direction", "deg:45"});
  REQUIRE(k.code == 0);
  CHECK(CsvTable::parse(k.out).rows.size() == 8);

  const Result b = run({"birkhoff", "--polygon", poly("square"), "--side", "1", "--pos", "0.3", "--theta", "0.55",
                        "--steps", "20000"});
  REQUIRE(b.code == 0);
  CHECK_FALSE(CsvTable::parse(b.out).rows.empty());
}

TEST_CASE("equiv and order on the square and the 2x3 rectangle") {
  const Result r = run({"equiv", "--polygon", poly("square"), "--polygon2", poly("rectangle_2x3"), "--side", "1",
                        "--pos", "0.3", "--theta", "0.55", "--steps", "2000"});
  REQUIRE(r.code == 0);
  const CsvTable t = CsvTable::parse(r.out);
  std::map<std::string, std::string> kv;
  for (const auto& row : t.rows) kv[row[0]] = row[1];
  CHECK(kv["similarity"] == "affinelySimilar");
  CHECK(kv["a"] == "2");
  CHECK(kv["b"] == "3");
  CHECK(kv["separation"] == "none");
  CHECK(kv["orderAgree"] == "true");

  const Result o = run({"order", "--polygon", poly("square"), "--polygon2", poly("square"), "--side", "1", "--pos",
                        "0.3", "--theta", "0.55", "--side2", "1", "--pos2", "0.3", "--theta2", "0.56", "--points",
                        "2000"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("false") != std::string::npos);

  const Result bad = run({"equiv", "--polygon", poly("square"), "--polygon2", poly("equilateral"), "--side", "1",
                          "--pos", "0.3", "--theta", "0.55"});
  CHECK(bad.code == 1);
}

TEST_CASE("plot draws one polyline per segment") {
  const Result r =
      run({"plot", "--polygon", poly("square"), "--side", "1", "--pos", "0.3", "--theta", "0.5", "--steps", "7"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("<svg") == 0);
  CHECK(r.out.find("<!-- tool billiards-cli 0.1.0;") != std::string::npos);
  CHECK(count_of(r.out, "<polyline") == 7);
  CHECK(count_of(r.out, "<polygon") == 1);
}

TEST_CASE("exit codes") {
  const Result cw = run({"validate", "--polygon", poly("clockwise")});
  CHECK(cw.code == 1);
  CHECK(cw.err.find("clockwise") != std::string::npos);

  CHECK(run({"orbit", "--polygon", poly("square")}).code == 2);
  CHECK(run({"validate", "--polygon", kData + "/missing.poly"}).code == 2);
  CHECK(run({"orbit", "--polygon", poly("square"), "--side", "1", "--pos", "0.5", "--theta", "abc"}).code == 2);
  CHECK(run({"orbit", "--polygon", poly("square"), "--side", "9", "--pos", "0.5", "--theta", "0"}).code == 1);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);

  const Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("orbit") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("unparseable polygon files are reported") {
  const fs::path d = scratch_dir("parse");
  std::ofstream(d / "bad.poly") << "polygon bad\nvertex 0 zero\n";
  const Result r = run({"validate", "--polygon", (d / "bad.poly").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("parse error") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::string> args{"orbit", "--polygon", poly("l_shape"), "--side", "1",
                                      "--pos",  "0.3",       "--theta", "0.4", "--steps", "500"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> diag{"diagonals", "--polygon", poly("l_shape"), "--max-segments", "4"};
  CHECK(run(diag).out == run(diag).out);
}

TEST_CASE("--out writes the same bytes to a file and leaves nothing else") {
  const fs::path d = scratch_dir("out");
  const fs::path target = d / "orbit.csv";
  std::vector<std::string> args{"orbit", "--polygon", poly("square"), "--side", "1",
                                "--pos",  "0.3",       "--theta", "0.5", "--steps", "20"};
  const Result stdoutRun = run(args);
  args.insert(args.end(), {"--out", target.string()});
  const Result fileRun = run(args);
  REQUIRE(fileRun.code == 0);
  CHECK(fileRun.out.empty());
  std::ifstream in(target);
  std::stringstream content;
  content << in.rdbuf();
  // Only the scenario line differs: it records the extra arguments.
  const auto body = [](const std::string& s) { return s.substr(s.find("# terminated")); };
  CHECK(body(content.str()) == body(stdoutRun.out));
  CHECK(std::distance(fs::directory_iterator(d), fs::directory_iterator()) == 1);
  fs::remove_all(d);
}

TEST_CASE("angle and position parsing") {
  CHECK(cli::parse_angle("deg:90") == doctest::Approx(std::numbers::pi / 2));
  CHECK(cli::parse_angle("-0.25") == -0.25);
  CHECK(cli::parse_position("frac:0.25", 4.0) == 1.0);
  CHECK(cli::parse_position("1.5", 4.0) == 1.5);
  CHECK_THROWS(cli::parse_angle("deg:"));
  CHECK_THROWS(cli::parse_angle("1.0x"));
  CHECK_THROWS(cli::parse_position("frac:nan", 1.0));
}
