#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridcert/commands.hpp"
#include "gridcert/csv.hpp"

namespace fs = std::filesystem;
using gridcert::cli::run;

namespace {

const fs::path kData = GRIDCERT_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gridcert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gridcert_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string net(const char* name) { return (kData / name).string(); }

}  // namespace

TEST_CASE("check on the fixture certifies with the hull margin") {
  const auto r = invoke({"--network", net("three_bus_fixture.json"), "check", "--loads",
                         (kData / "loads_fixture.csv").string(), "--norm", "hull"});
  CHECK(r.code == 0);
  const auto table = gridcert::csv::parse(r.out);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == "hull");
  CHECK(gridcert::csv::to_double(table.rows[0][2]) == doctest::Approx(0.813766783415).epsilon(1e-11));
}

TEST_CASE("check with zero load reports maximal margins") {
  const auto loads = write("zero.csv", "bus_id,P,Q\n1,0,0\n2,0,0\n");
  const auto r = invoke({"--network", net("three_bus_fixture.json"), "check", "--loads", loads.string()});
  CHECK(r.code == 0);
  const auto table = gridcert::csv::parse(r.out);
  REQUIRE(table.rows.size() == 3);
  for (const auto& row : table.rows) CHECK(gridcert::csv::to_double(row[2]) == 1.0);
}

TEST_CASE("check exit code 1 when the requested criterion fails") {
  const auto loads = write("heavy.csv", "bus_id,P,Q\n1,0.26,0\n");
  const auto r = invoke({"--network", net("two_bus.json"), "check", "--loads", loads.string(), "--norm", "2"});
  CHECK(r.code == 1);
}

TEST_CASE("errors map to exit code 2") {
  CHECK(invoke({"--network", "/nonexistent.json", "rhombus"}).code == 2);
  CHECK(invoke({"--network", net("two_bus.json"), "check", "--loads", "/nonexistent.csv"}).code == 2);
  CHECK(invoke({"--network", net("two_bus.json"), "check"}).code == 2);
  CHECK(invoke({"--network", net("two_bus.json"), "frobnicate"}).code == 2);
  CHECK(invoke({"rhombus"}).code == 2);
  CHECK(invoke({"--network", net("two_bus.json"), "--svg", "rhombus"}).code == 2);
  CHECK(invoke({"--network", net("two_bus.json"), "--svg", "boundary", "--pattern",
                (kData / "two_bus_pattern.csv").string()})
            .code == 2);
}

TEST_CASE("solve reproduces the 2-bus voltage and reports non-convergence") {
  const auto loads = write("light.csv", "bus_id,P,Q\n1,0.1,0\n");
  const auto r = invoke({"--network", net("two_bus.json"), "solve", "--loads", loads.string()});
  REQUIRE(r.code == 0);
  const auto table = gridcert::csv::parse(r.out);
  CHECK(table.header == std::vector<std::string>{"bus_id", "v_re", "v_im", "v_mag", "i_re", "i_im"});
  CHECK(gridcert::csv::to_double(table.rows[0][3]) == doctest::Approx(0.887298334621).epsilon(1e-10));

  const auto zero = write("zero1.csv", "bus_id,P,Q\n1,0,0\n");
  const auto z = invoke({"--network", net("two_bus.json"), "solve", "--loads", zero.string()});
  CHECK(gridcert::csv::to_double(gridcert::csv::parse(z.out).rows[0][3]) == 1.0);

  const auto heavy = write("heavy1.csv", "bus_id,P,Q\n1,0.3,0\n");
  CHECK(invoke({"--network", net("two_bus.json"), "solve", "--loads", heavy.string()}).code == 1);
}

TEST_CASE("rhombus lists limits and 2n vertices") {
  const auto r = invoke({"--network", net("three_bus_fixture.json"), "rhombus"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1,1.75\n") != std::string::npos);
  CHECK(r.out.find("2,0.7746511") != std::string::npos);
  CHECK(r.out.find("3,0,-0.7746511") != std::string::npos);

  const auto two = invoke({"--network", net("two_bus.json"), "rhombus"});
  CHECK(two.out.find("1,0.25\n") != std::string::npos);

  const auto doubled = write("two_bus_v2.json", R"({"v0": 2, "buses": [{"id": 0}, {"id": 1}],
      "lines": [{"from": 0, "to": 1, "r": 1, "x": 0}]})");
  CHECK(invoke({"--network", doubled.string(), "rhombus"}).out.find("1,1\n") != std::string::npos);
}

TEST_CASE("boundary writes one row per method and ray, plus an SVG") {
  const auto out = scratch("boundary.csv");
  const auto r = invoke({"--network", net("two_bus.json"), "--out", out.string(), "--svg", "boundary",
                         "--pattern", (kData / "two_bus_pattern.csv").string(), "--rays", "4"});
  REQUIRE(r.code == 0);
  const auto table = gridcert::csv::read_file(out);
  CHECK(table.rows.size() == 16);
  CHECK(fs::exists(scratch("boundary.svg")));

  const auto two = invoke({"--network", net("two_bus.json"), "boundary", "--pattern",
                           (kData / "two_bus_pattern.csv").string(), "--rays", "2", "--methods", "oracle,hull"});
  const auto t = gridcert::csv::parse(two.out);
  REQUIRE(t.rows.size() == 4);
  CHECK(gridcert::csv::to_double(t.rows[0][1]) == doctest::Approx(0.25).epsilon(1e-5));
  CHECK(gridcert::csv::to_double(t.rows[1][1]) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(gridcert::csv::to_double(t.rows[2][1]) == doctest::Approx(0.25));
  CHECK(gridcert::csv::to_double(t.rows[3][1]) == doctest::Approx(0.25));
}

TEST_CASE("sweep emits one polyline per grid entry") {
  const auto r = invoke({"--network", net("three_bus_fixture.json"), "sweep", "--pattern",
                         (kData / "equal_pattern_2.csv").string(), "--rays", "5"});
  REQUIRE(r.code == 0);
  CHECK(gridcert::csv::parse(r.out).rows.size() == 64 * 5);

  const auto single = invoke({"--network", net("three_bus_fixture.json"), "sweep", "--pattern",
                              (kData / "equal_pattern_2.csv").string(), "--rays", "5", "--lambda-points", "1",
                              "--lambda-lo", "1", "--lambda-hi", "2"});
  CHECK(gridcert::csv::parse(single.out).rows.size() == 5);
  CHECK(invoke({"--network", net("three_bus_fixture.json"), "sweep", "--pattern",
                (kData / "equal_pattern_2.csv").string(), "--norm", "3"})
            .code == 2);
}

TEST_CASE("pvcurve overlays several reactive levels") {
  const auto r = invoke({"--network", net("two_bus.json"), "pvcurve", "--pattern",
                         (kData / "two_bus_pattern.csv").string(), "--q", "0", "--q", "0.05", "--points", "11"});
  REQUIRE(r.code == 0);
  const auto t = gridcert::csv::parse(r.out);
  CHECK(t.header == std::vector<std::string>{"q", "P", "v_mag"});
  CHECK(r.err.find("q=0 P_A=") != std::string::npos);
  CHECK(r.err.find("P_E=0.25") != std::string::npos);

  const auto ends = invoke({"--network", net("two_bus.json"), "pvcurve", "--pattern",
                            (kData / "two_bus_pattern.csv").string(), "--points", "2", "--p-max", "0.2"});
  CHECK(gridcert::csv::parse(ends.out).rows.size() == 2);
}

TEST_CASE("command output is byte-identical across runs") {
  for (int run_index = 0; run_index < 2; ++run_index) {
    const auto out = scratch("det_" + std::to_string(run_index) + ".csv");
    REQUIRE(invoke({"--network", net("three_bus_fixture.json"), "--out", out.string(), "--svg", "sweep",
                    "--pattern", (kData / "equal_pattern_2.csv").string()})
                .code == 0);
  }
  CHECK(slurp(scratch("det_0.csv")) == slurp(scratch("det_1.csv")));
  CHECK(slurp(scratch("det_0.svg")) == slurp(scratch("det_1.svg")));
}
