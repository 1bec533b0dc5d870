#include <doctest.h>

#include <random>

#include "gridcert/netmodel.hpp"
#include "support/fixtures.hpp"

using namespace gridcert;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("parse_network reads the minimal 2-bus document") {
  const auto net = parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}],
                                     "lines": [{"from": 0, "to": 1, "r": 1, "x": 0}]})");
  CHECK(net.load_count() == 1);
  CHECK(net.v0 == 1.0);
  REQUIRE(net.lines.size() == 1);
  CHECK(net.lines[0].r == 1.0);
}

TEST_CASE("parse_network reads the 3-bus chain with shunts and sorts buses") {
  const auto net = parse_network(R"({"v0": 1.05,
      "buses": [{"id": 2, "shunt_b": 0.2}, {"id": 0}, {"id": 1, "shunt_g": 0.01}],
      "lines": [{"from": 0, "to": 1, "r": 0.0734, "x": 0.2581},
                {"from": 1, "to": 2, "r": 0.0734, "x": 0.2581}]})");
  CHECK(net.load_count() == 2);
  CHECK(net.buses[2].id == 2);
  CHECK(net.buses[2].shunt == Complex(0.0, 0.2));
  CHECK(net.buses[1].shunt == Complex(0.01, 0.0));
}

TEST_CASE("parse_network rejects broken documents") {
  CHECK_THROWS_WITH_AS(parse_network(R"({"v0": 1, "buses": [{"id": 1}, {"id": 2}],
                                         "lines": [{"from": 1, "to": 2, "r": 1, "x": 0}]})"),
                       "no slack bus", ParseError);
  CHECK_THROWS_WITH_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}, {"id": 1}],
                                         "lines": [{"from": 0, "to": 1, "r": 1, "x": 0}]})"),
                       "duplicate bus id 1", ParseError);
  CHECK_THROWS_WITH_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}, {"id": 2}],
                                         "lines": [{"from": 0, "to": 1, "r": 1, "x": 0}]})"),
                       "network is disconnected", ParseError);
  CHECK_THROWS_AS(parse_network("{\"v0\": 1, \"buses\": ["), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"buses": [{"id": 0}, {"id": 1}]})"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"v0": -1, "buses": [{"id": 0}, {"id": 1}],
                                    "lines": [{"from": 0, "to": 1, "r": 1, "x": 0}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 2}],
                                    "lines": [{"from": 0, "to": 2, "r": 1, "x": 0}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}],
                                    "lines": [{"from": 1, "to": 1, "r": 1, "x": 0}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}]})"), ParseError);
}

TEST_CASE("z_override fixtures skip connectivity and honour the convention field") {
  const auto verbatim = parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}],
                                          "z_override": [[[2, 0.5]]]})");
  CHECK(impedance_matrix(verbatim).entries(0, 0) == Complex(2, 0.5));

  const auto flipped = parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}],
      "z_convention": "consumption", "z_override": [[[2, 0.5]]]})");
  CHECK(impedance_matrix(flipped).entries(0, 0) == Complex(-2, -0.5));

  CHECK_THROWS_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}, {"id": 2}],
                                    "z_override": [[[2, 0]]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"v0": 1, "buses": [{"id": 0}, {"id": 1}],
                                    "z_convention": "sideways", "z_override": [[[2, 0]]]})"),
                  ParseError);
}

TEST_CASE("build_admittance on a single resistive line") {
  const CMatrix y = build_admittance(testing::two_bus(1.0, 0.0));
  CMatrix expected(2, 2);
  expected << 1.0, -1.0, -1.0, 1.0;
  CHECK(max_abs(y - expected) == 0.0);
}

TEST_CASE("a capacitor shunt adds j*b to its diagonal entry") {
  auto net = testing::chain(2, 0.0734, 0.2581);
  const CMatrix plain = build_admittance(net);
  net.buses[2].shunt = Complex(0.0, 0.2);
  CMatrix with_shunt = build_admittance(net);
  CHECK(std::abs(with_shunt(2, 2) - plain(2, 2) - Complex(0.0, 0.2)) < 1e-15);
  with_shunt(2, 2) = plain(2, 2);
  CHECK(max_abs(with_shunt - plain) == 0.0);
}

TEST_CASE("build_admittance rejects a zero-impedance line") {
  CHECK_THROWS_AS(build_admittance(testing::two_bus(0.0, 0.0)), Error);
}

TEST_CASE("impedance_submatrix small cases") {
  SUBCASE("2-bus scalar inverse") {
    const auto z = impedance_submatrix(build_admittance(testing::two_bus(1.0, 0.0)));
    REQUIRE(z.size() == 1);
    CHECK(std::abs(z.entries(0, 0) - 1.0) < 1e-15);
    CHECK(z.bus_order == std::vector<int>{1});
  }
  SUBCASE("unit chain inverts [[2,-1],[-1,1]]") {
    const auto z = impedance_submatrix(build_admittance(testing::chain(2, 1.0, 0.0)));
    CMatrix expected(2, 2);
    expected << 1.0, 1.0, 1.0, 2.0;
    CHECK(max_abs(z.entries - expected) < 1e-14);
  }
  SUBCASE("3-bus reference passes through verbatim") {
    const auto z = impedance_fixture(testing::reference_three_bus_z());
    CHECK(z.entries(1, 1) == Complex(-64.0 / 203.0, 2.0 / 29.0));
    CHECK(z.bus_order == std::vector<int>{1, 2});
    CHECK_FALSE(z.admittance.has_value());
  }
}

TEST_CASE("impedance_submatrix rejects a singular load block") {
  // Shunt cancels the only line admittance: Y_LL = 1 + (-1) = 0.
  auto net = testing::two_bus(1.0, 0.0);
  net.buses[1].shunt = Complex(-1.0, 0.0);
  CHECK_THROWS_AS(impedance_submatrix(build_admittance(net)), Error);
}

TEST_CASE("property: Y is symmetric with row sums equal to shunts, and Z inverts Y_LL") {
  std::mt19937_64 rng(20141017);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    const auto net = testing::random_radial(rng, n, trial % 2 == 0);
    const CMatrix y = build_admittance(net);
    CHECK(max_abs(y - y.transpose()) == 0.0);
    for (Eigen::Index h = 0; h < y.rows(); ++h)
      CHECK(std::abs(y.row(h).sum() - net.buses[static_cast<std::size_t>(h)].shunt) < 1e-9);

    const auto z = impedance_submatrix(y);
    const CMatrix identity = CMatrix::Identity(n, n);
    CHECK(max_abs(z.entries * y.bottomRightCorner(n, n) - identity) < 1e-10);
  }
}

TEST_CASE("property: |Z_hk| is unchanged by flipping the injection sign convention") {
  std::mt19937_64 rng(7);
  const auto net = testing::random_radial(rng, 5, true);
  const auto z = impedance_matrix(net);
  const auto flipped = impedance_fixture(-z.entries);
  CHECK(max_abs(z.entries.cwiseAbs() - flipped.entries.cwiseAbs()) == 0.0);
}

TEST_CASE("load_network reports unreadable files") {
  CHECK_THROWS_AS(load_network("/nonexistent/network.json"), Error);
}
