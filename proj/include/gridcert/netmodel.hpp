#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "gridcert/types.hpp"

namespace gridcert {

struct Bus {
  int id = 0;            // 0 is the slack bus
  Complex shunt{0, 0};   // shunt_g + j*shunt_b, p.u.
};

struct Line {
  int from = 0;
  int to = 0;
  double r = 0.0;
  double x = 0.0;

  Complex impedance() const { return {r, x}; }
};

/// Radial or meshed network with one slack bus at fixed voltage `v0`.
///
/// Buses are stored sorted by id, so `buses[k].id == k`. When
/// `z_override` is set the network is a fixture: the impedance matrix is
/// taken verbatim and lines may be absent. `z_override` is always stored in
/// the injection convention; documents written with consumption-positive
/// currents ("z_convention": "consumption") are negated on parse.
struct Network {
  std::vector<Bus> buses;
  std::vector<Line> lines;
  double v0 = 1.0;
  std::optional<CMatrix> z_override;

  std::size_t load_count() const { return buses.empty() ? 0 : buses.size() - 1; }
};

/// Z = inverse of the load-bus block of the admittance matrix.
///
/// `bus_order[k]` is the bus id owning row/column k. `admittance` holds the
/// load-bus block Y_LL when Z was computed from a network; fixtures leave
/// it empty and residuals fall back to a linear solve against Z.
struct ImpedanceMatrix {
  CMatrix entries;
  std::vector<int> bus_order;
  std::optional<CMatrix> admittance;

  Eigen::Index size() const { return entries.rows(); }
  /// Row index of a load bus id, or -1 if the id is not a load bus.
  Eigen::Index index_of(int bus_id) const;
};

Network parse_network(std::string_view json_text);
Network load_network(const std::filesystem::path& path);

/// Throws ParseError naming the first broken invariant.
void validate(const Network& net);

/// Full (n+1)x(n+1) nodal admittance matrix, injection convention.
CMatrix build_admittance(const Network& net);

/// Removes the slack row/column of `y` and inverts the remainder by LU with
/// partial pivoting. Throws Error when the reciprocal condition estimate is
/// below 1e-12.
ImpedanceMatrix impedance_submatrix(const CMatrix& y);

/// Wraps a literal matrix as an impedance fixture for buses 1..n.
ImpedanceMatrix impedance_fixture(CMatrix z);

/// Z for a parsed network, honouring `z_override`.
ImpedanceMatrix impedance_matrix(const Network& net);

}  // namespace gridcert
