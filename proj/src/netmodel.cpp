#include "gridcert/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gridcert {

using json = nlohmann::json;

std::string to_string(Norm norm) { return norm == Norm::two ? "2" : "inf"; }

Eigen::Index ImpedanceMatrix::index_of(int bus_id) const {
  auto it = std::find(bus_order.begin(), bus_order.end(), bus_id);
  return it == bus_order.end() ? -1 : static_cast<Eigen::Index>(it - bus_order.begin());
}

namespace {

double number_field(const json& obj, const char* key, std::optional<double> fallback = {}) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ParseError(std::string("missing field '") + key + "'");
  }
  if (!it->is_number()) throw ParseError(std::string("field '") + key + "' is not a number");
  return it->get<double>();
}

int int_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  if (!it->is_number_integer()) throw ParseError(std::string("field '") + key + "' is not an integer");
  return it->get<int>();
}

CMatrix parse_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ParseError("z_override must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix z(n, n);
  for (Eigen::Index h = 0; h < n; ++h) {
    const auto& row = rows[static_cast<std::size_t>(h)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError("z_override must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& entry = row[static_cast<std::size_t>(k)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw ParseError("z_override entries must be [re, im] pairs");
      z(h, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (!z.allFinite()) throw ParseError("z_override has non-finite entries");
  return z;
}

bool connected(const Network& net) {
  const auto count = net.buses.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& line : net.lines)
    parent[find(static_cast<std::size_t>(line.from))] = find(static_cast<std::size_t>(line.to));
  const auto root = find(0);
  for (std::size_t b = 1; b < count; ++b)
    if (find(b) != root) return false;
  return true;
}

}  // namespace

void validate(const Network& net) {
  if (!(net.v0 > 0.0) || !std::isfinite(net.v0)) throw ParseError("v0 must be positive");
  std::set<int> ids;
  for (const auto& bus : net.buses) {
    if (!ids.insert(bus.id).second) throw ParseError("duplicate bus id " + std::to_string(bus.id));
    if (!std::isfinite(bus.shunt.real()) || !std::isfinite(bus.shunt.imag()))
      throw ParseError("bus " + std::to_string(bus.id) + " has a non-finite shunt");
  }
  if (!ids.contains(0)) throw ParseError("no slack bus");
  if (*ids.begin() != 0 || *ids.rbegin() != static_cast<int>(ids.size()) - 1)
    throw ParseError("bus ids must be contiguous from 0");
  if (net.load_count() < 1) throw ParseError("network has no load buses");
  for (std::size_t b = 0; b < net.buses.size(); ++b)
    if (net.buses[b].id != static_cast<int>(b)) throw ParseError("buses must be sorted by id");

  const int last = static_cast<int>(net.buses.size()) - 1;
  for (const auto& line : net.lines) {
    if (line.from < 0 || line.from > last || line.to < 0 || line.to > last)
      throw ParseError("line " + std::to_string(line.from) + "-" + std::to_string(line.to) +
                       " references an unknown bus");
    if (line.from == line.to) throw ParseError("line endpoints must differ");
    if (!std::isfinite(line.r) || !std::isfinite(line.x))
      throw ParseError("line impedance must be finite");
  }
  if (net.z_override) {
    const auto n = static_cast<Eigen::Index>(net.load_count());
    if (net.z_override->rows() != n || net.z_override->cols() != n)
      throw ParseError("z_override dimension does not match the load bus count");
    return;
  }
  if (!connected(net)) throw ParseError("network is disconnected");
}

Network parse_network(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed network document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("network document must be a JSON object");

  Network net;
  net.v0 = number_field(doc, "v0");

  const auto buses = doc.find("buses");
  if (buses == doc.end() || !buses->is_array()) throw ParseError("missing 'buses' array");
  for (const auto& b : *buses) {
    if (!b.is_object()) throw ParseError("bus entries must be objects");
    Bus bus;
    bus.id = int_field(b, "id");
    bus.shunt = Complex(number_field(b, "shunt_g", 0.0), number_field(b, "shunt_b", 0.0));
    net.buses.push_back(bus);
  }
  std::stable_sort(net.buses.begin(), net.buses.end(),
                   [](const Bus& a, const Bus& b) { return a.id < b.id; });

  if (auto lines = doc.find("lines"); lines != doc.end()) {
    if (!lines->is_array()) throw ParseError("'lines' must be an array");
    for (const auto& l : *lines) {
      if (!l.is_object()) throw ParseError("line entries must be objects");
      net.lines.push_back(Line{int_field(l, "from"), int_field(l, "to"), number_field(l, "r"),
                               number_field(l, "x")});
    }
  }
  if (auto z = doc.find("z_override"); z != doc.end() && !z->is_null()) {
    net.z_override = parse_matrix(*z);
    std::string convention = "injection";
    if (auto c = doc.find("z_convention"); c != doc.end()) {
      if (!c->is_string()) throw ParseError("'z_convention' must be a string");
      convention = c->get<std::string>();
    }
    if (convention == "consumption") {
      *net.z_override = -*net.z_override;
    } else if (convention != "injection") {
      throw ParseError("'z_convention' must be \"injection\" or \"consumption\"");
    }
  }

  validate(net);
  return net;
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open network file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_network(text.str());
}

CMatrix build_admittance(const Network& net) {
  const auto size = static_cast<Eigen::Index>(net.buses.size());
  CMatrix y = CMatrix::Zero(size, size);
  for (const auto& bus : net.buses) y(bus.id, bus.id) += bus.shunt;
  for (const auto& line : net.lines) {
    if (line.r == 0.0 && line.x == 0.0)
      throw Error("line " + std::to_string(line.from) + "-" + std::to_string(line.to) +
                  " has zero impedance");
    const Complex g = 1.0 / line.impedance();
    y(line.from, line.from) += g;
    y(line.to, line.to) += g;
    y(line.from, line.to) -= g;
    y(line.to, line.from) -= g;
  }
  return y;
}

ImpedanceMatrix impedance_submatrix(const CMatrix& y) {
  if (y.rows() != y.cols() || y.rows() < 2)
    throw DimensionError("admittance matrix must be square with at least one load bus");
  const auto n = y.rows() - 1;
  CMatrix yll = y.bottomRightCorner(n, n);
  Eigen::PartialPivLU<CMatrix> lu(yll);
  const double rcond = lu.rcond();
  if (!(rcond >= 1e-12)) throw Error("load-bus admittance block is numerically singular");

  ImpedanceMatrix z;
  z.entries = lu.inverse();
  z.bus_order.resize(static_cast<std::size_t>(n));
  std::iota(z.bus_order.begin(), z.bus_order.end(), 1);
  z.admittance = std::move(yll);
  return z;
}

ImpedanceMatrix impedance_fixture(CMatrix z) {
  if (z.rows() != z.cols() || z.rows() == 0) throw DimensionError("impedance fixture must be square");
  if (!z.allFinite()) throw Error("impedance fixture has non-finite entries");
  ImpedanceMatrix out;
  out.bus_order.resize(static_cast<std::size_t>(z.rows()));
  std::iota(out.bus_order.begin(), out.bus_order.end(), 1);
  out.entries = std::move(z);
  return out;
}

ImpedanceMatrix impedance_matrix(const Network& net) {
  if (net.z_override) return impedance_fixture(*net.z_override);
  return impedance_submatrix(build_admittance(net));
}

}  // namespace gridcert
