#include "gridcert/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gridcert::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) return c;
  throw ParseError("missing CSV column '" + std::string(name) + "'");
}

Table parse(std::string_view text) {
  Table table;
  bool have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      throw ParseError("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw ParseError("CSV document has no header");
  return table;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CSV file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

double to_double(std::string_view field) {
  field = trim(field);
  if (field == "inf") return INFINITY;
  if (field == "-inf") return -INFINITY;
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("not a number: '" + std::string(field) + "'");
  return value;
}

}  // namespace gridcert::csv

namespace gridcert {

namespace {

Eigen::Index bus_row(const csv::Table& table, const std::vector<std::string>& row,
                     const ImpedanceMatrix& z, std::set<int>& seen) {
  const double raw = csv::to_double(row[table.column("bus_id")]);
  const int id = static_cast<int>(raw);
  if (static_cast<double>(id) != raw) throw ParseError("bus_id must be an integer");
  const auto k = z.index_of(id);
  if (k < 0) throw ParseError("bus " + std::to_string(id) + " is not a load bus");
  if (!seen.insert(id).second) throw ParseError("bus " + std::to_string(id) + " listed twice");
  return k;
}

}  // namespace

LoadVector read_loads(const csv::Table& table, const ImpedanceMatrix& z) {
  RVector p = RVector::Zero(z.size());
  RVector q = RVector::Zero(z.size());
  std::set<int> seen;
  const auto pc = table.column("P");
  const auto qc = table.column("Q");
  for (const auto& row : table.rows) {
    const auto k = bus_row(table, row, z, seen);
    p[k] = csv::to_double(row[pc]);
    q[k] = csv::to_double(row[qc]);
  }
  if (!p.allFinite() || !q.allFinite()) throw ParseError("loads must be finite");
  return LoadVector::from_consumption(p, q);
}

LoadPattern read_pattern(const csv::Table& table, const ImpedanceMatrix& z) {
  RVector p = RVector::Zero(z.size());
  RVector q = RVector::Zero(z.size());
  std::set<int> seen;
  const auto pc = table.column("weight_p");
  const auto qc = table.column("weight_q");
  for (const auto& row : table.rows) {
    const auto k = bus_row(table, row, z, seen);
    p[k] = csv::to_double(row[pc]);
    q[k] = csv::to_double(row[qc]);
  }
  return LoadPattern(std::move(p), std::move(q));
}

std::string solution_csv(const PFSolution& sol, const ImpedanceMatrix& z) {
  std::string out = "bus_id,v_re,v_im,v_mag,i_re,i_im\n";
  for (Eigen::Index k = 0; k < sol.v.size(); ++k) {
    out += std::to_string(z.bus_order.at(static_cast<std::size_t>(k))) + ',' +
           csv::format(sol.v[k].real()) + ',' + csv::format(sol.v[k].imag()) + ',' +
           csv::format(std::abs(sol.v[k])) + ',' + csv::format(sol.i[k].real()) + ',' +
           csv::format(sol.i[k].imag()) + '\n';
  }
  return out;
}

std::string boundary_csv(const std::vector<BoundarySample>& samples) {
  std::string out = "angle_rad,t_star,method\n";
  for (const auto& s : samples)
    out += csv::format(s.angle) + ',' + csv::format(s.unbounded ? INFINITY : s.t_star) + ',' +
           to_string(s.method) + '\n';
  return out;
}

std::string lambda_union_csv(const LambdaUnion& result) {
  std::string out = "lambda_index,angle_rad,t_star\n";
  for (std::size_t l = 0; l < result.t_star.size(); ++l)
    for (std::size_t r = 0; r < result.angles.size(); ++r)
      out += std::to_string(l) + ',' + csv::format(result.angles[r]) + ',' +
             csv::format(result.t_star[l][r]) + '\n';
  return out;
}

std::string pv_csv(const std::vector<PVCurve>& curves) {
  std::string out = "q,P,v_mag\n";
  for (const auto& curve : curves)
    for (const auto& pt : curve.points)
      out += csv::format(curve.q) + ',' + csv::format(pt.p) + ',' + csv::format(pt.v_mag) + '\n';
  return out;
}

}  // namespace gridcert
