#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gridcert/boundary.hpp"
#include "gridcert/certificates.hpp"
#include "gridcert/pfsolver.hpp"

namespace gridcert::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by header name; throws ParseError when absent.
  std::size_t column(std::string_view name) const;
};

/// Comma-separated, first non-comment line is the header. Blank lines and
/// lines starting with '#' are skipped. No quoting.
Table parse(std::string_view text);
Table read_file(const std::filesystem::path& path);

/// Shortest representation that round-trips; "inf"/"-inf"/"nan" otherwise.
std::string format(double value);
double to_double(std::string_view field);

}  // namespace gridcert::csv

namespace gridcert {

/// bus_id,P,Q in consumption-positive p.u.; missing buses carry no load.
LoadVector read_loads(const csv::Table& table, const ImpedanceMatrix& z);
/// bus_id,weight_p,weight_q; missing buses get zero weight.
LoadPattern read_pattern(const csv::Table& table, const ImpedanceMatrix& z);

std::string solution_csv(const PFSolution& sol, const ImpedanceMatrix& z);
std::string boundary_csv(const std::vector<BoundarySample>& samples);
std::string lambda_union_csv(const LambdaUnion& result);
std::string pv_csv(const std::vector<PVCurve>& curves);

}  // namespace gridcert
