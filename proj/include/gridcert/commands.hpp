#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gridcert/parallel.hpp"

namespace gridcert::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kNotCertified = 1;
inline constexpr int kError = 2;

struct GlobalOptions {
  std::filesystem::path network;
  std::optional<std::filesystem::path> out;
  bool svg = false;
  Parallelism parallelism;
};

struct CheckOptions {
  std::filesystem::path loads;
  std::string norm = "all";  // 2 | inf | hull | all
};

struct SolveOptions {
  std::filesystem::path loads;
  double tol = 1e-10;
  int max_iter = 1000;
};

struct BoundaryOptions {
  std::filesystem::path pattern;
  int rays = 16;
  std::vector<std::string> methods{"oracle", "hull", "base2", "baseinf"};
  bool full_circle = false;
  double t_hi = 0.0;
  double tol = 1e-6;
};

struct SweepCommandOptions {
  std::filesystem::path pattern;
  double lambda_lo = 0.5;
  double lambda_hi = 25.0;
  int lambda_points = 8;
  std::string spacing = "log";  // log | linear
  std::string norm = "2";       // 2 | inf
  int rays = 16;
  bool full_circle = false;
};

struct PVOptions {
  std::filesystem::path pattern;
  std::vector<double> q{0.0};
  std::optional<int> bus;   // defaults to the last load bus
  int points = 101;
  double p_max = 0.0;       // <= 0: twice the hull estimate at Q = 0
};

// Each command writes its CSV to `out` (or to GlobalOptions::out) and
// diagnostics to `err`. Library errors propagate as exceptions; run()
// turns them into kError.
int cmd_check(const GlobalOptions& g, const CheckOptions& o, std::ostream& out, std::ostream& err);
int cmd_solve(const GlobalOptions& g, const SolveOptions& o, std::ostream& out, std::ostream& err);
int cmd_rhombus(const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_boundary(const GlobalOptions& g, const BoundaryOptions& o, std::ostream& out, std::ostream& err);
int cmd_sweep(const GlobalOptions& g, const SweepCommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_pvcurve(const GlobalOptions& g, const PVOptions& o, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; never throws. Returns 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gridcert::cli
