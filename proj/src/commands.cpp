#include "gridcert/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gridcert/boundary.hpp"
#include "gridcert/certificates.hpp"
#include "gridcert/csv.hpp"
#include "gridcert/netmodel.hpp"
#include "gridcert/pfsolver.hpp"
#include "gridcert/svg.hpp"

namespace gridcert::cli {

namespace {

struct Loaded {
  Network net;
  ImpedanceMatrix z;
};

Loaded load(const GlobalOptions& g) {
  if (g.network.empty()) throw Error("--network is required");
  Loaded l{load_network(g.network), {}};
  l.z = impedance_matrix(l.net);
  return l;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

void reject_svg(const GlobalOptions& g, const char* command) {
  if (g.svg) throw Error(std::string("--svg is not supported by '") + command + "'");
}

void emit(const GlobalOptions& g, const std::string& csv_text, std::optional<svg::PlotKind> plot,
          std::ostream& out) {
  if (g.svg && !g.out) throw Error("--svg needs --out");
  if (g.out) {
    write_file(*g.out, csv_text);
    if (g.svg && plot) {
      auto svg_path = *g.out;
      svg_path.replace_extension(".svg");
      write_file(svg_path, svg::render_csv(csv_text, *plot));
    }
  } else {
    out << csv_text;
  }
}

std::string verdict_row(const CertificateVerdict& v) {
  return to_string(v.criterion) + ',' + (v.certified ? "true" : "false") + ',' + csv::format(v.margin) + '\n';
}

}  // namespace

int cmd_check(const GlobalOptions& g, const CheckOptions& o, std::ostream& out, std::ostream&) {
  reject_svg(g, "check");
  static const std::set<std::string> norms{"2", "inf", "hull", "all"};
  if (!norms.contains(o.norm)) throw Error("--norm must be one of 2, inf, hull, all");
  const auto [net, z] = load(g);
  const LoadVector s = read_loads(csv::read_file(o.loads), z);

  std::vector<CertificateVerdict> verdicts;
  if (o.norm == "2" || o.norm == "all") verdicts.push_back(certify_base(z, s, net.v0, Norm::two));
  if (o.norm == "inf" || o.norm == "all") verdicts.push_back(certify_base(z, s, net.v0, Norm::inf));
  if (o.norm == "hull" || o.norm == "all") verdicts.push_back(certify_hull(rhombus(z, net.v0), s));

  std::string report = "criterion,certified,margin\n";
  bool any = false;
  for (const auto& v : verdicts) {
    report += verdict_row(v);
    any = any || v.certified;
  }
  emit(g, report, std::nullopt, out);
  return any ? kOk : kNotCertified;
}

int cmd_solve(const GlobalOptions& g, const SolveOptions& o, std::ostream& out, std::ostream& err) {
  reject_svg(g, "solve");
  const auto [net, z] = load(g);
  const LoadVector s = read_loads(csv::read_file(o.loads), z);
  const PFSolution sol = solve_fixed_point(z, s, net.v0, {o.tol, o.max_iter, 1.0});
  if (!sol.converged) {
    err << "fixed-point iteration " << (sol.diverged ? "diverged" : "did not converge") << " after "
        << sol.state.iteration << " iterations\n";
    return kNotCertified;
  }
  emit(g, solution_csv(sol, z), std::nullopt, out);
  return kOk;
}

int cmd_rhombus(const GlobalOptions& g, std::ostream& out, std::ostream&) {
  reject_svg(g, "rhombus");
  const auto [net, z] = load(g);
  const Rhombus rh = rhombus(z, net.v0);

  std::string text = "bus_id,s_max\n";
  for (Eigen::Index k = 0; k < rh.size(); ++k)
    text += std::to_string(z.bus_order[static_cast<std::size_t>(k)]) + ',' + csv::format(rh.s_max[k]) + '\n';

  text += "# vertices of sum_k |s_k|/s_max_k <= 1\nvertex";
  for (int id : z.bus_order) text += ",s_" + std::to_string(id);
  text += '\n';
  int vertex = 0;
  for (Eigen::Index k = 0; k < rh.size(); ++k) {
    for (double sign : {1.0, -1.0}) {
      text += std::to_string(vertex++);
      for (Eigen::Index j = 0; j < rh.size(); ++j) text += ',' + csv::format(j == k ? sign * rh.s_max[k] : 0.0);
      text += '\n';
    }
  }
  emit(g, text, std::nullopt, out);
  return kOk;
}

int cmd_boundary(const GlobalOptions& g, const BoundaryOptions& o, std::ostream& out, std::ostream& err) {
  const auto [net, z] = load(g);
  const LoadPattern pattern = read_pattern(csv::read_file(o.pattern), z);
  SweepOptions options;
  options.full_circle = o.full_circle;
  options.parallelism = g.parallelism;
  options.oracle.t_hi = o.t_hi;
  options.oracle.tol = o.tol;

  std::vector<BoundarySample> all;
  for (const auto& name : o.methods) {
    const Method m = method_from_string(name);
    if (m == Method::rescaled) throw Error("use the sweep command for rescaled certificates");
    auto samples = sweep_boundary(z, net.v0, pattern, o.rays, m, options);
    for (const auto& s : samples) {
      if (s.non_monotone)
        err << "warning: non-monotone solvability along angle " << csv::format(s.angle) << '\n';
      if (s.unbounded) err << "warning: no failure found along angle " << csv::format(s.angle) << '\n';
    }
    all.insert(all.end(), samples.begin(), samples.end());
  }
  emit(g, boundary_csv(all), svg::PlotKind::boundary, out);
  return kOk;
}

int cmd_sweep(const GlobalOptions& g, const SweepCommandOptions& o, std::ostream& out, std::ostream&) {
  if (o.norm != "2" && o.norm != "inf") throw Error("--norm must be 2 or inf");
  if (o.spacing != "log" && o.spacing != "linear") throw Error("--lambda-spacing must be log or linear");
  const auto [net, z] = load(g);
  const LoadPattern pattern = read_pattern(csv::read_file(o.pattern), z);
  const auto grid = lambda_grid(o.lambda_lo, o.lambda_hi, o.lambda_points, static_cast<int>(z.size()),
                                o.spacing == "log" ? GridSpacing::log : GridSpacing::linear);
  SweepOptions options;
  options.full_circle = o.full_circle;
  options.parallelism = g.parallelism;
  const auto result = lambda_union_samples(z, net.v0, pattern, grid, o.norm == "2" ? Norm::two : Norm::inf,
                                           o.rays, options);
  emit(g, lambda_union_csv(result), svg::PlotKind::sweep, out);
  return kOk;
}

int cmd_pvcurve(const GlobalOptions& g, const PVOptions& o, std::ostream& out, std::ostream& err) {
  const auto [net, z] = load(g);
  const LoadPattern pattern = read_pattern(csv::read_file(o.pattern), z);
  const int bus = o.bus ? *o.bus : z.bus_order.back();
  if (o.q.empty()) throw Error("at least one --q value is needed");

  double p_max = o.p_max;
  if (!(p_max > 0.0)) {
    const auto estimate = pv_curve(z, net.v0, pattern, 0.0, 1.0, 2, bus).p_estimate;
    p_max = estimate ? 2.0 * *estimate : 1.0;
  }
  std::vector<PVCurve> curves;
  for (double q : o.q) {
    curves.push_back(pv_curve(z, net.v0, pattern, q, p_max, o.points, bus));
    const auto& c = curves.back();
    err << "q=" << csv::format(q) << " P_A=" << csv::format(c.p_nose)
        << " P_E=" << (c.p_estimate ? csv::format(*c.p_estimate) : std::string("none")) << '\n';
  }
  emit(g, pv_csv(curves), svg::PlotKind::pv, out);
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power-flow solvability certificates for distribution networks", "gridcert"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string out_path;
  app.add_option("--network", g.network, "Network JSON document");
  app.add_option("--out", out_path, "Write CSV here (SVG goes next to it)");
  app.add_flag("--svg", g.svg, "Also render an SVG plot");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Certify a load vector");
  check_cmd->add_option("--loads", check.loads, "Loads CSV (bus_id,P,Q)")->required();
  check_cmd->add_option("--norm", check.norm, "2, inf, hull or all");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve power flow by fixed-point iteration");
  solve_cmd->add_option("--loads", solve.loads, "Loads CSV (bus_id,P,Q)")->required();
  solve_cmd->add_option("--tol", solve.tol, "Step tolerance");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration limit");

  auto* rhombus_cmd = app.add_subcommand("rhombus", "Per-bus limits of the hull certificate");

  BoundaryOptions boundary;
  std::string methods = "oracle,hull,base2,baseinf";
  bool quadrant = false;
  auto* boundary_cmd = app.add_subcommand("boundary", "Critical scalings along rays in the (P,Q) plane");
  boundary_cmd->add_option("--pattern", boundary.pattern, "Pattern CSV (bus_id,weight_p,weight_q)")->required();
  boundary_cmd->add_option("--rays", boundary.rays, "Number of rays");
  boundary_cmd->add_option("--methods", methods, "Comma-separated: oracle,hull,base2,baseinf");
  auto* full = boundary_cmd->add_flag("--full", boundary.full_circle, "Sweep the full circle");
  boundary_cmd->add_flag("--quadrant", quadrant, "Sweep the first quadrant (default)")->excludes(full);
  boundary_cmd->add_option("--t-hi", boundary.t_hi, "Initial oracle ceiling (0 = automatic)");
  boundary_cmd->add_option("--tol", boundary.tol, "Oracle bisection tolerance");

  SweepCommandOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Rescaled certificates over a lambda grid");
  sweep_cmd->add_option("--pattern", sweep.pattern, "Pattern CSV (bus_id,weight_p,weight_q)")->required();
  sweep_cmd->add_option("--lambda-lo", sweep.lambda_lo, "Smallest diagonal entry");
  sweep_cmd->add_option("--lambda-hi", sweep.lambda_hi, "Largest diagonal entry");
  sweep_cmd->add_option("--lambda-points", sweep.lambda_points, "Grid points per axis");
  sweep_cmd->add_option("--lambda-spacing", sweep.spacing, "log or linear");
  sweep_cmd->add_option("--norm", sweep.norm, "2 or inf");
  sweep_cmd->add_option("--rays", sweep.rays, "Number of rays");
  auto* sweep_full = sweep_cmd->add_flag("--full", sweep.full_circle, "Sweep the full circle");
  sweep_cmd->add_flag("--quadrant", quadrant, "Sweep the first quadrant (default)")->excludes(sweep_full);

  PVOptions pv;
  int pv_bus = -1;
  auto* pv_cmd = app.add_subcommand("pvcurve", "Voltage against active power at fixed Q");
  pv_cmd->add_option("--pattern", pv.pattern, "Pattern CSV (bus_id,weight_p,weight_q)")->required();
  pv_cmd->add_option("--q", pv.q, "Reactive level(s); repeat for an overlay");
  pv_cmd->add_option("--bus", pv_bus, "Load bus whose voltage is traced");
  pv_cmd->add_option("--points", pv.points, "Continuation points");
  pv_cmd->add_option("--p-max", pv.p_max, "Largest P attempted (0 = automatic)");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gridcert: " << e.what() << '\n';
    return kError;
  }

  if (!out_path.empty()) g.out = out_path;
  g.parallelism = Parallelism::from_env();
  if (pv_bus >= 0) pv.bus = pv_bus;
  boundary.methods.clear();
  std::stringstream list(methods);
  for (std::string item; std::getline(list, item, ',');)
    if (!item.empty()) boundary.methods.push_back(item);

  try {
    if (check_cmd->parsed()) return cmd_check(g, check, out, err);
    if (solve_cmd->parsed()) return cmd_solve(g, solve, out, err);
    if (rhombus_cmd->parsed()) return cmd_rhombus(g, out, err);
    if (boundary_cmd->parsed()) return cmd_boundary(g, boundary, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(g, sweep, out, err);
    if (pv_cmd->parsed()) return cmd_pvcurve(g, pv, out, err);
  } catch (const std::exception& e) {
    err << "gridcert: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace gridcert::cli
