#include "gridcert/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boundary_kernels.hpp"

namespace gridcert {

LoadPattern::LoadPattern(RVector p, RVector q) : weights_p(std::move(p)), weights_q(std::move(q)) {
  if (weights_p.size() != weights_q.size()) throw DimensionError("pattern weight vectors differ in length");
  if (!weights_p.allFinite() || !weights_q.allFinite()) throw Error("pattern weights must be finite");
  if (weights_p.cwiseAbs().sum() == 0.0 && weights_q.cwiseAbs().sum() == 0.0)
    throw Error("pattern needs at least one nonzero weight");
}

LoadPattern LoadPattern::uniform(Eigen::Index n) { return {RVector::Ones(n), RVector::Ones(n)}; }

LoadVector LoadPattern::at(double p, double q) const {
  return LoadVector::from_consumption(p * weights_p, q * weights_q);
}

RaySpec::RaySpec(LoadPattern pat, double p, double q) : pattern(std::move(pat)) {
  const double len = std::hypot(p, q);
  if (!(len > 0.0) || !std::isfinite(len)) throw Error("ray direction must be nonzero and finite");
  dp = p / len;
  dq = q / len;
}

RaySpec RaySpec::at_angle(LoadPattern pattern, double angle) {
  return RaySpec(std::move(pattern), std::cos(angle), std::sin(angle));
}

double RaySpec::angle() const { return std::atan2(dq, dp); }

std::string to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::hull: return "hull";
    case Method::base2: return "base2";
    case Method::base_inf: return "baseinf";
    case Method::rescaled: return "rescaled";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "oracle") return Method::oracle;
  if (name == "hull") return Method::hull;
  if (name == "base2") return Method::base2;
  if (name == "baseinf" || name == "base_inf") return Method::base_inf;
  if (name == "rescaled") return Method::rescaled;
  throw Error("unknown boundary method '" + name + "'");
}

namespace {

struct Probe {
  bool solvable = false;
  CVector f;
};

Probe probe(const ImpedanceMatrix& z, double v0, const RaySpec& ray, double t, const CVector& start,
            const OracleOptions& options) {
  const LoadVector load = ray.load(t);
  auto sol = solve_fixed_point(z, load, v0, options.solver, start);
  if (sol.converged) return {true, std::move(sol.state.f)};
  SolverOptions damped = options.solver;
  damped.damping = options.fallback_damping;
  sol = solve_fixed_point(z, load, v0, damped, start);
  if (sol.converged) return {true, std::move(sol.state.f)};
  return {};
}

BoundarySample blank_sample(const RaySpec& ray, Method method) {
  BoundarySample out;
  out.angle = ray.angle();
  out.dp = ray.dp;
  out.dq = ray.dq;
  out.method = method;
  return out;
}

}  // namespace

BoundarySample oracle_t_star(const ImpedanceMatrix& z, double v0, const RaySpec& ray,
                             const OracleOptions& options) {
  if (ray.pattern.size() != z.size()) throw DimensionError("pattern does not match impedance matrix");
  if (!(options.tol > 0.0) || options.steps < 1) throw Error("oracle needs tol > 0 and steps >= 1");

  BoundarySample out = blank_sample(ray, Method::oracle);
  double t_hi = options.t_hi;
  if (!(t_hi > 0.0)) {
    t_hi = 1.0;
    try {
      t_hi = 2.0 * certificate_t_star(z, v0, ray, Method::hull).t_star;
    } catch (const Error&) {
      // zero column or zero projected load: keep the unit ceiling
    }
  }
  double step = t_hi / options.steps;
  double t_lo = 0.0;
  CVector f_lo = CVector::Zero(z.size());
  double t_fail = 0.0;

  // Continuation: march until the first failure, doubling the ceiling.
  for (;;) {
    const double t = t_lo + step;
    Probe p = probe(z, v0, ray, t, f_lo, options);
    if (!p.solvable) {
      t_fail = t;
      break;
    }
    t_lo = t;
    f_lo = std::move(p.f);
    if (t_lo >= t_hi) {
      if (2.0 * t_hi > options.t_limit) {
        out.t_star = t_lo;
        out.t_fail = t_lo;
        out.unbounded = true;
        return out;
      }
      t_hi *= 2.0;
      step = t_hi / options.steps;
    }
  }

  // Solvable again one step past the failure means the ray is not star-shaped
  // for this procedure; keep the first failure regardless.
  out.non_monotone = probe(z, v0, ray, t_fail + step, f_lo, options).solvable;

  while (t_fail - t_lo >= options.tol) {
    const double mid = 0.5 * (t_lo + t_fail);
    Probe p = probe(z, v0, ray, mid, f_lo, options);
    if (p.solvable) {
      t_lo = mid;
      f_lo = std::move(p.f);
    } else {
      t_fail = mid;
    }
  }
  out.t_star = t_lo;
  out.t_fail = t_fail;
  return out;
}

BoundarySample certificate_t_star(const ImpedanceMatrix& z, double v0, const RaySpec& ray,
                                  Method method, Norm norm, const ScalingMatrix* lambda) {
  if (ray.pattern.size() != z.size()) throw DimensionError("pattern does not match impedance matrix");
  if (!(v0 > 0.0)) throw Error("v0 must be positive");
  const CVector w = ray.load(1.0).s;
  if (w.cwiseAbs().maxCoeff() == 0.0) throw Error("ray projects to an all-zero load");

  BoundarySample out = blank_sample(ray, method);
  const double v0_sq = v0 * v0;
  switch (method) {
    case Method::hull: {
      const Rhombus rh = rhombus(z, v0);
      double sum = 0.0;
      for (Eigen::Index k = 0; k < w.size(); ++k) sum += std::abs(w[k]) / rh.s_max[k];
      out.t_star = 1.0 / sum;
      break;
    }
    case Method::base2:
      out.t_star = v0_sq / (4.0 * nuclear_norm_2(z.entries) * paired_vector_norm(w, Norm::two));
      break;
    case Method::base_inf:
      out.t_star = v0_sq / (4.0 * nuclear_norm_inf(z.entries) * paired_vector_norm(w, Norm::inf));
      break;
    case Method::rescaled: {
      if (lambda == nullptr) throw Error("rescaled method needs a scaling matrix");
      if (lambda->size() != z.size()) throw DimensionError("scaling matrix dimension mismatch");
      out.t_star = v0_sq / (4.0 * rescaled_matrix_norm(z, *lambda, norm) *
                            rescaled_vector_norm(w, *lambda, norm));
      break;
    }
    case Method::oracle:
      throw Error("the oracle has no closed-form critical scaling");
  }
  return out;
}

std::vector<double> ray_angles(int n_rays, bool full_circle) {
  if (full_circle ? n_rays < 3 : n_rays < 2)
    throw Error(full_circle ? "full-circle sweeps need at least 3 rays"
                            : "quadrant sweeps need at least 2 rays");
  std::vector<double> angles(static_cast<std::size_t>(n_rays));
  for (int r = 0; r < n_rays; ++r) {
    angles[static_cast<std::size_t>(r)] =
        full_circle ? 2.0 * std::numbers::pi * r / n_rays
                    : 0.5 * std::numbers::pi * r / (n_rays - 1);
  }
  return angles;
}

PVCurve pv_curve(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern, double q_fixed,
                 double p_max_hint, int n_points, int watch_bus, const SolverOptions& solver) {
  if (pattern.size() != z.size()) throw DimensionError("pattern does not match impedance matrix");
  if (!std::isfinite(q_fixed)) throw Error("reactive level must be finite");
  if (!(p_max_hint > 0.0)) throw Error("p_max_hint must be positive");
  if (n_points < 2) throw Error("a PV curve needs at least 2 points");
  const Eigen::Index watch = z.index_of(watch_bus);
  if (watch < 0) throw Error("bus " + std::to_string(watch_bus) + " is not a load bus");

  PVCurve curve;
  curve.q = q_fixed;
  CVector f = CVector::Zero(z.size());
  SolverOptions damped = solver;
  damped.damping = 0.5;
  for (int i = 0; i < n_points; ++i) {
    const double p = p_max_hint * i / (n_points - 1);
    const LoadVector load = pattern.at(p, q_fixed);
    auto sol = solve_fixed_point(z, load, v0, solver, f);
    if (!sol.converged) sol = solve_fixed_point(z, load, v0, damped, f);
    if (!sol.converged) break;
    f = sol.state.f;
    curve.points.push_back({p, std::abs(sol.v[watch])});
    curve.p_nose = p;
  }

  // Largest P the hull certifies at this Q; the hull sum is convex in P.
  const Rhombus rh = rhombus(z, v0);
  auto hull_sum = [&](double p) {
    const CVector s = pattern.at(p, q_fixed).s;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) sum += std::abs(s[k]) / rh.s_max[k];
    return sum;
  };
  if (hull_sum(0.0) <= 1.0 && pattern.weights_p.cwiseAbs().maxCoeff() > 0.0) {
    double lo = 0.0;
    double hi = 1.0;
    while (hull_sum(hi) <= 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (hull_sum(mid) <= 1.0 ? lo : hi) = mid;
    }
    curve.p_estimate = lo;
  }
  return curve;
}

namespace detail {

void check_sweep(const ImpedanceMatrix& z, const LoadPattern& pattern, int n_rays) {
  if (pattern.size() != z.size()) throw DimensionError("pattern does not match impedance matrix");
  if (n_rays < 2) throw Error("a sweep needs at least 2 rays");
}

BoundarySample sample_ray(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern,
                          double angle, Method method, const SweepOptions& options) {
  const RaySpec ray = RaySpec::at_angle(pattern, angle);
  BoundarySample out = method == Method::oracle
                           ? oracle_t_star(z, v0, ray, options.oracle)
                           : certificate_t_star(z, v0, ray, method, options.norm);
  out.angle = angle;
  return out;
}

UnionSetup union_setup(const ImpedanceMatrix& z, const LoadPattern& pattern,
                       const std::vector<ScalingMatrix>& grid, int n_rays, bool full_circle) {
  check_sweep(z, pattern, n_rays);
  if (grid.empty()) throw Error("lambda grid is empty");
  for (const auto& l : grid)
    if (l.size() != z.size()) throw DimensionError("scaling matrix dimension mismatch");
  UnionSetup setup;
  setup.angles = ray_angles(n_rays, full_circle);
  for (double a : setup.angles) {
    CVector w = RaySpec::at_angle(pattern, a).load(1.0).s;
    if (w.cwiseAbs().maxCoeff() == 0.0) throw Error("ray projects to an all-zero load");
    setup.unit_loads.push_back(std::move(w));
  }
  return setup;
}

std::vector<double> lambda_row(const ImpedanceMatrix& z, double v0, const UnionSetup& setup,
                               const ScalingMatrix& lambda, Norm norm) {
  const double matrix_norm = rescaled_matrix_norm(z, lambda, norm);
  const double v0_sq = v0 * v0;
  std::vector<double> row(setup.unit_loads.size());
  for (std::size_t r = 0; r < row.size(); ++r)
    row[r] = v0_sq / (4.0 * matrix_norm * rescaled_vector_norm(setup.unit_loads[r], lambda, norm));
  return row;
}

void fill_envelope(LambdaUnion& result) {
  result.envelope.assign(result.angles.size(), 0.0);
  for (const auto& row : result.t_star)
    for (std::size_t r = 0; r < row.size(); ++r)
      result.envelope[r] = std::max(result.envelope[r], row[r]);
}

}  // namespace detail

}  // namespace gridcert
