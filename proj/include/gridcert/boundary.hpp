#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridcert/certificates.hpp"
#include "gridcert/netmodel.hpp"
#include "gridcert/parallel.hpp"
#include "gridcert/pfsolver.hpp"

namespace gridcert {

/// Maps a scalar (P, Q) pair to per-bus consumption
/// s_k = P * weights_p[k] + j Q * weights_q[k].
struct LoadPattern {
  RVector weights_p;
  RVector weights_q;

  LoadPattern() = default;
  LoadPattern(RVector p, RVector q);

  static LoadPattern uniform(Eigen::Index n);

  Eigen::Index size() const { return weights_p.size(); }
  /// Consumption (P, Q) converted to the injection-convention load vector.
  LoadVector at(double p, double q) const;
};

struct RaySpec {
  LoadPattern pattern;
  double dp = 1.0;
  double dq = 0.0;

  RaySpec() = default;
  /// Normalizes (dp, dq); throws on a zero or non-finite direction.
  RaySpec(LoadPattern pattern, double dp, double dq);
  static RaySpec at_angle(LoadPattern pattern, double angle);

  double angle() const;
  LoadVector load(double t) const { return pattern.at(t * dp, t * dq); }
};

enum class Method { oracle, hull, base2, base_inf, rescaled };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct BoundarySample {
  double angle = 0.0;
  double dp = 0.0;
  double dq = 0.0;
  double t_star = 0.0;
  Method method = Method::hull;
  bool unbounded = false;
  // Oracle only: upper end of the final bracket and whether a load beyond
  // the first failure was found solvable again.
  double t_fail = 0.0;
  bool non_monotone = false;
};

struct OracleOptions {
  // Initial search ceiling, doubled until a failure. Non-positive means
  // twice the hull certificate's critical scaling along the ray.
  double t_hi = 0.0;
  double tol = 1e-6;     // bisection bracket width
  int steps = 200;       // continuation step = t_hi / steps
  double t_limit = 1048576.0;
  double fallback_damping = 0.5;
  SolverOptions solver{1e-10, 100000, 1.0};
};

/// Largest t along the ray for which warm-started fixed-point continuation
/// (with a damped fallback) still converges, to within `tol`.
BoundarySample oracle_t_star(const ImpedanceMatrix& z, double v0, const RaySpec& ray,
                             const OracleOptions& options = {});

/// Closed-form critical t of a certificate along the ray. `lambda` is
/// required for Method::rescaled and ignored otherwise; `norm` selects the
/// pairing for base/rescaled criteria.
BoundarySample certificate_t_star(const ImpedanceMatrix& z, double v0, const RaySpec& ray,
                                  Method method, Norm norm = Norm::two,
                                  const ScalingMatrix* lambda = nullptr);

/// Uniform ray angles: [0, pi/2] inclusive for the first quadrant,
/// [0, 2 pi) for the full circle.
std::vector<double> ray_angles(int n_rays, bool full_circle);

struct SweepOptions {
  bool full_circle = false;
  Norm norm = Norm::two;  // used by base/rescaled criteria
  OracleOptions oracle{};
  Parallelism parallelism{};
};

std::vector<BoundarySample> sweep_boundary(const ImpedanceMatrix& z, double v0,
                                           const LoadPattern& pattern, int n_rays, Method method,
                                           const SweepOptions& options = {});

struct LambdaUnion {
  std::vector<double> angles;
  // t_star[l][r] for grid entry l along ray r.
  std::vector<std::vector<double>> t_star;
  std::vector<double> envelope;  // per-ray max over the grid
};

LambdaUnion lambda_union_samples(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern,
                                 const std::vector<ScalingMatrix>& grid, Norm norm, int n_rays,
                                 const SweepOptions& options = {});

struct PVPoint {
  double p = 0.0;
  double v_mag = 0.0;
};

struct PVCurve {
  double q = 0.0;
  std::vector<PVPoint> points;
  double p_nose = 0.0;                   // last converged P
  std::optional<double> p_estimate;      // largest hull-certified P at this Q
};

PVCurve pv_curve(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern, double q_fixed,
                 double p_max_hint, int n_points, int watch_bus,
                 const SolverOptions& solver = {1e-10, 100000, 1.0});

/// Serial implementations of the ray and grid kernels. They define the
/// results the OpenMP versions must reproduce bit for bit.
namespace reference {

std::vector<BoundarySample> sweep_boundary(const ImpedanceMatrix& z, double v0,
                                           const LoadPattern& pattern, int n_rays, Method method,
                                           const SweepOptions& options = {});

LambdaUnion lambda_union_samples(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern,
                                 const std::vector<ScalingMatrix>& grid, Norm norm, int n_rays,
                                 const SweepOptions& options = {});

}  // namespace reference

}  // namespace gridcert
