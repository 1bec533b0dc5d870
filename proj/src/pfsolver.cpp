#include "gridcert/pfsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridcert {

namespace {

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void check_inputs(const ImpedanceMatrix& z, const LoadVector& s, double v0) {
  if (s.size() != z.size()) throw DimensionError("load vector does not match impedance matrix");
  if (!(v0 > 0.0) || !std::isfinite(v0)) throw Error("v0 must be positive");
}

double residual_from(const CVector& v, const CVector& i, const LoadVector& s) {
  double worst = 0.0;
  for (Eigen::Index h = 0; h < v.size(); ++h)
    worst = std::max(worst, std::abs(v[h] * std::conj(i[h]) - s.s[h]));
  return worst;
}

}  // namespace

CVector apply_map(const ImpedanceMatrix& z, const LoadVector& s, double v0, const CVector& f) {
  check_inputs(z, s, v0);
  if (f.size() != s.size()) throw DimensionError("iterate does not match load vector");
  const CVector shifted = f + s.s;
  const CVector coupled = z.entries * shifted.conjugate();
  return -(1.0 / (v0 * v0)) * shifted.cwiseProduct(coupled);
}

PFSolution solve_fixed_point(const ImpedanceMatrix& z, const LoadVector& s, double v0,
                             const SolverOptions& options, const std::optional<CVector>& initial) {
  check_inputs(z, s, v0);
  if (!(options.tol > 0.0)) throw Error("solver tolerance must be positive");
  if (options.max_iter < 1) throw Error("max_iter must be at least 1");
  if (!(options.damping > 0.0) || options.damping > 1.0) throw Error("damping must lie in (0, 1]");

  PFSolution out;
  auto& state = out.state;
  state.f = initial ? *initial : CVector::Zero(s.size());
  if (state.f.size() != s.size()) throw DimensionError("initial iterate does not match load vector");

  const double divergence_bound =
      1e3 * v0 * v0 / std::max(nuclear_norm_2(z.entries), std::numeric_limits<double>::epsilon());
  const double inv_v0_sq = 1.0 / (v0 * v0);

  CVector shifted(s.size());
  CVector next(s.size());
  for (state.iteration = 1; state.iteration <= options.max_iter; ++state.iteration) {
    shifted = state.f + s.s;
    next.noalias() = z.entries * shifted.conjugate();
    next = -inv_v0_sq * shifted.cwiseProduct(next);
    if (options.damping != 1.0) next = (1.0 - options.damping) * state.f + options.damping * next;

    state.last_step_norm = max_abs(next - state.f);
    state.f.swap(next);
    if (!state.f.allFinite() || max_abs(state.f) > divergence_bound) {
      out.diverged = true;
      break;
    }
    if (state.last_step_norm < options.tol) {
      out.converged = true;
      break;
    }
  }
  state.iteration = std::min(state.iteration, options.max_iter);

  // conj(i) = (f + s) / v0, v = v0 1 + Z i
  out.i = (state.f + s.s).conjugate() / v0;
  out.v = z.entries * out.i;
  out.v.array() += v0;
  out.residual = residual_from(out.v, out.i, s);
  return out;
}

double pf_residual(double v0, const ImpedanceMatrix& z, const LoadVector& s, const CVector& v) {
  check_inputs(z, s, v0);
  if (v.size() != s.size()) throw DimensionError("voltage vector does not match load vector");
  CVector drop = v;
  drop.array() -= v0;
  CVector i;
  if (z.admittance) {
    i = *z.admittance * drop;
  } else {
    i = z.entries.partialPivLu().solve(drop);
  }
  return residual_from(v, i, s);
}

}  // namespace gridcert
