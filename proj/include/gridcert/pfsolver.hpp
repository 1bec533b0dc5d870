#pragma once

#include <optional>

#include "gridcert/certificates.hpp"
#include "gridcert/netmodel.hpp"

namespace gridcert {

struct SolverOptions {
  double tol = 1e-10;   // infinity-norm bound on the last step in f
  int max_iter = 1000;
  // Relaxation weight: f <- (1 - damping) f + damping G(f). 1 is the plain map.
  double damping = 1.0;
};

struct FixedPointState {
  CVector f;
  int iteration = 0;
  double last_step_norm = 0.0;
};

struct PFSolution {
  CVector v;  // load-bus voltages
  CVector i;  // load-bus injected currents
  double residual = 0.0;  // max_h |v_h conj(i_h) - s_h|
  bool converged = false;
  bool diverged = false;
  FixedPointState state;
};

/// G(f) = -(1/v0^2) diag(f + s) Z conj(f + s)
CVector apply_map(const ImpedanceMatrix& z, const LoadVector& s, double v0, const CVector& f);

/// Iterates f <- G(f) from `initial` (zero when absent). Non-convergence is
/// reported through `converged`, never thrown.
PFSolution solve_fixed_point(const ImpedanceMatrix& z, const LoadVector& s, double v0,
                             const SolverOptions& options = {},
                             const std::optional<CVector>& initial = std::nullopt);

/// max_h |v_h conj(i_h) - s_h| with i recovered from v = v0 1 + Z i.
double pf_residual(double v0, const ImpedanceMatrix& z, const LoadVector& s, const CVector& v);

}  // namespace gridcert
