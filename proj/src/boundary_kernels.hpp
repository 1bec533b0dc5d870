#pragma once

#include <vector>

#include "gridcert/boundary.hpp"

// Per-ray and per-grid-entry work units shared by the serial reference and
// the OpenMP kernels. Both drivers call exactly these functions so their
// outputs agree bit for bit.
namespace gridcert::detail {

void check_sweep(const ImpedanceMatrix& z, const LoadPattern& pattern, int n_rays);

BoundarySample sample_ray(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern,
                          double angle, Method method, const SweepOptions& options);

struct UnionSetup {
  std::vector<double> angles;
  std::vector<CVector> unit_loads;  // ray load at t = 1
};

UnionSetup union_setup(const ImpedanceMatrix& z, const LoadPattern& pattern,
                       const std::vector<ScalingMatrix>& grid, int n_rays, bool full_circle);

std::vector<double> lambda_row(const ImpedanceMatrix& z, double v0, const UnionSetup& setup,
                               const ScalingMatrix& lambda, Norm norm);

void fill_envelope(LambdaUnion& result);

}  // namespace gridcert::detail
