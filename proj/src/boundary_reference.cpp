#include "boundary_kernels.hpp"

namespace gridcert::reference {

std::vector<BoundarySample> sweep_boundary(const ImpedanceMatrix& z, double v0,
                                           const LoadPattern& pattern, int n_rays, Method method,
                                           const SweepOptions& options) {
  detail::check_sweep(z, pattern, n_rays);
  std::vector<BoundarySample> samples;
  for (double angle : ray_angles(n_rays, options.full_circle))
    samples.push_back(detail::sample_ray(z, v0, pattern, angle, method, options));
  return samples;
}

LambdaUnion lambda_union_samples(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern,
                                 const std::vector<ScalingMatrix>& grid, Norm norm, int n_rays,
                                 const SweepOptions& options) {
  const auto setup = detail::union_setup(z, pattern, grid, n_rays, options.full_circle);
  LambdaUnion result;
  result.angles = setup.angles;
  for (const auto& lambda : grid) result.t_star.push_back(detail::lambda_row(z, v0, setup, lambda, norm));
  detail::fill_envelope(result);
  return result;
}

}  // namespace gridcert::reference
