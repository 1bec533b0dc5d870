#include <exception>

#include <omp.h>

#include "boundary_kernels.hpp"

namespace gridcert {

namespace {

// Exceptions must not cross an OpenMP region boundary; the first one thrown
// by any worker is rethrown after the loop.
class FirstError {
 public:
  template <typename F>
  void run(F&& work) noexcept {
    try {
      work();
    } catch (...) {
#pragma omp critical(gridcert_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

std::vector<BoundarySample> sweep_boundary(const ImpedanceMatrix& z, double v0,
                                           const LoadPattern& pattern, int n_rays, Method method,
                                           const SweepOptions& options) {
  detail::check_sweep(z, pattern, n_rays);
  const auto angles = ray_angles(n_rays, options.full_circle);
  const auto count = static_cast<long>(angles.size());
  std::vector<BoundarySample> samples(angles.size());
  FirstError errors;

#pragma omp parallel for schedule(dynamic) num_threads(options.parallelism.resolved())
  for (long r = 0; r < count; ++r) {
    errors.run([&] {
      samples[static_cast<std::size_t>(r)] =
          detail::sample_ray(z, v0, pattern, angles[static_cast<std::size_t>(r)], method, options);
    });
  }
  errors.rethrow();
  return samples;
}

LambdaUnion lambda_union_samples(const ImpedanceMatrix& z, double v0, const LoadPattern& pattern,
                                 const std::vector<ScalingMatrix>& grid, Norm norm, int n_rays,
                                 const SweepOptions& options) {
  const auto setup = detail::union_setup(z, pattern, grid, n_rays, options.full_circle);
  LambdaUnion result;
  result.angles = setup.angles;
  result.t_star.resize(grid.size());
  const auto count = static_cast<long>(grid.size());
  FirstError errors;

#pragma omp parallel for schedule(static) num_threads(options.parallelism.resolved())
  for (long l = 0; l < count; ++l) {
    errors.run([&] {
      result.t_star[static_cast<std::size_t>(l)] =
          detail::lambda_row(z, v0, setup, grid[static_cast<std::size_t>(l)], norm);
    });
  }
  errors.rethrow();
  detail::fill_envelope(result);
  return result;
}

}  // namespace gridcert
