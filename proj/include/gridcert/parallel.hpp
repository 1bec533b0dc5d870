#pragma once

namespace gridcert {

/// Upper bound on OpenMP threads used by the parallel kernels; 0 means the
/// runtime default.
struct Parallelism {
  int threads = 0;

  /// Reads GRIDCERT_THREADS; unset, empty or unparsable values give 0.
  static Parallelism from_env();
  int resolved() const;
};

}  // namespace gridcert
