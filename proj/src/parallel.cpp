#include "gridcert/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <omp.h>

namespace gridcert {

Parallelism Parallelism::from_env() {
  Parallelism p;
  const char* raw = std::getenv("GRIDCERT_THREADS");
  if (raw == nullptr) return p;
  int value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec == std::errc() && ptr == end && value >= 0) p.threads = value;
  return p;
}

int Parallelism::resolved() const { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace gridcert
