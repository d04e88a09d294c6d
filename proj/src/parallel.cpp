#include "critgrass/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace critgrass {

int max_threads() {
  int t = omp_get_max_threads();
  if (const char* env = std::getenv("CRITGRASS_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap >= 1 && cap < t) t = cap;
    } catch (const std::exception&) {
    }
  }
  return t;
}

void parallel_for(int count, const std::function<void(int)>& body, Exec exec) {
  if (exec == Exec::Serial || count < 2) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

uint64_t sample_seed(uint64_t seed, uint64_t index) {
  // splitmix64 finalizer
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace critgrass
