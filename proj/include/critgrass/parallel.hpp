#pragma once

#include <cstdint>
#include <functional>

namespace critgrass {

enum class Exec { Serial, Parallel };

// Thread budget: OpenMP default, capped by CRITGRASS_THREADS when set.
int max_threads();

// Runs body(i) for i in [0, count). The first exception thrown by any iteration is rethrown.
void parallel_for(int count, const std::function<void(int)>& body, Exec exec = Exec::Parallel);

// Independent stream seed for sample index i.
uint64_t sample_seed(uint64_t seed, uint64_t index);

}  // namespace critgrass
