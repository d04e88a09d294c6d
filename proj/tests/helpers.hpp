#pragma once

#include <gmpxx.h>

#include <random>
#include <vector>

#include "critgrass/affine_perm.hpp"
#include "critgrass/plabic.hpp"
#include "oracles.hpp"

namespace testutil {

inline critgrass::Weights<mpq_class> random_rational_weights(const critgrass::PlabicGraph& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 12), den(1, 9);
  critgrass::Weights<mpq_class> w(g.ne());
  for (auto& x : w) {
    x = mpq_class(num(rng), den(rng));
    x.canonicalize();
  }
  return w;
}

// Library measurement equals the brute-force Plücker vector exactly.
inline bool matches_oracle(const critgrass::PlabicGraph& g, const critgrass::Weights<mpq_class>& w) {
  auto p = critgrass::boundary_measurement(g, w);
  auto o = oracle::plucker(g, w);
  for (size_t i = 0; i < p.subsets.size(); ++i) {
    uint32_t m = critgrass::subset_mask(p.subsets[i]);
    mpq_class want = o.count(m) ? o.at(m) : mpq_class(0);
    if (p.coords[i] != want) return false;
  }
  for (const auto& [m, v] : o)
    if (v != 0 && static_cast<int>(critgrass::mask_subset(m).size()) != p.k) return false;
  return true;
}

// Projective equality of the oracle vectors of two graphs.
inline bool oracle_projective_equal(const std::map<uint32_t, mpq_class>& a, const std::map<uint32_t, mpq_class>& b) {
  std::set<uint32_t> keys;
  for (const auto& [m, v] : a)
    if (v != 0) keys.insert(m);
  for (const auto& [m, v] : b)
    if (v != 0) keys.insert(m);
  if (keys.empty()) return false;
  uint32_t ref = *keys.begin();
  auto get = [](const std::map<uint32_t, mpq_class>& x, uint32_t m) { return x.count(m) ? x.at(m) : mpq_class(0); };
  mpq_class ra = get(a, ref), rb = get(b, ref);
  if (ra == 0 || rb == 0) return false;
  for (uint32_t m : keys)
    if (get(a, m) * rb != get(b, m) * ra) return false;
  return true;
}

// Every periodic partition of [n] into at least two cyclic intervals.
inline std::vector<critgrass::PeriodicPartition> all_partitions(int n) {
  std::vector<critgrass::PeriodicPartition> out;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<int> cuts;
    for (int p = 1; p <= n; ++p)
      if (m >> (p - 1) & 1) cuts.push_back(p);
    if (cuts.size() < 2) continue;
    std::vector<std::pair<int, int>> iv;
    for (size_t i = 0; i < cuts.size(); ++i) iv.emplace_back(cuts[i], i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + n);
    out.emplace_back(n, iv);
  }
  return out;
}

}  // namespace testutil
