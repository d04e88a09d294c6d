#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "critgrass/affine_perm.hpp"
#include "critgrass/plabic.hpp"
#include "critgrass/poset.hpp"

namespace critgrass {

// θ̃_q − θ̃_p for p < q in [1, n].
using DiffFn = std::function<double(int p, int q)>;
// sin(θ̃_q − θ̃_p), for callers that can evaluate it more accurately than sin(diff(p, q)).
using SineFn = std::function<double(int p, int q)>;

struct VertexChain {
  std::vector<int> chain;   // sorted strand endpoints
  std::vector<int> entry;   // entry[i] = edge carrying the pair (chain[i], chain[i+1 mod r])
};

VertexChain vertex_chain(const PlabicGraph& g, const StrandData& s, const AffinePoset& P, int v);

struct Realization {
  BAP f;
  AffinePoset P;
  PlabicGraph g;
  StrandData strands;
  MatchingTable table;
  std::vector<int> blacks;          // interior black vertices
  std::vector<VertexChain> chains;  // per entry of blacks
};

Realization make_realization(const BAP& f, PlabicGraph g);
// Le graph for top cells, bridge graph otherwise. Thread-safe cache.
const Realization& default_realization(const BAP& f);
// A second realization built differently, when one exists.
const Realization& alternate_realization(const BAP& f);

Weights<double> critical_weights(const PlabicGraph& g, const std::vector<double>& theta);
Weights<double> critical_weights(const PlabicGraph& g, const StrandData& s, const BAP& f, const DiffFn& diff,
                                 const SineFn& sine = {});

FloatPoint meas_critical(const Realization& R, const std::vector<double>& theta);
FloatPoint meas_critical(const BAP& f, const std::vector<double>& theta);
FloatPoint meas_critical_diff(const Realization& R, const DiffFn& diff, const SineFn& sine = {});

// Limit edge weights from the zeta ratios before pruning; zero entries are exact zeros.
Weights<double> limit_weights(const Realization& R, const CompPoint& x, double zero_tol = 1e-12);
FloatPoint measb(const Realization& R, const CompPoint& x);
FloatPoint measb(const BAP& f, const CompPoint& x);

}  // namespace critgrass
