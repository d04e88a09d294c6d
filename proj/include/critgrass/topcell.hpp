#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "critgrass/construct.hpp"
#include "critgrass/critical.hpp"
#include "critgrass/polygon.hpp"
#include "critgrass/poset.hpp"

namespace critgrass {

struct GroupedPartition {
  int n = 0;
  int shift = 0;                    // labels were relabeled p -> p - shift
  PeriodicPartition blocks;         // after relabeling
  int special = -1;                 // index of the block containing n and n+1
  bool line = false;                // a maximal proper tube is present
  std::vector<std::vector<int>> cyclic() const;  // residues of each block, in order
};

// Relabel p -> p - c on a point of the total order.
CompPoint rotate_point(const CompPoint& x, int c, int n);

GroupedPartition grouped_partition(const CompPoint& x, int k, int n);

// Black vertex index -> number of distinct blocks among its strand endpoints.
std::map<int, int> classify_black_vertices(const LeGraph& L, const Realization& R, const GroupedPartition& B);

struct Reduction {
  PlabicGraph g;
  Weights<double> w;
  int branch = 0;  // 0: no special block, 1: leaf removal, 2: contraction
};

// Reduces the limit graph of the Le realization to a reduced graph for g_B; branch 0 picks automatically.
Reduction reduce_limit_graph(const LeGraph& L, const Realization& R, const Weights<double>& wprime,
                             const GroupedPartition& B, int branch = 0);

std::vector<double> phi(const CompPoint& x, int n);

void check_hypersimplex(const std::vector<double>& y, double tol = 1e-12);

// Gap vectors per collided block, keyed by canonical tube elements.
using Seeds = std::map<std::vector<int>, std::vector<double>>;
// Gap vector for a tube given its sorted elements.
using GapProvider = std::function<std::vector<double>(const std::vector<int>& tube)>;

CompPoint preimage_of(const std::vector<double>& y, const Seeds& seeds = {});
CompPoint preimage_with(const std::vector<double>& y, const GapProvider& gaps);
// A point on the cell of T with φ = y, or nothing when y is outside the image of that cell.
std::optional<CompPoint> build_point_on_face(const std::vector<Tube>& T, const std::vector<double>& y,
                                             std::mt19937_64& rng);

FloatPoint psi(const std::vector<double>& y, int k, const Seeds& seeds = {});

}  // namespace critgrass
