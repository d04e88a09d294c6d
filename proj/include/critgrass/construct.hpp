#pragma once

#include <map>
#include <utility>

#include "critgrass/affine_perm.hpp"
#include "critgrass/plabic.hpp"

namespace critgrass {

// Grid graph G_{k,n}: one black vertex per (E, S) in [k] x [k+1, n].
struct LeGraph {
  PlabicGraph g;
  int k = 0;
  std::map<std::pair<int, int>, int> black;  // (E, S) -> vertex index
  std::map<std::pair<int, int>, int> white;  // southwestern white neighbour of black(E, S)
  std::map<std::pair<int, int>, int> sw;     // southwestern edge of black(E, S)
};

LeGraph le_graph(int k, int n);

// Reduced, contracted graph for a loopless f, built from a bridge decomposition.
// last_site picks the rightmost available bridge at each step.
PlabicGraph bridge_graph(const BAP& f, bool last_site = false);

// Contract every interior degree-2 vertex with two distinct interior neighbours.
PlabicGraph contract_all(const PlabicGraph& g);

}  // namespace critgrass
