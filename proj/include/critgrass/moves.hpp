#pragma once

#include <string>
#include <vector>

#include "critgrass/plabic.hpp"

namespace critgrass {

enum class MoveKind { ParallelReduction, LeafRemoval, DipoleRemoval, Contract, Uncontract, SquareMove };

const char* move_name(MoveKind m);

// Indices refer to the graph the move is applied to.
//   ParallelReduction: e1, e2      LeafRemoval: v (the leaf)     DipoleRemoval: e1
//   Contract: v (degree 2)        Uncontract: v, start, len     SquareMove: face (4 edges in face order)
struct MoveSite {
  int v = -1, e1 = -1, e2 = -1;
  int start = 0, len = 0;
  std::vector<int> face;
};

template <class T>
struct WeightedGraph {
  PlabicGraph g;
  Weights<T> w;
};

template <class T>
WeightedGraph<T> apply_move(const PlabicGraph& g, const Weights<T>& w, MoveKind m, const MoveSite& site);

std::vector<MoveSite> find_sites(const PlabicGraph& g, MoveKind m);

template <class T>
WeightedGraph<T> graph_limit(const PlabicGraph& g, const Weights<T>& w);

}  // namespace critgrass
