#pragma once

#include <array>
#include <vector>

namespace critgrass {

// Vertex i sits between side i-1 and side i.
struct InscribedPolygon {
  std::vector<double> sides;
  bool degenerate = false;
  bool near_degenerate = false;
  double R = 0;
  std::vector<double> alpha;  // central angles, circular mode
  std::vector<double> angle;  // vertex angles, circular mode
  std::vector<double> pos;    // vertex positions, degenerate mode

  int m() const { return static_cast<int>(sides.size()); }
  double dist(int p, int q) const;
};

InscribedPolygon solve_inscribed_polygon(const std::vector<double>& sides);

std::array<double, 3> cross_ratio_identities(const InscribedPolygon& poly, int p, int q, int t, int s);

}  // namespace critgrass
