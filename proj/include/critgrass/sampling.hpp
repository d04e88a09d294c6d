#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "critgrass/critical.hpp"
#include "critgrass/parallel.hpp"
#include "critgrass/poset.hpp"

namespace critgrass {

// Random point in the open cell of the proper tubing T.
CompPoint sample_on_face(const AffinePoset& P, const std::vector<Tube>& T, std::mt19937_64& rng);

// Random point of Δ_{2,n}; about a third lie in the interior, the rest on random boundary faces.
std::vector<double> random_hypersimplex_point(int n, std::mt19937_64& rng);

// Coefficients of an interior path converging to x: θ̃_p(t) = Σ_l t^l c[l][p-1].
// With rng, each tube's data is rescaled by a random positive factor.
std::vector<std::vector<double>> level_coefficients(const CompPoint& x, int n, std::mt19937_64* rng = nullptr);
DiffFn path_difference(const std::vector<std::vector<double>>& c, double t);
// Keeps collided pairs accurate by treating the top level as an exact multiple of π.
SineFn path_sine(const std::vector<std::vector<double>>& c, double t);

struct StrataReport {
  std::string method;                          // "phi-grid" for top cells, "support" otherwise
  std::vector<std::vector<Tube>> faces;
  std::vector<int> signature;                  // group id per face, numbered by first appearance
  int groups = 0;
  std::vector<std::pair<int, int>> partial_overlaps;  // face pairs whose images meet without coinciding
  int samples = 0;                             // measb evaluations performed
  double max_residual = 0;                     // largest distance among images declared equal
  bool nonnegative = true;                     // every sampled image was totally nonnegative
};

// Groups the faces of C(P_f) by their measb images.
StrataReport strata_sample(const BAP& f, const std::vector<std::vector<Tube>>& faces, int samples_per_face,
                           uint64_t seed, Exec exec = Exec::Parallel, int grid = 8);
// All proper tubings of P_f, the interior included.
std::vector<std::vector<Tube>> all_faces(const BAP& f, int max_n = 7);

}  // namespace critgrass
