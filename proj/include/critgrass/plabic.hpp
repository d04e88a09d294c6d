#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "critgrass/affine_perm.hpp"

namespace critgrass {

enum class Color : unsigned char { Black, White };

struct Vertex {
  int id = 0;
  Color color = Color::Black;
  int boundary = 0;  // p in [1, n] for b_p, 0 for interior
};

struct Edge {
  int id = 0;
  int a = 0, b = 0;  // vertex indices
};

// Rotation lists are clockwise; boundary vertices b_1..b_n sit clockwise on the disk.
class PlabicGraph {
 public:
  int n = 0;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> rotation;
  std::vector<int> bvertex;  // bvertex[p] for p in [1, n]
  bool relaxed = false;      // boundary vertices may have degree 0 (graph limits)

  int nv() const { return static_cast<int>(vertices.size()); }
  int ne() const { return static_cast<int>(edges.size()); }
  int other(int e, int v) const { return edges[e].a == v ? edges[e].b : edges[e].a; }
  bool is_boundary(int v) const { return vertices[v].boundary > 0; }
  bool is_black(int v) const { return vertices[v].color == Color::Black; }
  int degree(int v) const { return static_cast<int>(rotation[v].size()); }
  int position(int v, int e) const;
  int vertex_index(int id) const;
  int edge_index(int id) const;
  bool boundary_edge(int e) const { return is_boundary(edges[e].a) || is_boundary(edges[e].b); }
  std::vector<int> interior_vertices() const;
};

struct GraphSpec {
  struct V {
    int id;
    Color color;
    int boundary;
  };
  struct E {
    int id;
    int a, b;  // vertex ids
  };
  int n = 0;
  std::vector<V> vertices;
  std::vector<E> edges;
  std::map<int, std::vector<int>> rotation;  // vertex id -> edge ids, clockwise
  bool relaxed = false;
};

PlabicGraph build_graph(const GraphSpec& spec);
GraphSpec to_spec(const PlabicGraph& g);
void validate(const PlabicGraph& g);

template <class T>
using Weights = std::vector<T>;  // indexed by edge index

struct StrandData {
  std::vector<int> fbar;                                // fbar[p] for p in [1, n]
  std::vector<std::vector<std::pair<int, int>>> paths;  // per start p: (edge, from vertex)
  std::vector<std::array<int, 2>> edge_label;           // endpoint labels of the two strands, sorted
  int closed_strands = 0;
};

StrandData trace_strands(const PlabicGraph& g);

struct Matching {
  std::vector<int> edges;  // edge indices
  uint32_t boundary = 0;   // bit p-1 set when b_p is matched
};

std::vector<Matching> enumerate_matchings(const PlabicGraph& g, const std::vector<char>* keep = nullptr);
bool has_matching(const PlabicGraph& g, const std::vector<char>* keep = nullptr);

int count_faces(const PlabicGraph& g);
int isolated_components(const PlabicGraph& g);
bool is_contracted(const PlabicGraph& g);
BAP bounded_affine_perm_of(const PlabicGraph& g);
bool is_reduced(const PlabicGraph& g);

// Faces of the augmented graph as cyclic lists of (edge, from vertex), interior faces only.
std::vector<std::vector<std::pair<int, int>>> interior_faces(const PlabicGraph& g);
// Indices of vertices lying on some boundary face.
std::vector<char> on_boundary_face(const PlabicGraph& g);

uint32_t subset_mask(const Subset& s);
Subset mask_subset(uint32_t m);

template <class T>
struct GrassmannPoint {
  int k = 0, n = 0;
  std::vector<Subset> subsets;  // lexicographic
  std::vector<T> coords;
  const T& at(const Subset& I) const;
};

using ExactPoint = GrassmannPoint<mpq_class>;
using FloatPoint = GrassmannPoint<double>;

struct MatchingTable {
  int k = 0, n = 0;
  std::vector<Subset> subsets;
  std::vector<std::vector<int>> edges;
  std::vector<int> subset_index;
};

MatchingTable make_table(const PlabicGraph& g);

template <class T>
GrassmannPoint<T> measure(const MatchingTable& t, const Weights<T>& wt);
template <class T>
GrassmannPoint<T> boundary_measurement(const PlabicGraph& g, const Weights<T>& wt);

bool projective_equal(const ExactPoint& a, const ExactPoint& b);
double projective_distance(const FloatPoint& a, const FloatPoint& b);
FloatPoint to_float(const ExactPoint& p);
FloatPoint normalized(const FloatPoint& p);
bool totally_nonnegative(const FloatPoint& p, double tol = 1e-12);

}  // namespace critgrass
