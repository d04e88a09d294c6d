#include "critgrass/plabic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "critgrass/errors.hpp"

namespace critgrass {

int PlabicGraph::position(int v, int e) const {
  const auto& r = rotation[v];
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (r[i] == e) return i;
  fail(Errc::BadRotation, "edge " + std::to_string(edges[e].id) + " missing at vertex " + std::to_string(vertices[v].id));
}

int PlabicGraph::vertex_index(int id) const {
  for (int i = 0; i < nv(); ++i)
    if (vertices[i].id == id) return i;
  return -1;
}

int PlabicGraph::edge_index(int id) const {
  for (int i = 0; i < ne(); ++i)
    if (edges[i].id == id) return i;
  return -1;
}

std::vector<int> PlabicGraph::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < nv(); ++v)
    if (!is_boundary(v)) out.push_back(v);
  return out;
}

PlabicGraph build_graph(const GraphSpec& spec) {
  PlabicGraph g;
  g.n = spec.n;
  g.relaxed = spec.relaxed;
  require(spec.n >= 1, Errc::Precondition, "graph needs n >= 1");
  std::map<int, int> vix, eix;
  for (const auto& v : spec.vertices) {
    require(!vix.count(v.id), Errc::Parse, "duplicate vertex id " + std::to_string(v.id));
    vix[v.id] = g.nv();
    g.vertices.push_back({v.id, v.color, v.boundary});
  }
  for (const auto& e : spec.edges) {
    require(!eix.count(e.id), Errc::Parse, "duplicate edge id " + std::to_string(e.id));
    require(vix.count(e.a) && vix.count(e.b), Errc::Parse, "edge " + std::to_string(e.id) + " has unknown endpoint");
    eix[e.id] = g.ne();
    g.edges.push_back({e.id, vix[e.a], vix[e.b]});
  }
  g.rotation.assign(g.nv(), {});
  for (const auto& [vid, list] : spec.rotation) {
    require(vix.count(vid), Errc::BadRotation, "rotation for unknown vertex " + std::to_string(vid));
    for (int eid : list) {
      require(eix.count(eid), Errc::BadRotation, "rotation names unknown edge " + std::to_string(eid));
      g.rotation[vix[vid]].push_back(eix[eid]);
    }
  }
  g.bvertex.assign(g.n + 1, -1);
  for (int v = 0; v < g.nv(); ++v) {
    int p = g.vertices[v].boundary;
    if (p == 0) continue;
    require(1 <= p && p <= g.n && g.bvertex[p] == -1, Errc::Parse, "bad boundary index " + std::to_string(p));
    g.bvertex[p] = v;
  }
  for (int p = 1; p <= g.n; ++p) require(g.bvertex[p] >= 0, Errc::Parse, "missing boundary vertex " + std::to_string(p));
  validate(g);
  return g;
}

GraphSpec to_spec(const PlabicGraph& g) {
  GraphSpec s;
  s.n = g.n;
  s.relaxed = g.relaxed;
  for (const auto& v : g.vertices) s.vertices.push_back({v.id, v.color, v.boundary});
  for (const auto& e : g.edges) s.edges.push_back({e.id, g.vertices[e.a].id, g.vertices[e.b].id});
  for (int v = 0; v < g.nv(); ++v) {
    auto& r = s.rotation[g.vertices[v].id];
    for (int e : g.rotation[v]) r.push_back(g.edges[e].id);
  }
  return s;
}

namespace {

// Augmented rotation system on half-edges h = 2e + side; arcs p -> p+1 are appended after the graph edges.
struct Augmented {
  int ne = 0;  // graph edges
  int total = 0;
  std::vector<int> end_a, end_b;
  std::vector<std::vector<int>> rot;  // per vertex: half-edges
  std::vector<int> vert, pos;         // per half-edge

  explicit Augmented(const PlabicGraph& g) {
    ne = g.ne();
    total = ne + g.n;
    end_a.resize(total);
    end_b.resize(total);
    for (int e = 0; e < ne; ++e) {
      end_a[e] = g.edges[e].a;
      end_b[e] = g.edges[e].b;
    }
    for (int p = 1; p <= g.n; ++p) {
      end_a[ne + p - 1] = g.bvertex[p];
      end_b[ne + p - 1] = g.bvertex[p % g.n + 1];
    }
    rot.assign(g.nv(), {});
    for (int v = 0; v < g.nv(); ++v) {
      for (int e : g.rotation[v]) rot[v].push_back(2 * e + (g.edges[e].a == v ? 0 : 1));
      int p = g.vertices[v].boundary;
      if (p > 0) {
        int prev = ne + (p == 1 ? g.n : p - 1) - 1;
        int cur = ne + p - 1;
        rot[v].push_back(2 * prev + 1);
        rot[v].push_back(2 * cur);
      }
    }
    vert.assign(2 * total, -1);
    pos.assign(2 * total, -1);
    for (int v = 0; v < g.nv(); ++v)
      for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
        vert[rot[v][i]] = v;
        pos[rot[v][i]] = i;
      }
  }

  int next(int h) const {
    int t = h ^ 1;
    int w = vert[t];
    return rot[w][(pos[t] + 1) % rot[w].size()];
  }

  // orbit id per half-edge
  std::vector<int> faces(int& count) const {
    std::vector<int> face(2 * total, -1);
    count = 0;
    for (int h = 0; h < 2 * total; ++h) {
      if (face[h] >= 0) continue;
      int x = h;
      while (face[x] < 0) {
        face[x] = count;
        x = next(x);
      }
      ++count;
    }
    return face;
  }
};

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct FaceCensus {
  std::vector<int> comp;  // per vertex root
  std::map<int, int> faces_per_comp, verts_per_comp, edges_per_comp;
};

FaceCensus census(const PlabicGraph& g, const Augmented& aug) {
  DSU d(g.nv());
  for (int e = 0; e < aug.total; ++e) d.unite(aug.end_a[e], aug.end_b[e]);
  FaceCensus c;
  c.comp.resize(g.nv());
  for (int v = 0; v < g.nv(); ++v) {
    c.comp[v] = d.find(v);
    c.verts_per_comp[c.comp[v]]++;
  }
  for (int e = 0; e < aug.total; ++e) c.edges_per_comp[c.comp[aug.end_a[e]]]++;
  int nf = 0;
  auto face = aug.faces(nf);
  std::vector<int> face_comp(nf, -1);
  for (int h = 0; h < 2 * aug.total; ++h) face_comp[face[h]] = c.comp[aug.vert[h]];
  for (int f = 0; f < nf; ++f) c.faces_per_comp[face_comp[f]]++;
  for (auto& [r, vcount] : c.verts_per_comp)
    if (!c.edges_per_comp.count(r)) c.faces_per_comp[r] = 1;
  return c;
}

}  // namespace

void validate(const PlabicGraph& g) {
  for (const auto& e : g.edges)
    require(g.vertices[e.a].color != g.vertices[e.b].color, Errc::NonBipartite,
            "edge " + std::to_string(e.id) + " joins equal colors");
  std::vector<std::vector<int>> inc(g.nv());
  for (int e = 0; e < g.ne(); ++e) {
    inc[g.edges[e].a].push_back(e);
    inc[g.edges[e].b].push_back(e);
  }
  for (int v = 0; v < g.nv(); ++v) {
    if (g.is_boundary(v)) {
      require(g.is_black(v), Errc::BoundaryDegree, "boundary vertex " + std::to_string(g.vertices[v].id) + " is not black");
      require(inc[v].size() == 1 || (g.relaxed && inc[v].empty()), Errc::BoundaryDegree,
              "boundary vertex " + std::to_string(g.vertices[v].id) + " has degree " + std::to_string(inc[v].size()));
    }
    std::vector<int> a = inc[v], b = g.rotation[v];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    require(a == b, Errc::BadRotation, "rotation at vertex " + std::to_string(g.vertices[v].id) + " does not match its edges");
  }
  Augmented aug(g);
  FaceCensus c = census(g, aug);
  for (auto& [r, vcount] : c.verts_per_comp) {
    int chi = vcount - c.edges_per_comp[r] + c.faces_per_comp[r];
    require(chi == 2, Errc::NonPlanarEmbedding, "component Euler characteristic " + std::to_string(chi));
  }
}

StrandData trace_strands(const PlabicGraph& g) {
  StrandData s;
  s.fbar.assign(g.n + 1, 0);
  s.paths.assign(g.n + 1, {});
  s.edge_label.assign(g.ne(), {-1, -1});
  std::vector<int> start_of(2 * g.ne(), -1);  // dart (e, from a) = 2e, (e, from b) = 2e+1
  auto dart = [&](int e, int from) { return 2 * e + (g.edges[e].a == from ? 0 : 1); };
  auto step = [&](int e, int from, int& ne_, int& nfrom) {
    int w = g.other(e, from);
    int i = g.position(w, e), d = g.degree(w);
    int delta = g.is_black(w) ? -1 : 1;
    ne_ = g.rotation[w][((i + delta) % d + d) % d];
    nfrom = w;
  };
  for (int p = 1; p <= g.n; ++p) {
    int v = g.bvertex[p];
    if (g.rotation[v].empty()) {
      s.fbar[p] = p;
      continue;
    }
    int e = g.rotation[v][0], from = v;
    int guard = 2 * g.ne() + 2;
    while (true) {
      require(guard-- > 0, Errc::StrandCycle, "strand from " + std::to_string(p) + " does not terminate");
      s.paths[p].emplace_back(e, from);
      start_of[dart(e, from)] = p;
      int w = g.other(e, from);
      if (g.is_boundary(w)) {
        s.fbar[p] = g.vertices[w].boundary;
        break;
      }
      step(e, from, e, from);
    }
  }
  std::vector<char> seen(2 * g.ne(), 0);
  for (int d = 0; d < 2 * g.ne(); ++d) seen[d] = start_of[d] >= 0;
  for (int d = 0; d < 2 * g.ne(); ++d) {
    if (seen[d]) continue;
    ++s.closed_strands;
    int e = d / 2, from = (d % 2 == 0) ? g.edges[e].a : g.edges[e].b;
    while (!seen[dart(e, from)]) {
      seen[dart(e, from)] = 1;
      step(e, from, e, from);
    }
  }
  for (int e = 0; e < g.ne(); ++e) {
    int p = start_of[2 * e], q = start_of[2 * e + 1];
    if (p < 0 || q < 0) continue;
    int a = s.fbar[p], b = s.fbar[q];
    s.edge_label[e] = {std::min(a, b), std::max(a, b)};
  }
  return s;
}

std::vector<Matching> enumerate_matchings(const PlabicGraph& g, const std::vector<char>* keep) {
  auto kept = [&](int e) { return keep == nullptr || (*keep)[e]; };
  std::vector<std::vector<int>> inc(g.nv());
  for (int e = 0; e < g.ne(); ++e) {
    if (!kept(e)) continue;
    inc[g.edges[e].a].push_back(e);
    inc[g.edges[e].b].push_back(e);
  }
  std::vector<int> order = g.interior_vertices();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inc[a].size() < inc[b].size(); });
  std::vector<char> covered(g.nv(), 0);
  std::vector<int> cur;
  std::vector<Matching> out;
  auto rec = [&](auto&& self, size_t at) -> void {
    while (at < order.size() && covered[order[at]]) ++at;
    if (at == order.size()) {
      Matching m;
      m.edges = cur;
      for (int e : cur) {
        int a = g.edges[e].a, b = g.edges[e].b;
        if (g.is_boundary(a)) m.boundary |= 1u << (g.vertices[a].boundary - 1);
        if (g.is_boundary(b)) m.boundary |= 1u << (g.vertices[b].boundary - 1);
      }
      out.push_back(std::move(m));
      return;
    }
    int v = order[at];
    covered[v] = 1;
    for (int e : inc[v]) {
      int u = g.other(e, v);
      if (covered[u]) continue;
      covered[u] = 1;
      cur.push_back(e);
      self(self, at + 1);
      cur.pop_back();
      covered[u] = 0;
    }
    covered[v] = 0;
  };
  rec(rec, 0);
  for (auto& m : out)
    std::sort(m.edges.begin(), m.edges.end(), [&](int a, int b) { return g.edges[a].id < g.edges[b].id; });
  std::sort(out.begin(), out.end(), [&](const Matching& x, const Matching& y) {
    return std::lexicographical_compare(x.edges.begin(), x.edges.end(), y.edges.begin(), y.edges.end(),
                                        [&](int a, int b) { return g.edges[a].id < g.edges[b].id; });
  });
  return out;
}

// A matching covering a white set and one covering an interior black set combine into
// one covering both (Mendelsohn-Dulmage), so two Kuhn passes decide existence.
bool has_matching(const PlabicGraph& g, const std::vector<char>* keep) {
  auto kept = [&](int e) { return keep == nullptr || (*keep)[e]; };
  std::vector<std::vector<int>> adj(g.nv());
  for (int e = 0; e < g.ne(); ++e) {
    if (!kept(e)) continue;
    adj[g.edges[e].a].push_back(g.edges[e].b);
    adj[g.edges[e].b].push_back(g.edges[e].a);
  }
  auto saturate = [&](bool left_white) {
    std::vector<int> mate(g.nv(), -1);
    for (int v = 0; v < g.nv(); ++v) {
      bool left = left_white ? !g.is_black(v) : (g.is_black(v) && !g.is_boundary(v));
      if (!left) continue;
      std::vector<char> vis(g.nv(), 0);
      auto aug = [&](auto&& self, int x) -> bool {
        for (int y : adj[x]) {
          if (vis[y]) continue;
          vis[y] = 1;
          if (mate[y] < 0 || self(self, mate[y])) {
            mate[y] = x;
            return true;
          }
        }
        return false;
      };
      if (!aug(aug, v)) return false;
    }
    return true;
  };
  return saturate(true) && saturate(false);
}

int count_faces(const PlabicGraph& g) {
  Augmented aug(g);
  FaceCensus c = census(g, aug);
  int total = 0;
  for (auto& [r, f] : c.faces_per_comp) total += f - 1;
  return total;
}

int isolated_components(const PlabicGraph& g) {
  Augmented aug(g);
  FaceCensus c = census(g, aug);
  return static_cast<int>(c.verts_per_comp.size()) - 1;
}

std::vector<char> on_boundary_face(const PlabicGraph& g) {
  Augmented aug(g);
  int nf = 0;
  auto face = aug.faces(nf);
  std::vector<char> touches(nf, 0), out(g.nv(), 0);
  for (int h = 2 * aug.ne; h < 2 * aug.total; ++h) touches[face[h]] = 1;
  for (int h = 0; h < 2 * aug.total; ++h)
    if (touches[face[h]]) out[aug.vert[h]] = 1;
  return out;
}

std::vector<std::vector<std::pair<int, int>>> interior_faces(const PlabicGraph& g) {
  Augmented aug(g);
  int nf = 0;
  auto face = aug.faces(nf);
  std::vector<char> touches(nf, 0), done(nf, 0);
  for (int h = 2 * aug.ne; h < 2 * aug.total; ++h) touches[face[h]] = 1;
  std::vector<std::vector<std::pair<int, int>>> out;
  for (int h = 0; h < 2 * aug.ne; ++h) {
    int f = face[h];
    if (touches[f] || done[f]) continue;
    done[f] = 1;
    std::vector<std::pair<int, int>> cyc;
    int x = h;
    do {
      cyc.emplace_back(x / 2, aug.vert[x]);
      x = aug.next(x);
    } while (x != h);
    out.push_back(std::move(cyc));
  }
  return out;
}

bool is_contracted(const PlabicGraph& g) {
  auto bf = on_boundary_face(g);
  for (int v = 0; v < g.nv(); ++v)
    if (!g.is_boundary(v) && g.degree(v) == 2 && !bf[v]) return false;
  return true;
}

BAP bounded_affine_perm_of(const PlabicGraph& g) {
  StrandData s = trace_strands(g);
  auto ms = enumerate_matchings(g);
  require(!ms.empty(), Errc::NoMatching, "graph admits no almost perfect matching");
  int k = std::popcount(ms.front().boundary);
  uint32_t all = ~0u, any = 0;
  for (const auto& m : ms) {
    require(std::popcount(m.boundary) == k, Errc::Internal, "matching boundary sizes differ");
    all &= m.boundary;
    any |= m.boundary;
  }
  int n = g.n;
  std::vector<int> w(n);
  for (int j = 1; j <= n; ++j) {
    int v = s.fbar[j];
    if (v != j) {
      w[j - 1] = v > j ? v : v + n;
    } else {
      uint32_t bit = 1u << (j - 1);
      if (!(any & bit))
        w[j - 1] = j;
      else if (all & bit)
        w[j - 1] = j + n;
      else
        fail(Errc::Internal, "fixed point " + std::to_string(j) + " is neither loop nor coloop");
    }
  }
  BAP f = make_bap(w);
  require(f.k() == k, Errc::Internal, "strand permutation disagrees with matching size");
  return f;
}

bool is_reduced(const PlabicGraph& g) {
  BAP f = bounded_affine_perm_of(g);
  if (isolated_components(g) != 0) return false;
  int k = f.k(), n = f.n();
  return count_faces(g) == k * (n - k) + 1 - length(f);
}

uint32_t subset_mask(const Subset& s) {
  uint32_t m = 0;
  for (int x : s) m |= 1u << (x - 1);
  return m;
}

Subset mask_subset(uint32_t m) {
  Subset s;
  for (int i = 0; i < 32; ++i)
    if (m & (1u << i)) s.push_back(i + 1);
  return s;
}

template <class T>
const T& GrassmannPoint<T>::at(const Subset& I) const {
  auto it = std::lower_bound(subsets.begin(), subsets.end(), I);
  require(it != subsets.end() && *it == I, Errc::OutOfBounds, "subset not a k-subset of [n]");
  return coords[it - subsets.begin()];
}

MatchingTable make_table(const PlabicGraph& g) {
  auto ms = enumerate_matchings(g);
  require(!ms.empty(), Errc::NoMatching, "graph admits no almost perfect matching");
  MatchingTable t;
  t.n = g.n;
  t.k = std::popcount(ms.front().boundary);
  t.subsets = k_subsets(t.k, t.n);
  std::map<uint32_t, int> index;
  for (size_t i = 0; i < t.subsets.size(); ++i) index[subset_mask(t.subsets[i])] = static_cast<int>(i);
  for (auto& m : ms) {
    require(std::popcount(m.boundary) == t.k, Errc::Internal, "matching boundary sizes differ");
    t.subset_index.push_back(index.at(m.boundary));
    t.edges.push_back(std::move(m.edges));
  }
  return t;
}

template <class T>
GrassmannPoint<T> measure(const MatchingTable& t, const Weights<T>& wt) {
  GrassmannPoint<T> p;
  p.k = t.k;
  p.n = t.n;
  p.subsets = t.subsets;
  p.coords.assign(t.subsets.size(), T(0));
  for (size_t m = 0; m < t.edges.size(); ++m) {
    T prod(1);
    for (int e : t.edges[m]) {
      if (wt[e] == 0) {
        prod = 0;
        break;
      }
      prod *= wt[e];
    }
    p.coords[t.subset_index[m]] += prod;
  }
  bool nonzero = false;
  for (const auto& c : p.coords)
    if (c != 0) nonzero = true;
  require(nonzero, Errc::NoMatching, "every matching has a zero-weight edge");
  return p;
}

template <class T>
GrassmannPoint<T> boundary_measurement(const PlabicGraph& g, const Weights<T>& wt) {
  require(static_cast<int>(wt.size()) == g.ne(), Errc::Precondition, "weight vector size mismatch");
  for (const auto& w : wt) require(w > 0, Errc::Precondition, "weights must be strictly positive");
  return measure(make_table(g), wt);
}

template struct GrassmannPoint<mpq_class>;
template struct GrassmannPoint<double>;
template GrassmannPoint<mpq_class> measure(const MatchingTable&, const Weights<mpq_class>&);
template GrassmannPoint<double> measure(const MatchingTable&, const Weights<double>&);
template GrassmannPoint<mpq_class> boundary_measurement(const PlabicGraph&, const Weights<mpq_class>&);
template GrassmannPoint<double> boundary_measurement(const PlabicGraph&, const Weights<double>&);

bool projective_equal(const ExactPoint& a, const ExactPoint& b) {
  if (a.k != b.k || a.n != b.n || a.coords.size() != b.coords.size()) return false;
  size_t r = 0;
  while (r < a.coords.size() && a.coords[r] == 0) ++r;
  if (r == a.coords.size() || b.coords[r] == 0) return false;
  for (size_t i = 0; i < a.coords.size(); ++i)
    if (a.coords[i] * b.coords[r] != b.coords[i] * a.coords[r]) return false;
  return true;
}

FloatPoint normalized(const FloatPoint& p) {
  FloatPoint q = p;
  double m = 0;
  for (double c : p.coords)
    if (std::abs(c) > std::abs(m)) m = c;
  require(m != 0, Errc::Precondition, "zero vector is not projective");
  for (double& c : q.coords) c /= m;
  return q;
}

double projective_distance(const FloatPoint& a, const FloatPoint& b) {
  require(a.coords.size() == b.coords.size(), Errc::Precondition, "point shapes differ");
  FloatPoint x = normalized(a), y = normalized(b);
  double d = 0;
  for (size_t i = 0; i < x.coords.size(); ++i) d = std::max(d, std::abs(x.coords[i] - y.coords[i]));
  return d;
}

FloatPoint to_float(const ExactPoint& p) {
  FloatPoint q;
  q.k = p.k;
  q.n = p.n;
  q.subsets = p.subsets;
  for (const auto& c : p.coords) q.coords.push_back(c.get_d());
  return q;
}

bool totally_nonnegative(const FloatPoint& p, double tol) {
  FloatPoint q = normalized(p);
  for (double c : q.coords)
    if (c < -tol) return false;
  return true;
}

}  // namespace critgrass
