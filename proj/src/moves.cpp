#include "critgrass/moves.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "critgrass/errors.hpp"

namespace critgrass {

const char* move_name(MoveKind m) {
  switch (m) {
    case MoveKind::ParallelReduction: return "parallel_reduction";
    case MoveKind::LeafRemoval: return "leaf_removal";
    case MoveKind::DipoleRemoval: return "dipole_removal";
    case MoveKind::Contract: return "contract";
    case MoveKind::Uncontract: return "uncontract";
    case MoveKind::SquareMove: return "square_move";
  }
  return "unknown";
}

namespace {

// Id-keyed editable copy of a weighted graph.
template <class T>
struct Editable {
  int n = 0;
  bool relaxed = false;
  std::map<int, Vertex> V;
  std::map<int, std::pair<int, int>> E;
  std::map<int, std::vector<int>> R;
  std::map<int, T> W;
  int next_v = 0, next_e = 0;

  Editable(const PlabicGraph& g, const Weights<T>& w) : n(g.n), relaxed(g.relaxed) {
    for (const auto& v : g.vertices) {
      V[v.id] = v;
      next_v = std::max(next_v, v.id + 1);
    }
    for (int e = 0; e < g.ne(); ++e) {
      const auto& ed = g.edges[e];
      E[ed.id] = {g.vertices[ed.a].id, g.vertices[ed.b].id};
      W[ed.id] = w[e];
      next_e = std::max(next_e, ed.id + 1);
    }
    for (int v = 0; v < g.nv(); ++v) {
      auto& r = R[g.vertices[v].id];
      for (int e : g.rotation[v]) r.push_back(g.edges[e].id);
    }
  }

  int other(int e, int v) const { return E.at(e).first == v ? E.at(e).second : E.at(e).first; }

  void drop_from_rotation(int v, int e) {
    auto& r = R[v];
    r.erase(std::remove(r.begin(), r.end(), e), r.end());
  }

  void remove_edge(int e) {
    auto [a, b] = E.at(e);
    drop_from_rotation(a, e);
    drop_from_rotation(b, e);
    E.erase(e);
    W.erase(e);
  }

  void remove_vertex(int v) {
    require(R[v].empty(), Errc::Internal, "removing a vertex with edges");
    V.erase(v);
    R.erase(v);
  }

  int add_vertex(Color c) {
    int id = next_v++;
    V[id] = {id, c, 0};
    R[id] = {};
    return id;
  }

  int add_edge(int a, int b, const T& w) {
    int id = next_e++;
    E[id] = {a, b};
    W[id] = w;
    return id;
  }

  void retarget(int e, int from, int to) {
    auto& ends = E.at(e);
    if (ends.first == from)
      ends.first = to;
    else
      ends.second = to;
  }

  // Merge y into x through the degree-2 vertex v; x keeps its id.
  void contract(int v) {
    const auto& rv = R.at(v);
    require(V.at(v).boundary == 0 && rv.size() == 2, Errc::PatternMismatch, "contract needs an interior degree-2 vertex");
    int ea = rv[0], eb = rv[1];
    int x = other(ea, v), y = other(eb, v);
    require(x != y, Errc::PatternMismatch, "contract needs two distinct neighbours");
    require(V.at(x).boundary == 0 && V.at(y).boundary == 0, Errc::PatternMismatch, "contract next to the boundary");
    T ratio = W.at(ea) / W.at(eb);
    std::vector<int> ry = R.at(y);
    int pos = static_cast<int>(std::find(ry.begin(), ry.end(), eb) - ry.begin());
    std::vector<int> tail;
    for (size_t i = 1; i < ry.size(); ++i) tail.push_back(ry[(pos + i) % ry.size()]);
    for (int e : tail) {
      W[e] *= ratio;
      retarget(e, y, x);
    }
    auto& rx = R.at(x);
    auto it = std::find(rx.begin(), rx.end(), ea);
    int at = static_cast<int>(it - rx.begin());
    rx.erase(it);
    rx.insert(rx.begin() + at, tail.begin(), tail.end());
    R[y].clear();
    E.erase(ea);
    E.erase(eb);
    W.erase(ea);
    W.erase(eb);
    R[v].clear();
    remove_vertex(v);
    remove_vertex(y);
  }

  WeightedGraph<T> finish() const {
    GraphSpec s;
    s.n = n;
    s.relaxed = relaxed;
    for (const auto& [id, v] : V) s.vertices.push_back({id, v.color, v.boundary});
    for (const auto& [id, ends] : E) s.edges.push_back({id, ends.first, ends.second});
    s.rotation = R;
    WeightedGraph<T> out;
    out.g = build_graph(s);
    for (const auto& e : out.g.edges) out.w.push_back(W.at(e.id));
    return out;
  }
};

Color flip(Color c) { return c == Color::Black ? Color::White : Color::Black; }

bool has_boundary_neighbor(const PlabicGraph& g, int v) {
  for (int e : g.rotation[v])
    if (g.is_boundary(g.other(e, v))) return true;
  return false;
}

bool square_face_ok(const PlabicGraph& g, const std::vector<int>& face, std::vector<int>& verts) {
  if (face.size() != 4) return false;
  verts.clear();
  for (int i = 0; i < 4; ++i) {
    int e = face[i], nxt = face[(i + 1) % 4];
    const auto& a = g.edges[e];
    const auto& b = g.edges[nxt];
    int shared = -1;
    for (int x : {a.a, a.b})
      if (x == b.a || x == b.b) shared = x;
    if (shared < 0) return false;
    verts.push_back(shared);  // vertex between face[i] and face[i+1]
  }
  std::set<int> distinct(verts.begin(), verts.end());
  if (distinct.size() != 4) return false;
  for (int v : verts)
    if (g.is_boundary(v) || g.degree(v) != 3) return false;
  return true;
}

}  // namespace

std::vector<MoveSite> find_sites(const PlabicGraph& g, MoveKind m) {
  std::vector<MoveSite> out;
  switch (m) {
    case MoveKind::ParallelReduction:
      for (int e = 0; e < g.ne(); ++e)
        for (int f = e + 1; f < g.ne(); ++f) {
          auto [a, b] = std::minmax(g.edges[e].a, g.edges[e].b);
          auto [c, d] = std::minmax(g.edges[f].a, g.edges[f].b);
          if (a == c && b == d) {
            MoveSite s;
            s.e1 = e;
            s.e2 = f;
            out.push_back(s);
          }
        }
      break;
    case MoveKind::LeafRemoval:
      for (int v = 0; v < g.nv(); ++v) {
        if (g.is_boundary(v) || g.degree(v) != 1) continue;
        int x = g.other(g.rotation[v][0], v);
        if (g.is_boundary(x) || g.degree(x) < 2 || has_boundary_neighbor(g, x)) continue;
        MoveSite s;
        s.v = v;
        out.push_back(s);
      }
      break;
    case MoveKind::DipoleRemoval:
      for (int e = 0; e < g.ne(); ++e) {
        int a = g.edges[e].a, b = g.edges[e].b;
        if (!g.is_boundary(a) && !g.is_boundary(b) && g.degree(a) == 1 && g.degree(b) == 1) {
          MoveSite s;
          s.e1 = e;
          out.push_back(s);
        }
      }
      break;
    case MoveKind::Contract:
      for (int v = 0; v < g.nv(); ++v) {
        if (g.is_boundary(v) || g.degree(v) != 2) continue;
        int x = g.other(g.rotation[v][0], v), y = g.other(g.rotation[v][1], v);
        if (x == y || g.is_boundary(x) || g.is_boundary(y)) continue;
        MoveSite s;
        s.v = v;
        out.push_back(s);
      }
      break;
    case MoveKind::Uncontract:
      for (int v = 0; v < g.nv(); ++v) {
        if (g.is_boundary(v) || g.degree(v) < 2) continue;
        for (int start = 0; start < g.degree(v); ++start)
          for (int len = 1; len < g.degree(v); ++len) {
            MoveSite s;
            s.v = v;
            s.start = start;
            s.len = len;
            out.push_back(s);
          }
      }
      break;
    case MoveKind::SquareMove:
      for (const auto& cyc : interior_faces(g)) {
        MoveSite s;
        for (auto [e, from] : cyc) s.face.push_back(e);
        std::vector<int> verts;
        if (square_face_ok(g, s.face, verts)) out.push_back(s);
      }
      break;
  }
  return out;
}

template <class T>
WeightedGraph<T> apply_move(const PlabicGraph& g, const Weights<T>& w, MoveKind m, const MoveSite& site) {
  Editable<T> ed(g, w);
  auto vid = [&](int v) { return g.vertices.at(v).id; };
  auto eid = [&](int e) { return g.edges.at(e).id; };
  switch (m) {
    case MoveKind::ParallelReduction: {
      require(site.e1 >= 0 && site.e2 >= 0 && site.e1 != site.e2 && site.e1 < g.ne() && site.e2 < g.ne(),
              Errc::PatternMismatch, "parallel reduction needs two edges");
      auto [a, b] = std::minmax(g.edges[site.e1].a, g.edges[site.e1].b);
      auto [c, d] = std::minmax(g.edges[site.e2].a, g.edges[site.e2].b);
      require(a == c && b == d, Errc::PatternMismatch, "edges are not parallel");
      ed.W[eid(site.e1)] += ed.W[eid(site.e2)];
      ed.remove_edge(eid(site.e2));
      break;
    }
    case MoveKind::LeafRemoval: {
      int u = site.v;
      require(u >= 0 && u < g.nv() && !g.is_boundary(u) && g.degree(u) == 1, Errc::PatternMismatch,
              "leaf removal needs an interior leaf");
      int x = g.other(g.rotation[u][0], u);
      require(!g.is_boundary(x) && g.degree(x) >= 2 && !has_boundary_neighbor(g, x), Errc::PatternMismatch,
              "leaf neighbour must be interior, away from the boundary, degree >= 2");
      for (int e : g.rotation[x]) ed.remove_edge(eid(e));
      ed.remove_vertex(vid(u));
      ed.remove_vertex(vid(x));
      break;
    }
    case MoveKind::DipoleRemoval: {
      int e = site.e1;
      require(e >= 0 && e < g.ne(), Errc::PatternMismatch, "dipole needs an edge");
      int a = g.edges[e].a, b = g.edges[e].b;
      require(!g.is_boundary(a) && !g.is_boundary(b) && g.degree(a) == 1 && g.degree(b) == 1, Errc::PatternMismatch,
              "dipole needs an isolated interior edge");
      ed.remove_edge(eid(e));
      ed.remove_vertex(vid(a));
      ed.remove_vertex(vid(b));
      break;
    }
    case MoveKind::Contract: {
      require(site.v >= 0 && site.v < g.nv(), Errc::PatternMismatch, "contract needs a vertex");
      ed.contract(vid(site.v));
      break;
    }
    case MoveKind::Uncontract: {
      int x = site.v;
      require(x >= 0 && x < g.nv() && !g.is_boundary(x), Errc::PatternMismatch, "uncontract needs an interior vertex");
      int d = g.degree(x);
      require(1 <= site.len && site.len < d && 0 <= site.start && site.start < d, Errc::PatternMismatch,
              "uncontract split out of range");
      int xid = vid(x);
      Color c = g.vertices[x].color;
      int y = ed.add_vertex(c);
      int mid = ed.add_vertex(flip(c));
      int ex = ed.add_edge(xid, mid, T(1));
      int ey = ed.add_edge(mid, y, T(1));
      std::vector<int> arc, rest;
      const auto& rx = ed.R[xid];
      for (int i = 0; i < d; ++i) {
        int e = rx[(site.start + i) % d];
        (i < site.len ? arc : rest).push_back(e);
      }
      for (int e : arc) ed.retarget(e, xid, y);
      std::vector<int> newx = rest;
      newx.insert(newx.begin(), ex);
      ed.R[xid] = newx;
      std::vector<int> newy = arc;
      newy.push_back(ey);
      ed.R[y] = newy;
      ed.R[mid] = {ex, ey};
      break;
    }
    case MoveKind::SquareMove: {
      std::vector<int> verts;
      require(square_face_ok(g, site.face, verts), Errc::PatternMismatch, "square move needs a trivalent 4-face");
      // verts[i] sits between face[i] and face[i+1]; relabel so edge s[i] joins v[i], v[i+1].
      int v[4], s[4];
      for (int i = 0; i < 4; ++i) {
        v[i] = verts[(i + 3) % 4];
        s[i] = site.face[i];
      }
      T a = w[s[0]], b = w[s[1]], c = w[s[2]], dd = w[s[3]];
      T delta = a * c + b * dd;
      T nw[4] = {c / delta, dd / delta, a / delta, b / delta};
      int u[4], leg[4];
      for (int i = 0; i < 4; ++i) u[i] = ed.add_vertex(flip(g.vertices[v[i]].color));
      int f[4];
      for (int i = 0; i < 4; ++i) f[i] = ed.add_edge(u[i], u[(i + 1) % 4], nw[i]);
      for (int i = 0; i < 4; ++i) {
        int vi = vid(v[i]);
        int prev = eid(s[(i + 3) % 4]), next = eid(s[i]);
        std::vector<int> old = ed.R[vi];
        int l = -1;
        for (int e : old)
          if (e != prev && e != next) l = e;
        int spoke = ed.add_edge(vi, u[i], T(1));
        leg[i] = l;
        std::vector<int> ru;
        for (int e : old) {
          if (e == l) ru.push_back(spoke);
          else if (e == prev) ru.push_back(f[(i + 3) % 4]);
          else ru.push_back(f[i]);
        }
        ed.R[u[i]] = ru;
        ed.R[vi] = {l, spoke};
      }
      for (int i = 0; i < 4; ++i) {
        int e = eid(s[i]);
        ed.E.erase(e);
        ed.W.erase(e);
      }
      for (int i = 0; i < 4; ++i) {
        int vi = vid(v[i]);
        int x = ed.other(leg[i], vi);
        if (ed.V.at(x).boundary == 0) ed.contract(vi);
      }
      break;
    }
  }
  return ed.finish();
}

template <class T>
WeightedGraph<T> graph_limit(const PlabicGraph& g, const Weights<T>& w) {
  require(static_cast<int>(w.size()) == g.ne(), Errc::Precondition, "weight vector size mismatch");
  std::vector<char> keep(g.ne());
  for (int e = 0; e < g.ne(); ++e) {
    require(w[e] >= 0, Errc::Precondition, "negative weight");
    keep[e] = w[e] > 0;
  }
  require(has_matching(g, &keep), Errc::LimitNoMatching, "limit graph admits no almost perfect matching");
  Editable<T> ed(g, w);
  ed.relaxed = true;
  for (int e = 0; e < g.ne(); ++e)
    if (!keep[e]) ed.remove_edge(g.edges[e].id);
  return ed.finish();
}

template WeightedGraph<mpq_class> apply_move(const PlabicGraph&, const Weights<mpq_class>&, MoveKind, const MoveSite&);
template WeightedGraph<double> apply_move(const PlabicGraph&, const Weights<double>&, MoveKind, const MoveSite&);
template WeightedGraph<mpq_class> graph_limit(const PlabicGraph&, const Weights<mpq_class>&);
template WeightedGraph<double> graph_limit(const PlabicGraph&, const Weights<double>&);

}  // namespace critgrass
