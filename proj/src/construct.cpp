#include "critgrass/construct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "critgrass/errors.hpp"
#include "critgrass/moves.hpp"

namespace critgrass {

LeGraph le_graph(int k, int n) {
  require(2 <= k && k <= n - 1, Errc::Precondition, "top-cell graph needs 2 <= k <= n-1");
  struct P {
    double x, y;
  };
  GraphSpec s;
  s.n = n;
  std::vector<P> pos;
  auto add_v = [&](Color c, int boundary, double x, double y) {
    int id = static_cast<int>(pos.size()) + 1;
    s.vertices.push_back({id, c, boundary});
    pos.push_back({x, y});
    return id;
  };
  std::vector<int> bnd(n + 1);
  for (int p = 1; p <= k; ++p) bnd[p] = add_v(Color::Black, p, n - k, -p);
  for (int p = k + 1; p <= n; ++p) bnd[p] = add_v(Color::Black, p, n - p, -(k + 1));
  std::map<std::pair<int, int>, int> bl, wh;
  for (int i = 1; i <= k; ++i)
    for (int S = k + 1; S <= n; ++S) {
      double x = n - S, y = -i;
      bl[{i, S}] = add_v(Color::Black, 0, x + 0.2, y + 0.2);
      wh[{i, S}] = add_v(Color::White, 0, x - 0.2, y - 0.2);
    }
  std::vector<int> u(k + 1);
  for (int i = 1; i <= k; ++i) u[i] = add_v(Color::White, 0, n - k - 0.5, -i);

  int next_e = 1;
  std::map<std::pair<int, int>, int> swe;
  auto add_e = [&](int a, int b) {
    s.edges.push_back({next_e, a, b});
    return next_e++;
  };
  for (int i = 1; i <= k; ++i)
    for (int S = k + 1; S <= n; ++S) {
      int b = bl[{i, S}];
      swe[{i, S}] = add_e(b, wh[{i, S}]);
      if (i > 1) add_e(b, wh[{i - 1, S}]);
      if (S > k + 1)
        add_e(b, wh[{i, S - 1}]);
      else
        add_e(b, u[i]);
    }
  for (int i = 1; i <= k; ++i) add_e(u[i], bnd[i]);
  for (int S = k + 1; S <= n; ++S) add_e(wh[{k, S}], bnd[S]);

  std::map<int, std::vector<std::pair<double, int>>> around;
  for (const auto& e : s.edges) {
    const P& a = pos[e.a - 1];
    const P& b = pos[e.b - 1];
    around[e.a].emplace_back(std::atan2(b.y - a.y, b.x - a.x), e.id);
    around[e.b].emplace_back(std::atan2(a.y - b.y, a.x - b.x), e.id);
  }
  for (auto& [v, list] : around) {
    std::sort(list.begin(), list.end(), [](auto& l, auto& r) { return l.first > r.first; });
    for (auto& [ang, e] : list) s.rotation[v].push_back(e);
  }

  LeGraph L;
  L.k = k;
  L.g = build_graph(s);
  for (auto& [key, id] : bl) L.black[key] = L.g.vertex_index(id);
  for (auto& [key, id] : wh) L.white[key] = L.g.vertex_index(id);
  for (auto& [key, id] : swe) L.sw[key] = L.g.edge_index(id);
  return L;
}

PlabicGraph contract_all(const PlabicGraph& g0) {
  PlabicGraph g = g0;
  while (true) {
    int site = -1;
    for (int v = 0; v < g.nv() && site < 0; ++v) {
      if (g.is_boundary(v) || g.degree(v) != 2) continue;
      int x = g.other(g.rotation[v][0], v), y = g.other(g.rotation[v][1], v);
      if (x != y && !g.is_boundary(x) && !g.is_boundary(y)) site = v;
    }
    if (site < 0) return g;
    Weights<mpq_class> w(g.ne(), mpq_class(1));
    MoveSite ms;
    ms.v = site;
    g = apply_move(g, w, MoveKind::Contract, ms).g;
  }
}

namespace {

// Swap the values of f at affine positions i < j.
BAP swap_positions(const BAP& f, int i, int j) {
  int n = f.n();
  std::vector<int> w = f.window();
  if (j <= n) {
    std::swap(w[i - 1], w[j - 1]);
  } else {
    int a = w[i - 1], b = w[j - n - 1];
    w[i - 1] = b + n;
    w[j - n - 1] = a - n;
  }
  return make_bap(w);
}

// i < j adjacent up to fixed strands, with i < f(i) < f(j) <= i + n.
std::optional<std::pair<int, int>> bridge_site(const BAP& f, bool last) {
  int n = f.n();
  std::optional<std::pair<int, int>> found;
  auto fixed = [&](int p) { return f.is_loop(mod1(p, n)) || f.is_coloop(mod1(p, n)); };
  for (int i = 1; i <= n; ++i) {
    if (fixed(i)) continue;
    int j = i + 1;
    while (j < i + n && fixed(j)) ++j;
    if (j == i + n) continue;
    int a = f(i), b = f(j);
    if (i < a && a < b && b <= i + n) {
      found = std::make_pair(i, j);
      if (!last) break;
    }
  }
  return found;
}

int max_id(const GraphSpec& s, bool edges) {
  int m = 0;
  if (edges)
    for (auto& e : s.edges) m = std::max(m, e.id);
  else
    for (auto& v : s.vertices) m = std::max(m, v.id);
  return m;
}

struct Leg {
  int W, B, stem;  // stem: edge W-B
};

// Subdivide the leg at boundary vertex p into b_p - W - B - x.
Leg subdivide(GraphSpec& s, int p) {
  int bv = -1;
  for (auto& v : s.vertices)
    if (v.boundary == p) bv = v.id;
  int leg = s.rotation.at(bv).at(0);
  auto it = std::find_if(s.edges.begin(), s.edges.end(), [&](auto& e) { return e.id == leg; });
  int x = it->a == bv ? it->b : it->a;
  int W = max_id(s, false) + 1, B = W + 1;
  s.vertices.push_back({W, Color::White, 0});
  s.vertices.push_back({B, Color::Black, 0});
  int e1 = max_id(s, true) + 1, e2 = e1 + 1, e3 = e1 + 2;
  s.edges.erase(it);
  s.edges.push_back({e1, bv, W});
  s.edges.push_back({e2, W, B});
  s.edges.push_back({e3, B, x});
  s.rotation[bv] = {e1};
  s.rotation[W] = {e1, e2};
  s.rotation[B] = {e2, e3};
  for (int& e : s.rotation[x])
    if (e == leg) e = e3;
  return {W, B, e2};
}

GraphSpec base_spec(const BAP& f) {
  GraphSpec s;
  int n = f.n();
  s.n = n;
  int id = n, eid = 0;
  for (int j = 1; j <= n; ++j) s.vertices.push_back({j, Color::Black, j});
  for (int j = 1; j <= n; ++j) {
    int w = ++id;
    s.vertices.push_back({w, Color::White, 0});
    int e = ++eid;
    s.edges.push_back({e, j, w});
    s.rotation[j] = {e};
    if (f.is_loop(j)) {
      int c = ++id;
      s.vertices.push_back({c, Color::Black, 0});
      int e2 = ++eid;
      s.edges.push_back({e2, w, c});
      s.rotation[w] = {e, e2};
      s.rotation[c] = {e2};
    } else {
      require(f.is_coloop(j), Errc::Internal, "base permutation has a non-trivial strand");
      s.rotation[w] = {e};
    }
  }
  return s;
}

std::optional<GraphSpec> add_bridge(const GraphSpec& s0, int i, int j, const BAP& target) {
  for (int orient = 0; orient < 2; ++orient)
    for (int ra = 0; ra < 2; ++ra)
      for (int rb = 0; rb < 2; ++rb) {
        GraphSpec s = s0;
        Leg li = subdivide(s, i);
        Leg lj = subdivide(s, j);
        int a = orient == 0 ? li.W : li.B;
        int b = orient == 0 ? lj.B : lj.W;
        int e = max_id(s, true) + 1;
        s.edges.push_back({e, a, b});
        auto& rA = s.rotation[a];
        rA.insert(rA.begin() + (ra ? 1 : 2), e);
        auto& rB = s.rotation[b];
        rB.insert(rB.begin() + (rb ? 1 : 2), e);
        try {
          PlabicGraph g = build_graph(s);
          if (trace_strands(g).closed_strands != 0) continue;
          if (bounded_affine_perm_of(g) == target) return s;
        } catch (const Error&) {
        }
      }
  return std::nullopt;
}

}  // namespace

PlabicGraph bridge_graph(const BAP& f, bool last_site) {
  require(f.loopless(), Errc::HasLoop, "bridge graph needs a loopless permutation");
  std::vector<BAP> chain{f};
  std::vector<std::pair<int, int>> sites;
  while (true) {
    auto ij = bridge_site(chain.back(), last_site);
    if (!ij) break;
    sites.push_back(*ij);
    chain.push_back(swap_positions(chain.back(), ij->first, ij->second));
  }
  const BAP& base = chain.back();
  for (int j = 1; j <= f.n(); ++j)
    require(base.is_loop(j) || base.is_coloop(j), Errc::Internal, "bridge decomposition got stuck");
  GraphSpec s = base_spec(base);
  for (int t = static_cast<int>(sites.size()) - 1; t >= 0; --t) {
    auto next = add_bridge(s, sites[t].first, mod1(sites[t].second, f.n()), chain[t]);
    require(next.has_value(), Errc::Internal, "no planar bridge realizes the next permutation");
    s = *next;
  }
  PlabicGraph g = contract_all(build_graph(s));
  for (int v = 0; v < g.nv(); ++v)
    require(g.is_boundary(v) || g.degree(v) >= 2, Errc::Internal, "bridge graph kept an interior leaf");
  require(bounded_affine_perm_of(g) == f, Errc::Internal, "bridge graph has the wrong strand permutation");
  require(is_reduced(g), Errc::Internal, "bridge graph is not reduced");
  return g;
}

}  // namespace critgrass
