#include "critgrass/topcell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "critgrass/errors.hpp"
#include "critgrass/moves.hpp"

namespace critgrass {

namespace {

constexpr double kZero = 1e-14;
constexpr double kOne = 1e-12;

const Tube* full_tube(const CompPoint& x, int n) {
  for (const auto& t : x.tubing)
    if (t.size() == n) return &t;
  return nullptr;
}

std::pair<int, int> as_interval(const std::vector<int>& elems) {
  for (size_t i = 1; i < elems.size(); ++i)
    require(elems[i] == elems[i - 1] + 1, Errc::Internal, "block of the total order is not an interval");
  return {elems.front(), elems.back() + 1};
}

}  // namespace

std::vector<std::vector<int>> GroupedPartition::cyclic() const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < blocks.size(); ++i) out.push_back(blocks.elements(i));
  return out;
}

CompPoint rotate_point(const CompPoint& x, int c, int n) {
  std::vector<Tube> T;
  std::map<std::vector<int>, std::vector<double>> data;
  for (const auto& t : x.tubing) {
    std::vector<int> e = t.elems;
    for (int& v : e) v -= c;
    Tube r = canonical_tube(e, n);
    T.push_back(r);
    data[r.elems] = x.data.at(t.elems);
  }
  std::vector<double> whole(n);
  double base = theta_tilde(x.whole, 1 + c);
  for (int p = 1; p <= n; ++p) whole[p - 1] = theta_tilde(x.whole, p + c) - base;
  return make_comp_point(total_order(n), T, whole, data);
}

GroupedPartition grouped_partition(const CompPoint& x, int k, int n) {
  std::vector<std::pair<int, int>> iv;
  GroupedPartition B;
  B.n = n;
  if (const Tube* t = full_tube(x, n)) {
    B.line = true;
    for (const auto& c : children(x, t->elems, n)) iv.push_back(as_interval(c));
  } else {
    for (const auto& c : whole_partition(total_order(n), x.whole)) iv.push_back(as_interval(c.elems));
  }
  PeriodicPartition raw(n, iv);
  int c = 0;
  while (c < n && raw.block_of(k + c) == raw.block_of(k + 1 + c)) ++c;
  require(c < n, Errc::Internal, "partition has a single block");
  for (auto& [a, b] : iv) {
    a -= c;
    b -= c;
  }
  B.shift = c;
  B.blocks = PeriodicPartition(n, iv);
  for (int i = 0; i < B.blocks.size(); ++i) {
    auto [a, b] = B.blocks.blocks()[i];
    if (a <= n && b >= n + 2) B.special = i;
  }
  return B;
}

std::map<int, int> classify_black_vertices(const LeGraph& L, const Realization& R, const GroupedPartition& B) {
  std::map<int, int> type;
  std::set<int> le_blacks;
  for (auto& [key, v] : L.black) le_blacks.insert(v);
  for (size_t i = 0; i < R.blacks.size(); ++i) {
    int v = R.blacks[i];
    require(le_blacks.count(v), Errc::Precondition, "realization is not the Le graph");
    std::set<int> bl;
    for (int p : R.chains[i].chain) bl.insert(B.blocks.block_of(p));
    type[v] = static_cast<int>(bl.size());
  }
  return type;
}

namespace {

struct Work {
  PlabicGraph g;
  Weights<double> w;

  int vid(int index) const { return g.vertices[index].id; }
  int vix(int id) const { return g.vertex_index(id); }
  void apply(MoveKind m, const MoveSite& s) {
    auto r = apply_move(g, w, m, s);
    g = std::move(r.g);
    w = std::move(r.w);
  }
  void contract(int id) {
    int v = vix(id);
    require(v >= 0 && g.degree(v) == 2, Errc::Internal, "contraction target is not of degree 2");
    int x = g.other(g.rotation[v][0], v), y = g.other(g.rotation[v][1], v);
    require(x != y, Errc::Internal, "contraction would create a self-loop");
    MoveSite s;
    s.v = v;
    apply(MoveKind::Contract, s);
  }
};

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

Reduction reduce_limit_graph(const LeGraph& L, const Realization& R, const Weights<double>& wprime,
                             const GroupedPartition& B, int branch) {
  auto lim = graph_limit(L.g, wprime);
  Reduction out;
  if (B.special < 0) {
    require(branch == 0, Errc::BranchUnavailable, "no special block");
    out.g = std::move(lim.g);
    out.w = std::move(lim.w);
    return out;
  }
  int k = L.k;
  auto sp = B.blocks.elements(B.special);
  bool has_k = std::count(sp.begin(), sp.end(), k), has_k1 = std::count(sp.begin(), sp.end(), k + 1);
  require(!(has_k && has_k1), Errc::BranchUnavailable, "k and k+1 share the special block");
  if (branch == 0) branch = has_k ? 2 : 1;
  require(branch != 1 || !has_k, Errc::BranchUnavailable, "leaf-removal branch needs k outside the special block");
  require(branch != 2 || !has_k1, Errc::BranchUnavailable, "contraction branch needs k+1 outside the special block");
  out.branch = branch;

  auto types = classify_black_vertices(L, R, B);
  std::vector<std::pair<int, int>> type1, type2;  // keys
  for (auto& [key, v] : L.black) {
    int t = types.at(v);
    if (t == 1) type1.push_back(key);
    if (t == 2) type2.push_back(key);
  }
  Work W{std::move(lim.g), std::move(lim.w)};
  auto id_of = [&](int index) { return L.g.vertices[index].id; };

  if (branch == 1) {
    // Bottom-left first, then up and to the right.
    std::sort(type1.begin(), type1.end(), [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second > b.second; });
    while (!type1.empty()) {
      bool done = false;
      for (size_t t = 0; t < type1.size() && !done; ++t) {
        int b = W.vix(id_of(L.black.at(type1[t])));
        int u = W.vix(id_of(L.white.at(type1[t])));
        require(b >= 0 && u >= 0, Errc::Internal, "type-1 vertex vanished early");
        if (W.g.degree(u) != 1 || W.g.other(W.g.rotation[u][0], u) != b) continue;
        MoveSite s;
        if (W.g.degree(b) == 1) {
          s.e1 = W.g.rotation[u][0];
          W.apply(MoveKind::DipoleRemoval, s);
        } else {
          s.v = u;
          W.apply(MoveKind::LeafRemoval, s);
        }
        type1.erase(type1.begin() + t);
        done = true;
      }
      require(done, Errc::Internal, "no type-1 vertex has a leaf neighbour");
    }
  } else {
    for (auto key : type1) {
      int b = L.black.at(key);
      int sw = L.sw.at(key);
      double rest = 0;
      for (int e : L.g.rotation[b])
        if (e != sw) rest += wprime[e];
      require(close(wprime[sw], rest), Errc::Internal, "southwestern weight is not the sum of the others");
    }
    for (auto key : type2) W.contract(id_of(L.black.at(key)));
    // Top-right first, then inwards.
    std::sort(type1.begin(), type1.end());
    while (!type1.empty()) {
      bool done = false;
      for (size_t t = 0; t < type1.size() && !done; ++t) {
        int id = id_of(L.black.at(type1[t]));
        int b = W.vix(id);
        require(b >= 0, Errc::Internal, "type-1 vertex vanished early");
        const auto& rot = W.g.rotation[b];
        if (rot.size() == 3) {
          int pair[2] = {-1, -1};
          for (int i = 0; i < 3 && pair[0] < 0; ++i)
            for (int j = i + 1; j < 3; ++j)
              if (W.g.other(rot[i], b) == W.g.other(rot[j], b)) {
                pair[0] = rot[i];
                pair[1] = rot[j];
                break;
              }
          if (pair[0] < 0) continue;
          MoveSite s;
          s.e1 = pair[0];
          s.e2 = pair[1];
          W.apply(MoveKind::ParallelReduction, s);
          b = W.vix(id);
        }
        if (W.g.degree(b) != 2) continue;
        int e0 = W.g.rotation[b][0], e1 = W.g.rotation[b][1];
        if (W.g.other(e0, b) == W.g.other(e1, b)) continue;
        require(close(W.w[e0], W.w[e1]), Errc::Internal, "type-1 vertex has unequal weights after reduction");
        W.contract(id);
        type1.erase(type1.begin() + t);
        done = true;
      }
      require(done, Errc::Internal, "no type-1 vertex is ready for contraction");
    }
  }
  out.g = std::move(W.g);
  out.w = std::move(W.w);
  return out;
}

std::vector<double> phi(const CompPoint& x, int n) {
  std::vector<int> chain(n);
  std::iota(chain.begin(), chain.end(), 1);
  auto z = zeta(total_order(n), x, chain);
  double s = std::accumulate(z.begin(), z.end(), 0.0);
  for (double& v : z) v *= 2 / s;
  return z;
}

void check_hypersimplex(const std::vector<double>& y, double tol) {
  require(y.size() >= 2, Errc::NotInHypersimplex, "y needs at least two coordinates");
  double s = 0;
  for (double v : y) {
    require(std::isfinite(v) && v >= -tol && v <= 1 + tol, Errc::NotInHypersimplex, "coordinate outside [0, 1]");
    s += v;
  }
  require(std::abs(s - 2) <= tol * static_cast<double>(y.size()), Errc::NotInHypersimplex, "coordinates do not sum to 2");
}

namespace {

std::vector<double> positions(const std::vector<double>& gaps) {
  std::vector<double> x(gaps.size() + 1, 0.0);
  for (size_t i = 0; i < gaps.size(); ++i) x[i + 1] = x[i] + gaps[i];
  return x;
}

// Consecutive runs of elements joined by zero gaps.
std::vector<std::vector<int>> zero_runs(const std::vector<int>& elems, const std::vector<double>& gaps) {
  std::vector<std::vector<int>> runs{{elems[0]}};
  for (size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] > kZero)
      runs.push_back({elems[i + 1]});
    else
      runs.back().push_back(elems[i + 1]);
  }
  return runs;
}

struct Builder {
  const AffinePoset& P;
  const GapProvider& gaps;
  std::vector<Tube> T;
  std::map<std::vector<int>, std::vector<double>> data;

  void add(const std::vector<int>& tube, const std::vector<double>& g) {
    require(g.size() + 1 == tube.size(), Errc::Precondition, "gap vector has wrong length for tube " + tube_key({tube, false}));
    double s = 0;
    for (double v : g) {
      require(v >= 0 && std::isfinite(v), Errc::Precondition, "gaps must be nonnegative");
      s += v;
    }
    require(s > 0, Errc::Precondition, "gap vector vanishes on tube " + tube_key({tube, false}));
    Tube c = canonical_tube(tube, P.n());
    T.push_back(c);
    data[c.elems] = normalize_on_tube(P, tube, positions(g));
    for (const auto& run : zero_runs(tube, g))
      if (run.size() > 1) descend(run);
  }
  void descend(const std::vector<int>& tube) { add(tube, gaps(tube)); }
};

// Line stratum with maximal tube [M+1, M+n], or circle stratum when M is absent.
CompPoint assemble(const std::vector<double>& y, std::optional<int> M, const GapProvider& gaps, double two_gap) {
  int n = static_cast<int>(y.size());
  AffinePoset P = total_order(n);
  Builder bld{P, gaps, {}, {}};
  auto yz = [&](int p) { return y[mod1(p, n) - 1] <= kZero ? 0.0 : y[mod1(p, n) - 1]; };
  std::vector<double> whole(n);
  if (M) {
    require(y[*M - 1] >= 1 - kOne, Errc::Precondition, "line stratum needs y_M = 1");
    std::vector<int> tau(n);
    std::iota(tau.begin(), tau.end(), *M + 1);
    std::vector<double> g(n - 1);
    for (int j = 0; j + 1 < n; ++j) g[j] = yz(tau[j]);
    bld.add(tau, g);
    int e1 = tau[((1 - tau[0]) % n + n) % n];
    double c = std::numbers::pi * (e1 - 1) / n;
    for (int p = 1; p <= n; ++p) {
      int e = tau[((p - tau[0]) % n + n) % n];
      whole[p - 1] = c - std::numbers::pi * (e - p) / n;
    }
  } else {
    std::vector<int> nz;
    for (int p = 1; p <= n; ++p)
      if (yz(p) > 0) nz.push_back(p);
    int m = static_cast<int>(nz.size());
    require(m >= 2, Errc::NotInHypersimplex, "y has fewer than two nonzero coordinates");
    std::map<int, double> jump;
    if (m == 2) {
      jump[nz[0]] = two_gap;
      jump[nz[1]] = std::numbers::pi - two_gap;
    } else {
      std::vector<double> sides;
      for (int p : nz) sides.push_back(y[p - 1]);
      auto poly = solve_inscribed_polygon(sides);
      require(!poly.degenerate, Errc::Precondition, "circle stratum needs a non-degenerate polygon");
      for (int i = 0; i < m; ++i) jump[nz[i]] = poly.alpha[i] / 2;
    }
    double th = 0;
    for (int p = 1; p <= n; ++p) {
      whole[p - 1] = th;
      if (jump.count(p)) th += jump[p];
    }
    int s = 1;
    while (yz(s - 1) == 0) ++s;
    std::vector<int> run{s};
    for (int p = s; p < s + n - 1; ++p) {
      if (yz(p) > 0) {
        if (run.size() > 1) bld.descend(run);
        run = {p + 1};
      } else {
        run.push_back(p + 1);
      }
    }
    if (run.size() > 1) bld.descend(run);
  }
  return make_comp_point(P, bld.T, whole, bld.data);
}

std::optional<int> line_index(const std::vector<double>& y) {
  for (int p = 1; p <= static_cast<int>(y.size()); ++p)
    if (y[p - 1] >= 1 - kOne) return p;
  return std::nullopt;
}

}  // namespace

CompPoint preimage_with(const std::vector<double>& y, const GapProvider& gaps) {
  check_hypersimplex(y);
  return assemble(y, line_index(y), gaps, std::numbers::pi / 2);
}

CompPoint preimage_of(const std::vector<double>& y, const Seeds& seeds) {
  int n = static_cast<int>(y.size());
  GapProvider g = [&](const std::vector<int>& tube) {
    auto it = seeds.find(canonical_tube(tube, n).elems);
    if (it != seeds.end()) return it->second;
    return std::vector<double>(tube.size() - 1, 1.0);
  };
  return preimage_with(y, g);
}

std::optional<CompPoint> build_point_on_face(const std::vector<Tube>& T, const std::vector<double>& y,
                                             std::mt19937_64& rng) {
  check_hypersimplex(y);
  int n = static_cast<int>(y.size());
  std::vector<Tube> want;
  for (const auto& t : T) want.push_back(canonical_tube(t.elems, n));
  std::sort(want.begin(), want.end());
  std::uniform_real_distribution<double> U(0.2, 1.0);
  GapProvider g = [&](const std::vector<int>& tube) {
    std::vector<double> out(tube.size() - 1);
    for (size_t j = 0; j + 1 < tube.size(); ++j) {
      bool joined = false;
      for (const auto& c : want) {
        if (c.size() >= static_cast<int>(tube.size())) continue;
        for (int d = -3; d <= 3 && !joined; ++d) {
          int lo = c.elems.front() + d * n, hi = c.elems.back() + d * n;
          if (lo <= tube[j] && tube[j + 1] <= hi && lo >= tube.front() && hi <= tube.back()) joined = true;
        }
      }
      out[j] = joined ? 0.0 : U(rng);
    }
    return out;
  };
  std::optional<int> M;
  for (const auto& t : want)
    if (t.size() == n) M = mod1(t.elems.front() - 1, n);
  if (M && y[*M - 1] < 1 - kOne) return std::nullopt;
  if (!M && line_index(y)) {
    int nz = 0;
    for (double v : y) nz += v > kZero;
    if (nz != 2) return std::nullopt;
  }
  std::uniform_real_distribution<double> G(0.1, std::numbers::pi - 0.1);
  try {
    CompPoint x = assemble(y, M, g, G(rng));
    if (x.tubing != want) return std::nullopt;
    return x;
  } catch (const Error& e) {
    if (e.code() == Errc::StratumMismatch || e.code() == Errc::Precondition) return std::nullopt;
    throw;
  }
}

FloatPoint psi(const std::vector<double>& y, int k, const Seeds& seeds) {
  int n = static_cast<int>(y.size());
  return measb(top_cell(k, n), preimage_of(y, seeds));
}

}  // namespace critgrass
