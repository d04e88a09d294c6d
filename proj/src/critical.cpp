#include "critgrass/critical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

#include "critgrass/construct.hpp"
#include "critgrass/errors.hpp"

namespace critgrass {

VertexChain vertex_chain(const PlabicGraph& g, const StrandData& s, const AffinePoset& P, int v) {
  require(!g.is_boundary(v), Errc::Precondition, "vertex chain needs an interior vertex");
  const auto& rot = g.rotation[v];
  int r = static_cast<int>(rot.size());
  std::map<int, int> inbound;
  for (int p = 1; p <= g.n; ++p)
    for (auto [e, from] : s.paths[p])
      if (g.other(e, from) == v) inbound[e] = s.fbar[p];
  require(static_cast<int>(inbound.size()) == r, Errc::StrandCycle, "a strand through the vertex is closed");
  std::set<int> ends;
  for (int e : rot) ends.insert(inbound.at(e));
  VertexChain vc;
  vc.chain.assign(ends.begin(), ends.end());
  require(static_cast<int>(vc.chain.size()) == r, Errc::PatternMismatch,
          "strands through the vertex are not distinct");
  require(is_circular_chain(P, vc.chain), Errc::NotAChain, "strand endpoints at a vertex do not form a circular chain");

  auto idx = [&](int p) { return static_cast<int>(std::find(vc.chain.begin(), vc.chain.end(), p) - vc.chain.begin()); };
  // Clockwise inbound sequence runs forwards or backwards along the chain.
  int dir = 1;
  if (r >= 3) {
    int a = idx(inbound.at(rot[0])), b = idx(inbound.at(rot[1]));
    dir = (b - a + r) % r == 1 ? 1 : -1;
  }
  vc.entry.assign(r, -1);
  for (int j = 0; j < r; ++j) {
    int i = idx(inbound.at(rot[j]));
    int nxt = idx(inbound.at(rot[(j + 1) % r]));
    require(r < 3 || (nxt - i + r) % r == (dir == 1 ? 1 : r - 1), Errc::BadRotation,
            "strand endpoints are not cyclically ordered around the vertex");
    int entry = dir == 1 ? i : (i - 1 + r) % r;
    vc.entry[entry] = rot[j];
  }
  for (int i = 0; i < r && r >= 2; ++i) {
    int a = vc.chain[i], b = vc.chain[(i + 1) % r];
    auto lab = s.edge_label[vc.entry[i]];
    require(lab[0] == std::min(a, b) && lab[1] == std::max(a, b), Errc::Internal, "edge label disagrees with the chain");
  }
  return vc;
}

Realization make_realization(const BAP& f, PlabicGraph g) {
  Realization R;
  R.f = f;
  R.P = poset_from_perm(f);
  require(bounded_affine_perm_of(g) == f, Errc::Precondition, "graph does not realize the permutation");
  require(is_reduced(g), Errc::Precondition, "graph is not reduced");
  require(is_contracted(g), Errc::NotContracted, "graph is not contracted");
  R.g = std::move(g);
  R.strands = trace_strands(R.g);
  R.table = make_table(R.g);
  for (int v = 0; v < R.g.nv(); ++v)
    if (!R.g.is_boundary(v) && R.g.is_black(v)) {
      R.blacks.push_back(v);
      R.chains.push_back(vertex_chain(R.g, R.strands, R.P, v));
    }
  return R;
}

namespace {

std::mutex cache_mutex;
std::map<std::pair<std::vector<int>, int>, std::unique_ptr<Realization>> cache;

bool is_top_cell(const BAP& f) {
  int k = f.k(), n = f.n();
  if (k < 2 || k > n - 1) return false;
  return f == top_cell(k, n);
}

const Realization& cached(const BAP& f, int which) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({f.window(), which});
    if (it != cache.end()) return *it->second;
  }
  PlabicGraph g;
  if (which == 0)
    g = is_top_cell(f) ? le_graph(f.k(), f.n()).g : bridge_graph(f);
  else
    g = is_top_cell(f) ? bridge_graph(f) : bridge_graph(f, true);
  auto R = std::make_unique<Realization>(make_realization(f, std::move(g)));
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{f.window(), which}];
  if (!slot) slot = std::move(R);
  return *slot;
}

void check_theta(const BAP& f, const std::vector<double>& theta) {
  require(static_cast<int>(theta.size()) == f.n(), Errc::Precondition, "theta has wrong length");
  require(is_admissible(theta, f), Errc::NotAdmissible, "theta violates a crossing inequality");
}

}  // namespace

const Realization& default_realization(const BAP& f) { return cached(f, 0); }
const Realization& alternate_realization(const BAP& f) { return cached(f, 1); }

Weights<double> critical_weights(const PlabicGraph& g, const StrandData& s, const BAP& f, const DiffFn& diff,
                                 const SineFn& sine) {
  require(is_contracted(g), Errc::NotContracted, "critical weights need a contracted graph");
  for (auto [p, q] : f_crossings(f)) {
    double d = diff(p, q);
    bool ok = sine ? sine(p, q) > 0 && d > -1e-9 && d < std::numbers::pi + 1e-9 : d > 0 && d < std::numbers::pi;
    require(ok, Errc::NotAdmissible, "theta violates a crossing inequality");
  }
  Weights<double> w(g.ne(), 1.0);
  for (int e = 0; e < g.ne(); ++e) {
    if (g.boundary_edge(e)) continue;
    auto [p, q] = s.edge_label[e];
    require(p >= 1 && p < q, Errc::Internal, "interior edge without two distinct strands");
    w[e] = sine ? sine(p, q) : std::sin(diff(p, q));
  }
  return w;
}

Weights<double> critical_weights(const PlabicGraph& g, const std::vector<double>& theta) {
  BAP f = bounded_affine_perm_of(g);
  check_theta(f, theta);
  return critical_weights(g, trace_strands(g), f, [&](int p, int q) { return theta[q - 1] - theta[p - 1]; });
}

FloatPoint meas_critical_diff(const Realization& R, const DiffFn& diff, const SineFn& sine) {
  return normalized(measure(R.table, critical_weights(R.g, R.strands, R.f, diff, sine)));
}

FloatPoint meas_critical(const Realization& R, const std::vector<double>& theta) {
  check_theta(R.f, theta);
  return meas_critical_diff(R, [&](int p, int q) { return theta[q - 1] - theta[p - 1]; });
}

FloatPoint meas_critical(const BAP& f, const std::vector<double>& theta) {
  return meas_critical(default_realization(f), theta);
}

Weights<double> limit_weights(const Realization& R, const CompPoint& x, double zero_tol) {
  Weights<double> w(R.g.ne(), -1.0);
  for (int e = 0; e < R.g.ne(); ++e)
    if (R.g.boundary_edge(e)) w[e] = 1.0;
  for (size_t b = 0; b < R.blacks.size(); ++b) {
    const auto& vc = R.chains[b];
    auto z = zeta(R.P, x, vc.chain);
    for (size_t i = 0; i < z.size(); ++i) w[vc.entry[i]] = z[i] < zero_tol ? 0.0 : z[i];
  }
  for (double v : w) require(v >= 0, Errc::Internal, "edge without a black interior endpoint");
  return w;
}

FloatPoint measb(const Realization& R, const CompPoint& x) {
  auto w = limit_weights(R, x);
  std::vector<char> keep(w.size());
  for (size_t e = 0; e < w.size(); ++e) keep[e] = w[e] > 0;
  require(has_matching(R.g, &keep), Errc::PrunedNoMatching, "pruned limit graph admits no almost perfect matching");
  return normalized(measure(R.table, w));
}

FloatPoint measb(const BAP& f, const CompPoint& x) { return measb(default_realization(f), x); }

}  // namespace critgrass
