#include "critgrass/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "critgrass/affine_perm.hpp"
#include "critgrass/construct.hpp"
#include "critgrass/errors.hpp"
#include "critgrass/moves.hpp"
#include "critgrass/polygon.hpp"
#include "critgrass/poset.hpp"
#include "critgrass/sampling.hpp"
#include "critgrass/topcell.hpp"

namespace critgrass {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Json Report::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json x{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"count", c.count}};
    if (!c.detail.empty()) x["detail"] = c.detail;
    cs.push_back(x);
  }
  Json cfg{{"k", config.k}, {"n", config.n}, {"samples", config.samples}, {"seed", config.seed}, {"tol", config.tol}};
  return {{"suite", suite}, {"pass", pass()}, {"config", cfg}, {"checks", cs}};
}

long hypersimplex_face_count(int n) {
  // Faces fix a set O of coordinates to 1 and a set Z to 0; the rest are free.
  auto C = [](int a, int b) -> long {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long total = 0;
  for (int o = 0; o <= 2; ++o)
    for (int z = 0; o + z <= n; ++z) {
      int free = n - o - z, left = 2 - o;
      bool face = (left == 0 && free == 0) || (left > 0 && left < free);
      if (face) total += C(n, o) * C(n - o, z);
    }
  return total;
}

std::vector<long> cyclohedron_fvector(int n) {
  int d = n - 1;
  auto C = [](long a, long b) -> long {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::vector<long> f(d + 1, 0);
  for (int j = 0; j <= d; ++j)
    for (int i = j; i <= d; ++i) f[j] += C(i, j) * C(d, i) * C(d, i);
  return f;
}

PlabicGraph decorate(const PlabicGraph& g) {
  GraphSpec s = to_spec(g);
  int next_v = 0, next_e = 0;
  for (const auto& v : s.vertices) next_v = std::max(next_v, v.id + 1);
  for (const auto& e : s.edges) next_e = std::max(next_e, e.id + 1);
  auto near_boundary = [&](int v) {
    for (int e : g.rotation[v])
      if (g.is_boundary(g.other(e, v))) return true;
    return false;
  };
  int leaf_at = -1, par = -1;
  for (int v = 0; v < g.nv() && leaf_at < 0; ++v)
    if (!g.is_boundary(v) && g.degree(v) >= 2 && !near_boundary(v)) leaf_at = v;
  for (int e = 0; e < g.ne() && par < 0; ++e)
    if (!g.boundary_edge(e)) par = e;
  if (leaf_at >= 0) {
    int id = next_v++, eid = next_e++;
    Color c = g.is_black(leaf_at) ? Color::White : Color::Black;
    s.vertices.push_back({id, c, 0});
    s.edges.push_back({eid, id, g.vertices[leaf_at].id});
    auto& r = s.rotation[g.vertices[leaf_at].id];
    r.insert(r.begin(), eid);
    s.rotation[id] = {eid};
  }
  if (par >= 0) {
    int a = g.vertices[g.edges[par].a].id, b = g.vertices[g.edges[par].b].id, pid = g.edges[par].id;
    int eid = next_e++;
    s.edges.push_back({eid, a, b});
    auto& ra = s.rotation[a];
    ra.insert(std::find(ra.begin(), ra.end(), pid) + 1, eid);
    auto& rb = s.rotation[b];
    rb.insert(std::find(rb.begin(), rb.end(), pid), eid);
  }
  {
    int x = next_v++, y = next_v++, eid = next_e++;
    s.vertices.push_back({x, Color::Black, 0});
    s.vertices.push_back({y, Color::White, 0});
    s.edges.push_back({eid, x, y});
    s.rotation[x] = {eid};
    s.rotation[y] = {eid};
  }
  return build_graph(s);
}

std::vector<std::pair<std::string, PlabicGraph>> move_fixtures(int k, int n) {
  require(2 <= k && k <= n - 1 && n <= 6, Errc::Precondition, "move fixtures need 2 <= k <= n-1 and n <= 6");
  std::vector<std::pair<std::string, PlabicGraph>> out;
  auto interior = [](const PlabicGraph& g) { return static_cast<int>(g.interior_vertices().size()); };
  auto add = [&](const std::string& name, const PlabicGraph& g) {
    if (interior(g) <= 12 && has_matching(g)) out.emplace_back(name, g);
  };
  PlabicGraph le = le_graph(k, n).g;
  PlabicGraph br = bridge_graph(top_cell(k, n));
  add("le", le);
  add("bridge", br);
  add("bridge+decorations", decorate(br));
  add("le+decorations", decorate(le));
  // Splitting a degree-4 corner of a 4-face leaves a trivalent square and a degree-2 vertex.
  for (const auto& site : find_sites(br, MoveKind::Uncontract)) {
    PlabicGraph u = apply_move(br, Weights<mpq_class>(br.ne(), mpq_class(1)), MoveKind::Uncontract, site).g;
    if (!find_sites(u, MoveKind::SquareMove).empty()) {
      add("bridge+uncontract", u);
      break;
    }
  }
  // A non-top cell on the same n.
  std::vector<int> fb(n);
  for (int i = 0; i < n; ++i) fb[i] = (i + k) % n + 1;
  std::swap(fb[0], fb[1]);
  BAP f = lift_loopless(fb);
  if (connected_strand_diagram(f) && f.k() >= 1) add("bridge-noncell", decorate(bridge_graph(f)));
  return out;
}

namespace {

mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 7);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Check moves_check(const std::string& fixture, const PlabicGraph& g, MoveKind m, int samples, uint64_t seed) {
  Check c;
  c.name = fixture + "/" + move_name(m);
  auto sites = find_sites(g, m);
  // Decorated fixtures are not reduced, so compare raw strand permutations.
  auto f0 = trace_strands(g).fbar;
  bool keeps_f = m == MoveKind::Contract || m == MoveKind::Uncontract || m == MoveKind::SquareMove;
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(sample_seed(seed, static_cast<uint64_t>(s)));
    Weights<mpq_class> w(g.ne());
    for (auto& x : w) x = random_rational(rng);
    ExactPoint before = boundary_measurement(g, w);
    for (const auto& site : sites) {
      auto r = apply_move(g, w, m, site);
      ++c.count;
      if (!projective_equal(before, boundary_measurement(r.g, r.w))) {
        c.pass = false;
        c.residual = 1;
        c.detail = "measurement changed";
      }
      if (keeps_f && s == 0 && trace_strands(r.g).fbar != f0) {
        c.pass = false;
        c.residual = 1;
        c.detail = "strand permutation changed";
      }
    }
  }
  if (sites.empty()) c.detail = "no sites";
  return c;
}

Report suite_moves(const SuiteConfig& cfg) {
  Report r;
  int samples = cfg.samples < 0 ? 100 : cfg.samples;
  const MoveKind kinds[] = {MoveKind::ParallelReduction, MoveKind::LeafRemoval, MoveKind::DipoleRemoval,
                            MoveKind::Contract,          MoveKind::Uncontract,  MoveKind::SquareMove};
  auto fx = move_fixtures(cfg.k, cfg.n);
  std::vector<std::pair<int, MoveKind>> jobs;
  for (size_t i = 0; i < fx.size(); ++i)
    for (MoveKind m : kinds) jobs.emplace_back(static_cast<int>(i), m);
  std::vector<Check> out(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int j) {
    auto [i, m] = jobs[j];
    out[j] = moves_check(fx[i].first, fx[i].second, m, samples, cfg.seed + static_cast<uint64_t>(j));
  }, cfg.exec);
  std::map<MoveKind, long> per_kind;
  for (size_t j = 0; j < jobs.size(); ++j) per_kind[jobs[j].second] += out[j].count;
  r.checks = out;
  for (MoveKind m : kinds) {
    Check c;
    c.name = std::string("sites/") + move_name(m);
    c.count = per_kind[m];
    c.pass = c.count > 0;
    if (!c.pass) c.detail = "no fixture offers this move";
    r.checks.push_back(c);
  }
  return r;
}

std::vector<PeriodicPartition> random_generic_partitions(int count, int nmin, int nmax, std::mt19937_64& rng,
                                                         std::vector<int>& ks) {
  std::vector<PeriodicPartition> out;
  while (static_cast<int>(out.size()) < count) {
    int n = nmin + static_cast<int>(rng() % static_cast<uint64_t>(nmax - nmin + 1));
    int k = 2 + static_cast<int>(rng() % static_cast<uint64_t>(n - 3));
    std::vector<int> cuts;
    for (int p = 1; p <= n; ++p)
      if (rng() % 2) cuts.push_back(p);
    if (cuts.size() < 2) continue;
    std::vector<std::pair<int, int>> iv;
    for (size_t i = 0; i < cuts.size(); ++i)
      iv.emplace_back(cuts[i], i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + n);
    PeriodicPartition B(n, iv);
    if (!B.generic(k)) continue;
    out.push_back(B);
    ks.push_back(k);
  }
  return out;
}

Report suite_necklace(const SuiteConfig& cfg) {
  Report r;
  int samples = cfg.samples < 0 ? 200 : cfg.samples;
  std::mt19937_64 rng(cfg.seed);
  std::vector<int> ks;
  auto parts = random_generic_partitions(samples, 4, 10, rng, ks);
  Check c{"closed_form", true, 0, 0, ""}, s{"g_B_sends_blocks", true, 0, 0, ""};
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& B = parts[i];
    int k = ks[i], n = B.n();
    BAP g = g_from_partition(B, k);
    auto N = grassmann_necklace(g);
    auto cf = necklace_closed_form(B, k);
    for (int j = 0; j < n; ++j) {
      ++c.count;
      if (cf[j].set != N[j]) {
        c.pass = false;
        c.residual = 1;
      }
    }
    for (auto [a, b] : B.blocks()) {
      ++s.count;
      std::set<int> img, blk;
      for (int p = a; p < b; ++p) {
        img.insert(mod1(g(p - k), n));
        blk.insert(mod1(p, n));
      }
      if (img != blk) s.pass = false;
    }
  }
  r.checks = {c, s};
  return r;
}

Report suite_tubings(const SuiteConfig& cfg) {
  Report r;
  int top = cfg.samples < 0 ? std::min(cfg.n, 5) : std::max(2, std::min(cfg.samples, 6));
  for (int n = 2; n <= std::max(top, 2); ++n) {
    Check c;
    c.name = "fvector/n=" + std::to_string(n);
    auto L = enumerate_proper_tubings(total_order(n));
    auto want = cyclohedron_fvector(n);
    c.count = static_cast<long>(L.tubings.size());
    c.pass = L.fvector == want;
    std::string got;
    for (long v : L.fvector) got += (got.empty() ? "" : ",") + std::to_string(v);
    c.detail = "[" + got + "]";
    r.checks.push_back(c);
  }
  return r;
}

void require_topcell(const SuiteConfig& cfg) {
  require(2 <= cfg.k && cfg.k <= cfg.n - 1, Errc::Precondition, "need 2 <= k <= n-1");
  require(cfg.n <= 7, Errc::TooLarge, "top-cell suites are limited to n <= 7");
}

Seeds random_seeds(const CompPoint& x, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.1, 5.0);
  Seeds s;
  for (const auto& t : x.tubing) {
    std::vector<double> g(t.size() - 1);
    for (double& v : g) v = U(rng);
    s[t.elems] = g;
  }
  return s;
}

Report suite_iir(const SuiteConfig& cfg) {
  require_topcell(cfg);
  Report r;
  int samples = cfg.samples < 0 ? 100 : cfg.samples;
  int k = cfg.k, n = cfg.n;
  std::vector<double> worst(samples, 0.0);
  parallel_for(samples, [&](int i) {
    std::mt19937_64 rng(sample_seed(cfg.seed, static_cast<uint64_t>(i)));
    auto y = random_hypersimplex_point(n, rng);
    CompPoint x = preimage_of(y);
    std::vector<FloatPoint> imgs{psi(y, k)};
    for (int s = 0; s < cfg.seeds; ++s) imgs.push_back(psi(y, k, random_seeds(x, rng)));
    for (size_t a = 0; a < imgs.size(); ++a)
      for (size_t b = a + 1; b < imgs.size(); ++b) worst[i] = std::max(worst[i], projective_distance(imgs[a], imgs[b]));
  }, cfg.exec);
  Check c{"seed_independence", true, 0, samples, ""};
  c.residual = samples ? *std::max_element(worst.begin(), worst.end()) : 0.0;
  c.pass = c.residual < cfg.tol;
  r.checks.push_back(c);

  if (n == 4) {
    Seeds s1{{{1, 2, 3}, {1, 2}}}, s2{{{1, 2, 3}, {5, 1}}};
    Check e{"collided_triple_ratios", true, 0, 1, "y=(0,0,1,1), a:b = 1:2 vs 5:1"};
    e.residual = projective_distance(psi({0, 0, 1, 1}, k, s1), psi({0, 0, 1, 1}, k, s2));
    e.pass = e.residual < cfg.tol;
    r.checks.push_back(e);
  }

  // measb = psi o phi on random points of random faces.
  BAP f = top_cell(k, n);
  AffinePoset P = poset_from_perm(f);
  auto faces = all_faces(f);
  int pts = cfg.samples < 0 ? 100 : cfg.samples;
  std::vector<double> diag(pts, 0.0);
  parallel_for(pts, [&](int i) {
    std::mt19937_64 rng(sample_seed(cfg.seed ^ 0xd1a9ULL, static_cast<uint64_t>(i)));
    CompPoint x = sample_on_face(P, faces[rng() % faces.size()], rng);
    diag[i] = projective_distance(measb(f, x), psi(phi(x, n), k));
  }, cfg.exec);
  Check d{"measb_equals_psi_phi", true, 0, pts, ""};
  d.residual = pts ? *std::max_element(diag.begin(), diag.end()) : 0.0;
  d.pass = d.residual < std::max(cfg.tol, 1e-8);
  r.checks.push_back(d);
  return r;
}

Report suite_injectivity(const SuiteConfig& cfg) {
  require_topcell(cfg);
  Report r;
  int samples = cfg.samples < 0 ? 200 : cfg.samples;
  int k = cfg.k, n = cfg.n;
  std::vector<double> far(samples, 0.0), near(samples, 0.0);
  parallel_for(samples, [&](int i) {
    std::mt19937_64 rng(sample_seed(cfg.seed, static_cast<uint64_t>(i)));
    auto y = random_hypersimplex_point(n, rng);
    auto z = random_hypersimplex_point(n, rng);
    far[i] = projective_distance(psi(y, k), psi(z, k));
    // A nearby point on the same face: move mass between two free coordinates.
    std::vector<int> free;
    for (int p = 0; p < n; ++p)
      if (y[p] > 1e-9 && y[p] < 1 - 1e-9) free.push_back(p);
    near[i] = 1.0;
    if (free.size() >= 3) {
      int a = free[rng() % free.size()], b;
      do b = free[rng() % free.size()]; while (b == a);
      double step = 1e-3 * std::min({y[a], 1 - y[a], y[b], 1 - y[b]});
      auto w = y;
      w[a] += step;
      w[b] -= step;
      near[i] = projective_distance(psi(y, k), psi(w, k));
    }
  }, cfg.exec);
  Check c{"distinct_pairs", true, 0, samples, ""}, d{"nearby_pairs", true, 0, samples, ""};
  c.residual = samples ? *std::min_element(far.begin(), far.end()) : 1.0;
  d.residual = samples ? *std::min_element(near.begin(), near.end()) : 1.0;
  c.pass = c.residual >= 1e-6;
  d.pass = d.residual >= 1e-9;
  r.checks = {c, d};
  return r;
}

Report suite_strata(const SuiteConfig& cfg) {
  require_topcell(cfg);
  require(cfg.n <= 5, Errc::TooLarge, "strata suite is limited to n <= 5");
  Report r;
  int samples = cfg.samples < 0 ? 2 : cfg.samples;
  BAP f = top_cell(cfg.k, cfg.n);
  auto faces = all_faces(f);
  auto rep = strata_sample(f, faces, samples, cfg.seed, cfg.exec);
  Check g{"group_count", true, 0, static_cast<long>(faces.size()), ""};
  long want = hypersimplex_face_count(cfg.n);
  g.pass = rep.groups == want;
  g.detail = std::to_string(rep.groups) + " groups, expected " + std::to_string(want);
  Check o{"no_partial_overlap", rep.partial_overlaps.empty(), static_cast<double>(rep.partial_overlaps.size()),
          static_cast<long>(faces.size()), ""};
  Check e{"equal_images", rep.max_residual < 1e-8, rep.max_residual, rep.samples, ""};
  Check t{"nonnegative", rep.nonnegative, 0, rep.samples, ""};
  r.checks = {g, o, e, t};
  int other = cfg.k + 1 <= cfg.n - 1 ? cfg.k + 1 : cfg.k - 1;
  if (other >= 2) {
    auto rep2 = strata_sample(top_cell(other, cfg.n), faces, samples, cfg.seed, cfg.exec);
    Check s{"same_partition_k=" + std::to_string(other), rep2.signature == rep.signature, 0,
            static_cast<long>(faces.size()), ""};
    r.checks.push_back(s);
  }
  return r;
}

Report suite_polygon(const SuiteConfig& cfg) {
  Report r;
  int samples = cfg.samples < 0 ? 1000 : cfg.samples;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(0.05, 1.0);
  Check p{"ptolemy", true, 0, samples, ""};
  for (int i = 0; i < samples; ++i) {
    int m = 4 + static_cast<int>(rng() % 4);
    std::vector<double> sides(m);
    double mx, total;
    do {
      for (double& s : sides) s = U(rng);
      mx = *std::max_element(sides.begin(), sides.end());
      total = std::accumulate(sides.begin(), sides.end(), 0.0);
    } while (2 * mx >= total);
    auto poly = solve_inscribed_polygon(sides);
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    std::sort(v.begin(), v.begin() + 4);
    auto t = cross_ratio_identities(poly, v[0], v[1], v[2], v[3]);
    double rel = std::abs(t[1] - t[0] - t[2]) / std::max(1e-300, std::abs(t[1]));
    p.residual = std::max(p.residual, rel);
  }
  p.pass = p.residual < 1e-9;
  auto sq = solve_inscribed_polygon({1, 1, 1, 1});
  auto tri = solve_inscribed_polygon({3, 4, 5});
  auto line = solve_inscribed_polygon({1, 1, 2});
  Check a{"square_diagonal", true, std::abs(sq.dist(0, 2) - std::sqrt(2.0)), 1, ""};
  Check b{"circumradius_3_4_5", true, std::abs(tri.R - 2.5), 1, ""};
  double lr = line.degenerate ? std::max({std::abs(line.dist(0, 1) - 1), std::abs(line.dist(1, 2) - 1),
                                          std::abs(line.dist(0, 2) - 2)})
                              : 1.0;
  Check c{"degenerate_1_1_2", true, lr, 1, line.degenerate ? "" : "not detected as degenerate"};
  for (Check* x : {&a, &b, &c}) x->pass = x->residual < 1e-12;
  r.checks = {p, a, b, c};
  return r;
}

const std::map<std::string, std::function<Report(const SuiteConfig&)>>& registry() {
  static const std::map<std::string, std::function<Report(const SuiteConfig&)>> m{
      {"moves", suite_moves},   {"necklace", suite_necklace},         {"tubings", suite_tubings},
      {"iir", suite_iir},       {"psi-injectivity", suite_injectivity}, {"strata", suite_strata},
      {"polygon", suite_polygon}};
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto it = registry().find(name);
  require(it != registry().end(), Errc::Precondition, "unknown suite \"" + name + "\"");
  Report r = it->second(cfg);
  r.suite = name;
  r.config = cfg;
  return r;
}

}  // namespace critgrass
