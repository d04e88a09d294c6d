#include "critgrass/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "critgrass/errors.hpp"
#include "critgrass/topcell.hpp"

namespace critgrass {

namespace {

constexpr double kPi = std::numbers::pi;

struct Constraint {
  int x, y;
  double r, kappa;  // ϑ_y − ϑ_x ≥ λ r − π κ
};

// Longest-path potentials, or nothing when a positive cycle exists.
std::optional<std::vector<double>> longest_paths(int m, const std::vector<Constraint>& cs, double lambda) {
  std::vector<double> v(m, 0.0);
  for (int it = 0; it <= m; ++it) {
    bool changed = false;
    for (const auto& c : cs) {
      double w = lambda * c.r - kPi * c.kappa;
      if (v[c.x] + w > v[c.y] + 1e-13) {
        v[c.y] = v[c.x] + w;
        changed = true;
      }
    }
    if (!changed) return v;
  }
  return std::nullopt;
}

std::vector<double> sample_whole(const AffinePoset& P, const CompPoint& skel, std::mt19937_64& rng) {
  int n = P.n();
  std::vector<int> cls(n, -1), off(n, 0);
  int m = 0;
  for (const auto& t : whole_children(skel, n)) {
    for (int e : t.elems) {
      int r = mod1(e, n);
      cls[r - 1] = m;
      off[r - 1] = (e - r) / n;
    }
    ++m;
  }
  for (int p = 0; p < n; ++p)
    if (cls[p] < 0) cls[p] = m++;

  struct Cover {
    int x, y, kappa;
  };
  std::vector<Cover> covers;
  for (int a = 1; a <= n; ++a)
    for (int b : P.hasse_neighbors(a)) {
      if (b <= a) continue;
      int rb = mod1(b, n), db = (b - rb) / n;
      int x = cls[a - 1], y = cls[rb - 1];
      int kappa = db - off[rb - 1] + off[a - 1];
      if (x == y && kappa == 0) continue;  // same tube copy
      covers.push_back({x, y, kappa});
    }

  std::uniform_real_distribution<double> R(0.5, 1.5), L(0.2, 0.8);
  std::vector<double> acc(m, 0.0);
  constexpr int kRounds = 3;
  for (int round = 0; round < kRounds; ++round) {
    std::vector<Constraint> cs;
    for (const auto& c : covers) cs.push_back({c.x, c.y, R(rng), static_cast<double>(c.kappa)});
    require(longest_paths(m, cs, 0.0).has_value(), Errc::Internal, "whole constraints are infeasible");
    double lo = 0, hi = 1;
    while (hi < 1e6 && longest_paths(m, cs, hi)) {
      lo = hi;
      hi *= 2;
    }
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (longest_paths(m, cs, mid) ? lo : hi) = mid;
    }
    auto v = longest_paths(m, cs, L(rng) * lo);
    require(v.has_value(), Errc::Internal, "bisection left the feasible region");
    for (int i = 0; i < m; ++i) acc[i] += (*v)[i] / kRounds;
  }
  std::vector<double> theta(n);
  for (int p = 0; p < n; ++p) theta[p] = acc[cls[p]] - kPi * off[p];
  double base = theta[0];
  for (double& t : theta) t -= base;
  return theta;
}

std::vector<double> sample_tube(const AffinePoset& P, const CompPoint& skel, const std::vector<int>& tau,
                                std::mt19937_64& rng) {
  auto kids = children(skel, tau, P.n());
  std::map<int, int> block;
  for (size_t i = 0; i < kids.size(); ++i)
    for (int e : kids[i]) block[e] = static_cast<int>(i);
  std::uniform_real_distribution<double> R(0.5, 1.5), S(0.0, 0.3);
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : P.hasse_within(tau))
    if (block[a] != block[b]) edges.emplace_back(block[a], block[b]);
  int m = static_cast<int>(kids.size());
  std::vector<double> r(edges.size()), slack(m), v(m, 0.0);
  for (auto& x : r) x = R(rng);
  for (auto& x : slack) x = S(rng);
  for (int it = 0; it <= m; ++it) {
    bool changed = false;
    for (size_t i = 0; i < edges.size(); ++i) {
      auto [a, b] = edges[i];
      double want = v[a] + r[i] + slack[b];
      if (want > v[b] + 1e-13) {
        v[b] = want;
        changed = true;
      }
    }
    if (!changed) break;
    require(it < m, Errc::Internal, "cycle among the blocks of a tube");
  }
  std::vector<double> x(tau.size());
  for (size_t i = 0; i < tau.size(); ++i) x[i] = v[block[tau[i]]];
  return normalize_on_tube(P, tau, x);
}

}  // namespace

CompPoint sample_on_face(const AffinePoset& P, const std::vector<Tube>& T, std::mt19937_64& rng) {
  int n = P.n();
  CompPoint skel;
  for (const auto& t : T) {
    require(!t.whole, Errc::Precondition, "face tubing contains WHOLE");
    skel.tubing.push_back(canonical_tube(t.elems, n));
  }
  std::sort(skel.tubing.begin(), skel.tubing.end());
  require(is_tubing(P, skel.tubing), Errc::Precondition, "not a proper tubing");
  auto whole = sample_whole(P, skel, rng);
  std::map<std::vector<int>, std::vector<double>> data;
  for (const auto& t : skel.tubing) data[t.elems] = sample_tube(P, skel, t.elems, rng);
  return make_comp_point(P, skel.tubing, whole, data);
}

std::vector<double> random_hypersimplex_point(int n, std::mt19937_64& rng) {
  require(n >= 3, Errc::Precondition, "Δ_{2,n} sampling needs n >= 3");
  std::uniform_real_distribution<double> U(0, 1);
  std::exponential_distribution<double> Ex(1.0);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<double> y(n, 0.0);
  double mode = U(rng);
  if (mode >= 0.3 && mode < 0.7 && n > 3) {
    int zeros = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n - 3));
    idx.resize(n - zeros);
  } else if (mode >= 0.3) {
    int M = idx.back();
    idx.pop_back();
    y[M] = 1;
    int keep = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n - 1));
    idx.resize(keep);
    double s = 0;
    for (int i : idx) s += (y[i] = Ex(rng) + 1e-3);
    for (int i : idx) y[i] /= s;
    return y;
  }
  for (;;) {
    double s = 0;
    for (int i : idx) s += (y[i] = Ex(rng) + 1e-3);
    bool ok = true;
    for (int i : idx) ok = ok && (y[i] *= 2 / s) < 1 - 1e-6;
    if (ok) return y;
  }
}

std::vector<std::vector<double>> level_coefficients(const CompPoint& x, int n, std::mt19937_64* rng) {
  std::map<std::vector<int>, double> scale;
  std::uniform_real_distribution<double> S(0.5, 2.0);
  for (const auto& t : x.tubing) scale[t.elems] = rng ? S(*rng) : 1.0;
  std::vector<std::vector<double>> c{x.whole};
  for (int p = 1; p <= n; ++p) {
    std::vector<std::pair<int, double>> chain;
    for (const auto& t : x.tubing)
      for (int d = -3; d <= 3; ++d) {
        auto it = std::find(t.elems.begin(), t.elems.end(), p + d * n);
        if (it != t.elems.end()) chain.emplace_back(t.size(), scale[t.elems] * x.data.at(t.elems)[it - t.elems.begin()]);
      }
    std::sort(chain.begin(), chain.end(), [](auto a, auto b) { return a.first > b.first; });
    for (size_t l = 0; l < chain.size(); ++l) {
      if (c.size() <= l + 1) c.emplace_back(n, 0.0);
      c[l + 1][p - 1] = chain[l].second;
    }
  }
  return c;
}

namespace {

double tail(const std::vector<std::vector<double>>& c, double t, int p, int q) {
  double s = 0, tl = t;
  for (size_t l = 1; l < c.size(); ++l, tl *= t) s += tl * (c[l][q - 1] - c[l][p - 1]);
  return s;
}

// Top-level difference, snapped to a multiple of π for collided pairs.
double head(const std::vector<std::vector<double>>& c, int p, int q, double& m) {
  double d0 = c[0][q - 1] - c[0][p - 1];
  m = std::round(d0 / kPi);
  return std::abs(d0 - m * kPi) < 1e-9 ? m * kPi : d0;
}

}  // namespace

DiffFn path_difference(const std::vector<std::vector<double>>& c, double t) {
  return [c, t](int p, int q) {
    double m;
    return head(c, p, q, m) + tail(c, t, p, q);
  };
}

SineFn path_sine(const std::vector<std::vector<double>>& c, double t) {
  return [c, t](int p, int q) {
    double m;
    double d0 = head(c, p, q, m);
    if (d0 == m * kPi) {
      double s = std::sin(tail(c, t, p, q));
      return static_cast<long>(m) % 2 == 0 ? s : -s;
    }
    return std::sin(d0 + tail(c, t, p, q));
  };
}

std::vector<std::vector<Tube>> all_faces(const BAP& f, int max_n) {
  auto L = enumerate_proper_tubings(poset_from_perm(f), max_n);
  std::vector<std::vector<Tube>> out;
  for (const auto& T : L.tubings) {
    std::vector<Tube> face;
    for (int i : T) face.push_back(L.tubes[i]);
    out.push_back(face);
  }
  return out;
}

namespace {

bool is_top_cell(const BAP& f) { return f.k() >= 1 && f.k() < f.n() && f == top_cell(f.k(), f.n()); }

std::vector<std::vector<double>> hypersimplex_grid(int n, int N) {
  std::vector<std::vector<double>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      if (left <= N) {
        a[i] = left;
        std::vector<double> y(n);
        for (int j = 0; j < n; ++j) y[j] = static_cast<double>(a[j]) / N;
        out.push_back(y);
      }
      return;
    }
    for (int v = 0; v <= std::min(N, left); ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, 2 * N);
  return out;
}

void number_groups(StrataReport& rep, const std::vector<int>& root) {
  std::map<int, int> id;
  rep.signature.assign(root.size(), 0);
  for (size_t i = 0; i < root.size(); ++i) {
    auto [it, fresh] = id.emplace(root[i], static_cast<int>(id.size()));
    rep.signature[i] = it->second;
  }
  rep.groups = static_cast<int>(id.size());
}

constexpr double kSame = 1e-8;

void phi_grid(const BAP& f, StrataReport& rep, int samples, uint64_t seed, Exec exec, int N) {
  int n = f.n(), F = static_cast<int>(rep.faces.size());
  auto grid = hypersimplex_grid(n, N);
  int G = static_cast<int>(grid.size());
  std::vector<std::map<int, FloatPoint>> hits(F);
  parallel_for(F, [&](int i) {
    for (int g = 0; g < G; ++g) {
      std::mt19937_64 rng(sample_seed(seed, static_cast<uint64_t>(i) * G + g));
      if (auto x = build_point_on_face(rep.faces[i], grid[g], rng)) hits[i].emplace(g, measb(f, *x));
    }
  }, exec);

  auto dist_on_common = [&](int a, int b, bool& all_equal, bool& some_equal) {
    all_equal = hits[a].size() == hits[b].size();
    some_equal = false;
    double worst = 0;
    for (const auto& [g, img] : hits[a]) {
      auto it = hits[b].find(g);
      if (it == hits[b].end()) {
        all_equal = false;
        continue;
      }
      double d = projective_distance(img, it->second);
      if (d < kSame) some_equal = true; else all_equal = false;
      worst = std::max(worst, d);
    }
    return worst;
  };

  std::vector<int> root(F);
  std::vector<int> reps;
  for (int i = 0; i < F; ++i) {
    root[i] = i;
    for (int r : reps) {
      bool all_eq, some_eq;
      double d = dist_on_common(i, r, all_eq, some_eq);
      if (all_eq) {
        root[i] = r;
        rep.max_residual = std::max(rep.max_residual, d);
        break;
      }
    }
    if (root[i] == i) reps.push_back(i);
  }
  for (int i = 0; i < F; ++i)
    for (int j = i + 1; j < F; ++j) {
      if (root[i] == root[j]) continue;
      bool all_eq, some_eq;
      dist_on_common(i, j, all_eq, some_eq);
      if (some_eq) rep.partial_overlaps.emplace_back(i, j);
    }

  // Random interior samples of each face must land in the image of every face of its group.
  AffinePoset P = poset_from_perm(f);
  std::vector<double> resid(F, 0.0);
  std::vector<char> tnn(F, 1);
  std::vector<std::vector<int>> misses(F);
  parallel_for(F, [&](int i) {
    for (int s = 0; s < samples; ++s) {
      std::mt19937_64 rng(sample_seed(seed ^ 0x5157ULL, static_cast<uint64_t>(i) * samples + s));
      CompPoint x = sample_on_face(P, rep.faces[i], rng);
      auto img = measb(f, x);
      if (!totally_nonnegative(img)) tnn[i] = 0;
      auto y = phi(x, n);
      for (int j = 0; j < F; ++j) {
        if (j == i || root[j] != root[i]) continue;
        auto other = build_point_on_face(rep.faces[j], y, rng);
        double d = other ? projective_distance(img, measb(f, *other)) : 1.0;
        if (d >= kSame) misses[i].push_back(j);
        resid[i] = std::max(resid[i], d);
      }
    }
  }, exec);
  for (int i = 0; i < F; ++i) {
    rep.max_residual = std::max(rep.max_residual, resid[i]);
    rep.nonnegative = rep.nonnegative && tnn[i];
    for (int j : misses[i]) rep.partial_overlaps.emplace_back(std::min(i, j), std::max(i, j));
    rep.samples += samples;
  }
  for (const auto& h : hits) rep.samples += static_cast<int>(h.size());
  std::sort(rep.partial_overlaps.begin(), rep.partial_overlaps.end());
  rep.partial_overlaps.erase(std::unique(rep.partial_overlaps.begin(), rep.partial_overlaps.end()),
                             rep.partial_overlaps.end());
  number_groups(rep, root);
}

uint32_t support(const FloatPoint& p) {
  uint32_t m = 0;
  for (size_t i = 0; i < p.coords.size(); ++i)
    if (std::abs(p.coords[i]) > 1e-10) m |= 1u << i;
  return m;
}

void support_signature(const BAP& f, StrataReport& rep, int samples, uint64_t seed, Exec exec) {
  int F = static_cast<int>(rep.faces.size());
  AffinePoset P = poset_from_perm(f);
  std::vector<std::set<uint32_t>> sig(F);
  std::vector<char> tnn(F, 1);
  parallel_for(F, [&](int i) {
    for (int s = 0; s < samples; ++s) {
      std::mt19937_64 rng(sample_seed(seed, static_cast<uint64_t>(i) * samples + s));
      auto img = measb(f, sample_on_face(P, rep.faces[i], rng));
      if (!totally_nonnegative(img)) tnn[i] = 0;
      sig[i].insert(support(img));
    }
  }, exec);
  std::map<std::set<uint32_t>, int> first;
  std::vector<int> root(F);
  for (int i = 0; i < F; ++i) {
    root[i] = first.emplace(sig[i], i).first->second;
    rep.nonnegative = rep.nonnegative && tnn[i];
  }
  for (int i = 0; i < F; ++i)
    for (int j = i + 1; j < F; ++j) {
      if (root[i] == root[j]) continue;
      bool meet = false;
      for (uint32_t m : sig[i]) meet = meet || sig[j].count(m);
      if (meet) rep.partial_overlaps.emplace_back(i, j);
    }
  rep.samples = F * samples;
  number_groups(rep, root);
}

}  // namespace

StrataReport strata_sample(const BAP& f, const std::vector<std::vector<Tube>>& faces, int samples_per_face,
                           uint64_t seed, Exec exec, int grid) {
  StrataReport rep;
  rep.faces = faces;
  if (is_top_cell(f)) {
    rep.method = "phi-grid";
    phi_grid(f, rep, samples_per_face, seed, exec, grid);
  } else {
    rep.method = "support";
    support_signature(f, rep, samples_per_face, seed, exec);
  }
  return rep;
}

}  // namespace critgrass
