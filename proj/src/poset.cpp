#include "critgrass/poset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "critgrass/errors.hpp"

namespace critgrass {

namespace {

std::vector<int> shifted(const std::vector<int>& v, int d) {
  std::vector<int> out(v);
  for (int& x : out) x += d;
  return out;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int m) : p(m) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

// Flat groups of equal value, split into Hasse components.
std::vector<std::vector<int>> flat_components(const AffinePoset& P, const std::vector<int>& elems,
                                              const std::vector<double>& vals, double tol) {
  int m = static_cast<int>(elems.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  std::vector<int> group(m);
  int g = 0;
  for (int i = 0; i < m; ++i) {
    if (i > 0 && vals[order[i]] - vals[order[i - 1]] > tol) ++g;
    group[order[i]] = g;
  }
  Dsu dsu(m);
  for (auto [a, b] : P.hasse_within(elems)) {
    int ia = static_cast<int>(std::lower_bound(elems.begin(), elems.end(), a) - elems.begin());
    int ib = static_cast<int>(std::lower_bound(elems.begin(), elems.end(), b) - elems.begin());
    if (group[ia] == group[ib]) dsu.join(ia, ib);
  }
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < m; ++i) comps[dsu.find(i)].push_back(elems[i]);
  std::vector<std::vector<int>> out;
  for (auto& [r, c] : comps) out.push_back(std::move(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool Tube::operator<(const Tube& o) const {
  if (whole != o.whole) return !whole;
  if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
  return elems < o.elems;
}

Tube whole_tube() {
  Tube t;
  t.whole = true;
  return t;
}

Tube canonical_tube(std::vector<int> elems, int n) {
  require(!elems.empty(), Errc::Precondition, "empty tube");
  elems = sorted_unique(std::move(elems));
  int d = elems.front() - mod1(elems.front(), n);
  Tube t;
  t.elems = shifted(elems, -d);
  return t;
}

std::string tube_key(const Tube& t) {
  if (t.whole) return "WHOLE";
  std::ostringstream os;
  for (size_t i = 0; i < t.elems.size(); ++i) os << (i ? "," : "") << t.elems[i];
  return os.str();
}

Tube parse_tube_key(const std::string& key, int n) {
  if (key == "WHOLE") return whole_tube();
  std::vector<int> v;
  std::stringstream ss(key);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stoi(tok, &used));
      require(used == tok.size(), Errc::Parse, "bad tube key " + key);
    } catch (const std::logic_error&) {
      fail(Errc::Parse, "bad tube key " + key);
    }
  }
  require(!v.empty(), Errc::Parse, "empty tube key");
  return canonical_tube(v, n);
}

AffinePoset::AffinePoset(int n, const std::vector<std::pair<int, int>>& relations) : n_(n) {
  require(n >= 1, Errc::Precondition, "poset needs n >= 1");
  std::set<std::pair<int, int>> gens;
  for (auto [p, q] : relations) {
    require(p < q, Errc::Precondition, "relations must satisfy p < q");
    int d = p - mod1(p, n);
    gens.emplace(p - d, q - d);
  }
  for (int p = 1; p <= n; ++p) gens.emplace(p, p + n);
  gens_.assign(gens.begin(), gens.end());

  pred_delta_.assign(n + 1, {});
  for (auto [a, b] : gens_) pred_delta_[a].push_back(b - a);
  depth_ = n * (n + 2);
  reach_.assign(n + 1, std::vector<char>(depth_ + 1, 0));
  for (int d = 0; d <= depth_; ++d)
    for (int r = 1; r <= n; ++r) {
      if (d == 0) {
        reach_[r][0] = 1;
        continue;
      }
      for (int delta : pred_delta_[r])
        if (delta <= d && reach_[mod1(r + delta, n)][d - delta]) {
          reach_[r][d] = 1;
          break;
        }
    }
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s) {
      bool ok = false;
      for (int d = depth_ - n + 1; d <= depth_; ++d)
        if (mod1(r + d, n) == s && reach_[r][d]) ok = true;
      require(ok, Errc::Precondition, "poset is not cofinal");
    }

  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= a + n; ++b) {
      if (!less(a, b)) continue;
      bool cover = true;
      for (int c = a + 1; c < b && cover; ++c)
        if (less(a, c) && less(c, b)) cover = false;
      if (cover) hasse_.emplace_back(a, b);
    }
}

bool AffinePoset::leq(int p, int q) const {
  int d = q - p;
  if (d < 0) return false;
  while (d > depth_) d -= n_;
  return reach_[mod1(p, n_)][d];
}

std::vector<int> AffinePoset::hasse_neighbors(int p) const {
  std::vector<int> out;
  int r = mod1(p, n_);
  int off = p - r;
  for (auto [a, b] : hasse_) {
    if (a == r) out.push_back(b + off);
    if (mod1(b, n_) == r) out.push_back(a + (p - b));
  }
  return sorted_unique(out);
}

std::vector<std::pair<int, int>> AffinePoset::hasse_within(const std::vector<int>& set) const {
  std::vector<std::pair<int, int>> out;
  for (int p : set) {
    int off = p - mod1(p, n_);
    for (auto [a, b] : hasse_)
      if (a + off == p && std::binary_search(set.begin(), set.end(), b + off)) out.emplace_back(p, b + off);
  }
  return out;
}

AffinePoset total_order(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int p = 1; p <= n; ++p) rel.emplace_back(p, p + 1);
  return AffinePoset(n, rel);
}

AffinePoset poset_from_perm(const BAP& f) {
  require(f.loopless(), Errc::HasLoop, "poset needs a loopless permutation");
  require(connected_strand_diagram(f), Errc::DisconnectedDiagram, "strand diagram is disconnected");
  int n = f.n();
  std::vector<std::pair<int, int>> rel;
  for (auto [p, q] : f_crossings(f)) {
    rel.emplace_back(p, q);
    rel.emplace_back(q, p + n);
  }
  return AffinePoset(n, rel);
}

bool is_admissible(const std::vector<double>& theta, const BAP& f) {
  require(static_cast<int>(theta.size()) == f.n(), Errc::Precondition, "theta has wrong length");
  for (auto [p, q] : f_crossings(f)) {
    double a = theta[p - 1], b = theta[q - 1];
    if (!(a < b && b < a + std::numbers::pi)) return false;
  }
  return true;
}

bool is_convex(const AffinePoset& P, const std::vector<int>& set) {
  for (int p : set)
    for (int r : set) {
      if (r <= p + 1 || !P.less(p, r)) continue;
      for (int q = p + 1; q < r; ++q)
        if (P.less(p, q) && P.less(q, r) && !std::binary_search(set.begin(), set.end(), q)) return false;
    }
  return true;
}

bool is_connected(const AffinePoset& P, const std::vector<int>& set) {
  if (set.empty()) return false;
  Dsu dsu(static_cast<int>(set.size()));
  auto idx = [&](int x) { return static_cast<int>(std::lower_bound(set.begin(), set.end(), x) - set.begin()); };
  for (auto [a, b] : P.hasse_within(set)) dsu.join(idx(a), idx(b));
  for (size_t i = 1; i < set.size(); ++i)
    if (dsu.find(static_cast<int>(i)) != dsu.find(0)) return false;
  return true;
}

bool is_tube(const AffinePoset& P, const std::vector<int>& set) {
  if (set.empty() || !std::is_sorted(set.begin(), set.end())) return false;
  std::set<int> res;
  for (int p : set)
    if (!res.insert(mod1(p, P.n())).second) return false;
  return is_convex(P, set) && is_connected(P, set);
}

std::vector<Tube> enumerate_tubes(const AffinePoset& P) {
  int n = P.n();
  std::set<std::vector<int>> found;
  for (int a = 1; a <= n; ++a) {
    std::set<std::vector<int>> seen{{a}};
    std::vector<std::vector<int>> stack{{a}};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (cur.size() > 1 && is_convex(P, cur)) found.insert(cur);
      if (static_cast<int>(cur.size()) == n) continue;
      std::set<int> res;
      for (int p : cur) res.insert(mod1(p, n));
      for (int p : cur)
        for (int q : P.hasse_neighbors(p)) {
          if (q <= a || q >= a + 2 * n || res.count(mod1(q, n))) continue;
          auto nxt = cur;
          nxt.insert(std::upper_bound(nxt.begin(), nxt.end(), q), q);
          if (seen.insert(nxt).second) stack.push_back(nxt);
        }
    }
  }
  std::vector<Tube> out;
  for (const auto& s : found) out.push_back(canonical_tube(s, n));
  std::sort(out.begin(), out.end());
  out.push_back(whole_tube());
  return out;
}

bool nested_or_disjoint(const Tube& a, const Tube& b, int n) {
  if (a.whole || b.whole) return true;
  for (int d = -2; d <= 2; ++d) {
    auto bs = shifted(b.elems, d * n);
    if (a.elems == bs) continue;
    if (!(disjoint(a.elems, bs) || subset_of(a.elems, bs) || subset_of(bs, a.elems))) return false;
  }
  return true;
}

namespace {

bool dt_acyclic(const AffinePoset& P, const std::vector<Tube>& T) {
  int n = P.n();
  std::vector<std::vector<int>> nodes;
  for (const auto& t : T)
    for (int d = -3; d <= 3; ++d) nodes.push_back(shifted(t.elems, d * n));
  int m = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> adj(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !disjoint(nodes[i], nodes[j])) continue;
      bool edge = false;
      for (int p : nodes[i]) {
        for (int q : nodes[j])
          if (P.less(p, q)) {
            edge = true;
            break;
          }
        if (edge) break;
      }
      if (edge) adj[i].push_back(j);
    }
  std::vector<int> state(m, 0);
  std::function<bool(int)> dfs = [&](int v) {
    state[v] = 1;
    for (int w : adj[v]) {
      if (state[w] == 1) return false;
      if (state[w] == 0 && !dfs(w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < m; ++v)
    if (state[v] == 0 && !dfs(v)) return false;
  return true;
}

}  // namespace

bool is_tubing(const AffinePoset& P, const std::vector<Tube>& T) {
  int n = P.n();
  std::set<std::vector<int>> classes;
  for (const auto& t : T) {
    if (t.whole || t.size() < 2 || !is_tube(P, t.elems)) return false;
    if (!classes.insert(canonical_tube(t.elems, n).elems).second) return false;
  }
  for (size_t i = 0; i < T.size(); ++i)
    for (size_t j = i; j < T.size(); ++j)
      if (!nested_or_disjoint(T[i], T[j], n)) return false;
  return dt_acyclic(P, T);
}

FaceLattice enumerate_proper_tubings(const AffinePoset& P, int max_n) {
  int n = P.n();
  if (n > max_n) fail(Errc::TooLarge, "tubing enumeration limited to n <= " + std::to_string(max_n));
  FaceLattice L;
  L.tubes = enumerate_tubes(P);
  L.tubes.pop_back();
  int m = static_cast<int>(L.tubes.size());
  std::vector<std::vector<char>> compat(m, std::vector<char>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) compat[i][j] = nested_or_disjoint(L.tubes[i], L.tubes[j], n);

  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    L.tubings.push_back(cur);
    for (int i = start; i < m; ++i) {
      bool ok = true;
      for (int j : cur) ok = ok && compat[i][j];
      if (!ok) continue;
      cur.push_back(i);
      std::vector<Tube> T;
      for (int j : cur) T.push_back(L.tubes[j]);
      if (dt_acyclic(P, T)) rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  L.fvector.assign(n, 0);
  for (const auto& t : L.tubings) {
    int dim = n - 1 - static_cast<int>(t.size());
    require(dim >= 0, Errc::Internal, "tubing larger than n-1");
    ++L.fvector[dim];
  }
  return L;
}

double theta_tilde(const std::vector<double>& theta, int p) {
  int n = static_cast<int>(theta.size());
  int r = mod1(p, n);
  return theta[r - 1] + std::numbers::pi * ((p - r) / n);
}

double alpha(const AffinePoset& P, const std::vector<int>& tau, const std::vector<double>& x) {
  double s = 0;
  auto idx = [&](int e) { return std::lower_bound(tau.begin(), tau.end(), e) - tau.begin(); };
  for (auto [a, b] : P.hasse_within(tau)) s += x[idx(b)] - x[idx(a)];
  return s;
}

std::vector<double> normalize_on_tube(const AffinePoset& P, const std::vector<int>& tau, const std::vector<double>& x) {
  double al = alpha(P, tau, x);
  require(al > 1e-300, Errc::StratumMismatch, "alpha vanishes on the tube");
  double avg = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - avg) / al;
  return out;
}

std::vector<std::vector<int>> point_partition(const AffinePoset& P, const std::vector<int>& tau,
                                              const std::vector<double>& x, double tol) {
  require(tau.size() == x.size(), Errc::Precondition, "point and tube sizes differ");
  return flat_components(P, tau, x, tol);
}

std::vector<Tube> whole_partition(const AffinePoset& P, const std::vector<double>& theta, double tol) {
  int n = P.n();
  require(static_cast<int>(theta.size()) == n, Errc::Precondition, "theta has wrong length");
  std::vector<int> win;
  std::vector<double> vals;
  for (int p = 1 - n; p <= 3 * n; ++p) {
    win.push_back(p);
    vals.push_back(theta_tilde(theta, p));
  }
  std::set<Tube> out;
  for (const auto& c : flat_components(P, win, vals, tol))
    if (c.front() >= 1 && c.front() <= n && c.back() < 3 * n) out.insert(canonical_tube(c, n));
  return {out.begin(), out.end()};
}

namespace {

void validate_finite(const AffinePoset& P, const std::vector<int>& tau, const std::vector<double>& x) {
  require(x.size() == tau.size(), Errc::MissingData, "data has wrong length for tube " + tube_key({tau, false}));
  double s = std::accumulate(x.begin(), x.end(), 0.0);
  require(std::abs(s) < 1e-9, Errc::StratumMismatch, "tube data does not sum to zero");
  require(std::abs(alpha(P, tau, x) - 1) < 1e-9, Errc::StratumMismatch, "tube data has alpha != 1");
  auto idx = [&](int e) { return std::lower_bound(tau.begin(), tau.end(), e) - tau.begin(); };
  for (auto [a, b] : P.hasse_within(tau))
    require(x[idx(a)] <= x[idx(b)] + 1e-12, Errc::StratumMismatch, "tube data is not monotone");
}

std::vector<std::vector<int>> as_sets(const std::vector<Tube>& ts) {
  std::vector<std::vector<int>> out;
  for (const auto& t : ts) out.push_back(t.elems);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<int>> children(const CompPoint& x, const std::vector<int>& tau, int n) {
  std::vector<std::vector<int>> cand;
  for (const auto& c : x.tubing) {
    if (c.size() >= static_cast<int>(tau.size())) continue;
    for (int d = -3; d <= 3; ++d) {
      auto s = shifted(c.elems, d * n);
      if (subset_of(s, tau)) cand.push_back(s);
    }
  }
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < cand.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < cand.size() && maximal; ++j)
      if (i != j && cand[j].size() > cand[i].size() && subset_of(cand[i], cand[j])) maximal = false;
    if (maximal) out.push_back(cand[i]);
  }
  for (int e : tau) {
    bool covered = false;
    for (const auto& c : out) covered = covered || std::binary_search(c.begin(), c.end(), e);
    if (!covered) out.push_back({e});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Tube> whole_children(const CompPoint& x, int n) {
  std::vector<Tube> out;
  for (const auto& c : x.tubing) {
    bool maximal = true;
    for (const auto& o : x.tubing) {
      if (o.size() <= c.size()) continue;
      for (int d = -3; d <= 3 && maximal; ++d)
        if (subset_of(shifted(c.elems, d * n), o.elems)) maximal = false;
    }
    if (maximal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate_point(const AffinePoset& P, const CompPoint& x) {
  int n = P.n();
  require(static_cast<int>(x.whole.size()) == n, Errc::MissingData, "whole datum has wrong length");
  require(std::abs(x.whole[0]) < 1e-12, Errc::StratumMismatch, "theta_1 must be 0");
  require(is_tubing(P, x.tubing), Errc::StratumMismatch, "tubing is not a proper tubing");
  for (int p = 1; p <= n; ++p)
    for (int q : P.hasse_neighbors(p))
      if (q > p)
        require(theta_tilde(x.whole, p) <= theta_tilde(x.whole, q) + 1e-12, Errc::StratumMismatch,
                "whole datum is not in the order polytope");
  require(x.data.size() == x.tubing.size(), Errc::MissingData, "data must match the tubing exactly");
  for (const auto& t : x.tubing) {
    auto it = x.data.find(t.elems);
    require(it != x.data.end(), Errc::MissingData, "no data for tube " + tube_key(t));
    validate_finite(P, t.elems, it->second);
  }

  std::vector<std::vector<int>> got;
  for (const auto& t : whole_partition(P, x.whole))
    if (t.size() > 1) got.push_back(t.elems);
  std::sort(got.begin(), got.end());
  require(got == as_sets(whole_children(x, n)), Errc::StratumMismatch, "whole datum does not match the tubing");
  for (const auto& t : x.tubing) {
    auto blocks = point_partition(P, t.elems, x.data.at(t.elems));
    require(blocks == children(x, t.elems, n), Errc::StratumMismatch, "data on tube " + tube_key(t) +
                                                                          " does not match the tubing");
  }
}

CompPoint make_comp_point(const AffinePoset& P, std::vector<Tube> tubing, std::vector<double> whole,
                          std::map<std::vector<int>, std::vector<double>> data) {
  CompPoint x;
  int n = P.n();
  for (auto& t : tubing) {
    require(!t.whole, Errc::Precondition, "tubing contains WHOLE");
    auto c = canonical_tube(t.elems, n);
    auto it = data.find(t.elems);
    if (it == data.end()) it = data.find(c.elems);
    require(it != data.end(), Errc::MissingData, "no data for tube " + tube_key(c));
    x.data[c.elems] = it->second;
    x.tubing.push_back(c);
  }
  std::sort(x.tubing.begin(), x.tubing.end());
  require(data.size() == tubing.size(), Errc::MissingData, "data must match the tubing exactly");
  x.whole = std::move(whole);
  validate_point(P, x);
  return x;
}

CompPoint interior_point(const AffinePoset& P, const std::vector<double>& theta) {
  return make_comp_point(P, {}, theta, {});
}

std::vector<double> derive(const AffinePoset& P, const CompPoint& x, const std::vector<int>& tau) {
  int n = P.n();
  require(tau.size() > 1 && std::is_sorted(tau.begin(), tau.end()), Errc::Precondition, "derive needs a sorted proper tube");
  const std::vector<int>* best = nullptr;
  int best_shift = 0;
  for (const auto& c : x.tubing)
    for (int d = -3; d <= 3; ++d) {
      auto s = shifted(c.elems, d * n);
      if (subset_of(tau, s) && (!best || c.elems.size() < best->size())) {
        best = &c.elems;
        best_shift = d * n;
      }
    }
  std::vector<double> vals;
  if (best) {
    const auto& dat = x.data.at(*best);
    if (best->size() == tau.size()) return dat;
    for (int e : tau) {
      auto pos = std::lower_bound(best->begin(), best->end(), e - best_shift) - best->begin();
      vals.push_back(dat[pos]);
    }
  } else {
    for (int e : tau) vals.push_back(theta_tilde(x.whole, e));
  }
  require(alpha(P, tau, vals) > 1e-12, Errc::StratumMismatch, "tube is flat in its enclosing datum");
  return normalize_on_tube(P, tau, vals);
}

bool is_circular_chain(const AffinePoset& P, const std::vector<int>& chain) {
  if (chain.empty()) return false;
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!P.less(chain[i], chain[i + 1])) return false;
  return P.less(chain.back(), chain.front() + P.n());
}

std::vector<int> rotate_chain(const std::vector<int>& chain, int n) {
  std::vector<int> out(chain.begin() + 1, chain.end());
  out.push_back(chain.front() + n);
  return out;
}

std::vector<double> zeta(const AffinePoset& P, const CompPoint& x, const std::vector<int>& chain) {
  require(is_circular_chain(P, chain), Errc::NotAChain, "not a circular chain");
  int n = P.n();
  int r = static_cast<int>(chain.size());
  std::set<int> res;
  for (int p : chain) res.insert(mod1(p, n));
  const Tube* best = nullptr;
  for (const auto& c : x.tubing) {
    std::set<int> cr;
    for (int e : c.elems) cr.insert(mod1(e, n));
    if (std::includes(cr.begin(), cr.end(), res.begin(), res.end()) && (!best || c.size() < best->size()))
      best = &c;
  }
  std::vector<double> z(r);
  if (!best) {
    for (int i = 0; i + 1 < r; ++i)
      z[i] = std::sin(theta_tilde(x.whole, chain[i + 1]) - theta_tilde(x.whole, chain[i]));
    z[r - 1] = std::sin(theta_tilde(x.whole, chain[0] + n) - theta_tilde(x.whole, chain[r - 1]));
  } else {
    const auto& dat = x.data.at(best->elems);
    std::vector<double> v(r);
    for (int i = 0; i < r; ++i) {
      int j = 0;
      while (mod1(best->elems[j], n) != mod1(chain[i], n)) ++j;
      v[i] = dat[j];
    }
    for (int i = 0; i + 1 < r; ++i) z[i] = std::abs(v[i + 1] - v[i]);
    z[r - 1] = std::abs(v[0] - v[r - 1]);
  }
  for (double& e : z) e = std::max(e, 0.0);
  double mx = *std::max_element(z.begin(), z.end());
  require(mx > 0, Errc::Internal, "zeta vanished identically");
  for (double& e : z) e /= mx;
  return z;
}

bool same_point(const CompPoint& a, const CompPoint& b, double tol) {
  if (a.tubing != b.tubing || a.whole.size() != b.whole.size()) return false;
  for (size_t i = 0; i < a.whole.size(); ++i)
    if (std::abs(a.whole[i] - b.whole[i]) > tol) return false;
  for (const auto& [k, v] : a.data) {
    auto it = b.data.find(k);
    if (it == b.data.end() || it->second.size() != v.size()) return false;
    for (size_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i] - it->second[i]) > tol) return false;
  }
  return true;
}

}  // namespace critgrass
