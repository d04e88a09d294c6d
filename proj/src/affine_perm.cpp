#include "critgrass/affine_perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "critgrass/errors.hpp"

namespace critgrass {

int mod1(int a, int n) {
  int r = a % n;
  if (r <= 0) r += n;
  return r;
}

static int floordiv(int a, int n) {
  int q = a / n;
  if ((a % n != 0) && ((a < 0) != (n < 0))) --q;
  return q;
}

int BoundedAffinePermutation::operator()(int j) const {
  int n = this->n();
  int r = mod1(j, n);
  int d = (j - r) / n;
  return w_[r - 1] + d * n;
}

int BoundedAffinePermutation::fbar(int j) const { return mod1((*this)(j), n()); }
bool BoundedAffinePermutation::is_loop(int j) const { return (*this)(j) == j; }
bool BoundedAffinePermutation::is_coloop(int j) const { return (*this)(j) == j + n(); }

bool BoundedAffinePermutation::loopless() const {
  for (int j = 1; j <= n(); ++j)
    if (is_loop(j)) return false;
  return true;
}

BAP make_bap(const std::vector<int>& window) {
  int n = static_cast<int>(window.size());
  require(n >= 1, Errc::OutOfBounds, "empty window");
  std::vector<char> seen(n + 1, 0);
  long sum = 0;
  for (int j = 1; j <= n; ++j) {
    int v = window[j - 1];
    require(j <= v && v <= j + n, Errc::OutOfBounds, "window value out of [j, j+n] at " + std::to_string(j));
    int r = mod1(v, n);
    require(!seen[r], Errc::NotBijective, "repeated residue " + std::to_string(r));
    seen[r] = 1;
    sum += v - j;
  }
  require(sum % n == 0, Errc::BadSum, "sum of f(j)-j not a multiple of n");
  BAP f;
  f.w_ = window;
  f.k_ = static_cast<int>(sum / n);
  return f;
}

BAP top_cell(int k, int n) {
  require(n >= 1 && 0 <= k && k <= n, Errc::Precondition, "top_cell needs 0 <= k <= n");
  std::vector<int> w(n);
  for (int j = 1; j <= n; ++j) w[j - 1] = j + k;
  return make_bap(w);
}

int length(const BAP& f) {
  int n = f.n(), count = 0;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q < p + n; ++q)
      if (f(p) > f(q)) ++count;
  return count;
}

BAP lift_loopless(const std::vector<int>& fbar) {
  int n = static_cast<int>(fbar.size());
  std::vector<int> w(n);
  for (int j = 1; j <= n; ++j) {
    int v = fbar[j - 1];
    require(1 <= v && v <= n, Errc::OutOfBounds, "f̄ value outside [n]");
    w[j - 1] = v > j ? v : v + n;
  }
  return make_bap(w);
}

BAP conjugate_shift(const BAP& f, int c) {
  int n = f.n();
  std::vector<int> w(n);
  for (int j = 1; j <= n; ++j) w[j - 1] = f(j - c) + c;
  return make_bap(w);
}

namespace {

// Chord positions: -i at 2i-2, +i at 2i-1.
bool chords_cross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  bool c_in = a < c && c < b;
  bool d_in = a < d && d < b;
  return c_in != d_in;
}

std::vector<std::array<int, 2>> chords(const BAP& f) {
  int n = f.n();
  std::vector<std::array<int, 2>> ch(n + 1);
  for (int s = 1; s <= n; ++s) {
    int p = f.fbar(s);
    ch[p] = {2 * s - 1, 2 * p - 2};
  }
  return ch;
}

}  // namespace

std::vector<std::pair<int, int>> f_crossings(const BAP& f) {
  require(f.loopless(), Errc::HasLoop, "crossings need a loopless permutation");
  int n = f.n();
  auto ch = chords(f);
  std::vector<std::pair<int, int>> out;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      if (chords_cross(ch[p][0], ch[p][1], ch[q][0], ch[q][1])) out.emplace_back(p, q);
  return out;
}

bool connected_strand_diagram(const BAP& f) {
  int n = f.n();
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [p, q] : f_crossings(f)) parent[find(p)] = find(q);
  for (int p = 2; p <= n; ++p)
    if (find(p) != find(1)) return false;
  return true;
}

PeriodicPartition::PeriodicPartition(int n, std::vector<std::pair<int, int>> blocks) : n_(n) {
  require(n >= 2, Errc::Precondition, "partition needs n >= 2");
  for (auto& [a, b] : blocks) {
    require(b > a, Errc::Precondition, "empty block");
    require(b - a < n, Errc::IntervalTooLong, "block of size >= n");
    int d = a - mod1(a, n);
    a -= d;
    b -= d;
  }
  std::sort(blocks.begin(), blocks.end());
  for (size_t i = 0; i + 1 < blocks.size(); ++i)
    require(blocks[i].second == blocks[i + 1].first, Errc::Precondition, "blocks do not tile a period");
  require(!blocks.empty() && blocks.back().second == blocks.front().first + n, Errc::Precondition,
          "blocks do not tile a period");
  blocks_ = std::move(blocks);
}

PeriodicPartition PeriodicPartition::from_cyclic(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<std::pair<int, int>> iv;
  for (const auto& b : blocks) {
    require(!b.empty(), Errc::Precondition, "empty block");
    int a = b.front();
    for (size_t i = 1; i < b.size(); ++i)
      require(mod1(b[i], n) == mod1(a + static_cast<int>(i), n), Errc::Precondition, "block is not a cyclic interval");
    iv.emplace_back(a, a + static_cast<int>(b.size()));
  }
  return PeriodicPartition(n, iv);
}

int PeriodicPartition::block_of(int p) const {
  for (int i = 0; i < size(); ++i) {
    auto [a, b] = blocks_[i];
    int d = floordiv(p - a, n_);
    if (p - d * n_ < b) return i;
  }
  fail(Errc::Internal, "block_of fell through");
}

std::vector<int> PeriodicPartition::elements(int i) const {
  std::vector<int> out;
  for (int x = blocks_[i].first; x < blocks_[i].second; ++x) out.push_back(mod1(x, n_));
  return out;
}

bool PeriodicPartition::generic(int k) const {
  int lim = std::min(k - 1, n_ - k);
  for (auto [a, b] : blocks_)
    if (b - a > lim) return false;
  return true;
}

int PeriodicPartition::max_block() const {
  int m = 0;
  for (auto [a, b] : blocks_) m = std::max(m, b - a);
  return m;
}

static int overlap(int a1, int b1, int a2, int b2) { return std::max(0, std::min(b1, b2) - std::max(a1, a2)); }

Overlaps block_overlaps(int lo, int hi, int k, int n) {
  Overlaps o;
  o.ov_l = overlap(lo - k + n, hi - k + n, lo, hi);
  o.ov_r = overlap(lo - k + 1, hi - k + 1, lo, hi);
  return o;
}

BAP g_from_partition(const PeriodicPartition& B, int k) {
  int n = B.n();
  require(0 <= k && k <= n, Errc::Precondition, "k outside [0, n]");
  std::vector<int> w(n, 0);
  for (const auto& [lo0, hi0] : B.blocks()) {
    require(hi0 - lo0 < n, Errc::IntervalTooLong, "block of size >= n");
    for (int d = -2; d <= 2; ++d) {
      int lo = lo0 + d * n, hi = hi0 + d * n;
      Overlaps o = block_overlaps(lo, hi, k, n);
      int a0 = lo - k, a1 = hi - k;
      for (int p = a0; p < a1; ++p) {
        if (p < 1 || p > n) continue;
        int v;
        if (p < a0 + o.ov_l) {
          v = p + n;
        } else if (p >= a1 - o.ov_r) {
          v = p + 1;
        } else {
          int i = p - (a0 + o.ov_l);
          v = hi - o.ov_l - 1 - i;
        }
        w[p - 1] = v;
      }
    }
  }
  BAP g = make_bap(w);
  require(g.k() == k, Errc::Internal, "g_B landed in the wrong k");
  return g;
}

Necklace grassmann_necklace(const BAP& g) {
  int n = g.n();
  Necklace N(n);
  for (int q = 1; q <= n; ++q) {
    std::set<int> s;
    for (int p = q - n; p < q; ++p)
      if (q <= g(p)) s.insert(mod1(g(p), n));
    N[q - 1] = Subset(s.begin(), s.end());
  }
  return N;
}

bool gale_leq(const Subset& I, const Subset& J, int q, int n) {
  if (I.size() != J.size()) return false;
  auto key = [&](int x) { return mod1(x - q + 1, n); };
  std::vector<int> a, b;
  for (int x : I) a.push_back(key(x));
  for (int x : J) b.push_back(key(x));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool positroid_contains(const Necklace& N, const Subset& J, int n) {
  for (int q = 1; q <= n; ++q)
    if (!gale_leq(N[q - 1], J, q, n)) return false;
  return true;
}

bool positroid_contains(const BAP& g, const Subset& J) {
  return positroid_contains(grassmann_necklace(g), J, g.n());
}

bool is_weakly_separated(const Subset& I, const Subset& J, int n) {
  std::vector<int> side(n + 1, 0);
  for (int x : I) side[x] += 1;
  for (int x : J) side[x] += 2;
  int runs = 0, last = 0;
  for (int x = 1; x <= n; ++x) {
    int s = side[x];
    if (s == 1 || s == 2) {
      if (s != last) ++runs;
      last = s;
    }
  }
  return runs <= 3;
}

bool is_right_aligned(const Subset& J, const PeriodicPartition& B) {
  std::vector<char> in(B.n() + 1, 0);
  for (int x : J) in[x] = 1;
  for (int i = 0; i < B.size(); ++i) {
    auto e = B.elements(i);
    for (size_t t = 0; t + 1 < e.size(); ++t)
      if (in[e[t]] && !in[e[t + 1]]) return false;
  }
  return true;
}

static Subset cyclic_interval(int a, int len, int n) {
  Subset s;
  for (int i = 0; i < len; ++i) s.push_back(mod1(a + i, n));
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<NecklaceTerm> necklace_closed_form(const PeriodicPartition& B, int k) {
  int n = B.n();
  require(B.generic(k), Errc::Precondition, "closed form needs a generic partition");
  std::vector<NecklaceTerm> out;
  for (const auto& [p, q] : B.blocks()) {
    for (int r = p; r < q; ++r) {
      NecklaceTerm t;
      t.p = p;
      t.q = q;
      t.r = r;
      t.j = mod1(p + q - k - r, n);
      int left = k - (q - r);
      Subset a = cyclic_interval(t.j, left, n);
      Subset b = cyclic_interval(r, q - r, n);
      std::set<int> s(a.begin(), a.end());
      s.insert(b.begin(), b.end());
      t.set = Subset(s.begin(), s.end());
      out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end(), [](const NecklaceTerm& a, const NecklaceTerm& b) { return a.j < b.j; });
  for (int j = 0; j < n; ++j) require(out[j].j == j + 1, Errc::Internal, "closed form does not cover every j once");
  return out;
}

static bool passes_checks(const Necklace& N, const Subset& J, int n, int k) {
  if (static_cast<int>(J.size()) != k) return false;
  if (!positroid_contains(N, J, n)) return false;
  for (const auto& I : N)
    if (!is_weakly_separated(I, J, n)) return false;
  return true;
}

static Subset exchange(const Subset& I, int add, int drop) {
  std::set<int> s(I.begin(), I.end());
  s.insert(add);
  s.erase(drop);
  return Subset(s.begin(), s.end());
}

bool arch_certificate(const BAP& g, int j, int t) {
  int n = g.n();
  require(1 <= j && j <= n && 1 <= t && t <= n, Errc::OutOfBounds, "index outside [n]");
  int r = g.fbar(mod1(j - 1, n));
  if (t == j || j == r || r == t) fail(Errc::DegenerateIndices, "need t != j != r != t");
  Necklace N = grassmann_necklace(g);
  const Subset& Ij = N[j - 1];
  return passes_checks(N, exchange(Ij, t, j), n, g.k()) && passes_checks(N, exchange(Ij, t, r), n, g.k());
}

SquareCertificate square_face_certificate(const PeriodicPartition& B, const std::array<int, 4>& blocks, int k,
                                          const Subset& I) {
  int n = B.n();
  require(k <= n - 2, Errc::Precondition, "square certificate needs k <= n-2");
  require(B.generic(k), Errc::Precondition, "square certificate needs a generic partition");
  for (int i = 0; i < 4; ++i) {
    require(0 <= blocks[i] && blocks[i] < B.size(), Errc::OutOfBounds, "block index");
    if (i > 0) require(blocks[i - 1] < blocks[i], Errc::Precondition, "blocks must be distinct, clockwise");
  }
  require(static_cast<int>(I.size()) == k + 2 && is_right_aligned(I, B), Errc::Precondition,
          "I must be right-aligned of size k+2");
  SquareCertificate c;
  c.I = I;
  std::vector<char> in(n + 1, 0);
  for (int x : I) in[x] = 1;
  for (int i = 0; i < 4; ++i) {
    c.t[i] = 0;
    for (int x : B.elements(blocks[i]))
      if (in[x]) {
        c.t[i] = x;
        break;
      }
    require(c.t[i] != 0, Errc::Precondition, "I misses a chosen block");
  }
  Necklace N = grassmann_necklace(g_from_partition(B, k));
  c.ok = true;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::set<int> s(I.begin(), I.end());
      s.erase(c.t[a]);
      s.erase(c.t[b]);
      if (!passes_checks(N, Subset(s.begin(), s.end()), n, k)) c.ok = false;
    }
  return c;
}

SquareCertificate square_face_certificate(const PeriodicPartition& B, const std::array<int, 4>& blocks, int k) {
  int n = B.n();
  require(k <= n - 2, Errc::Precondition, "square certificate needs k <= n-2");
  // Grow suffixes: chosen blocks first, then the rest.
  std::vector<int> order(blocks.begin(), blocks.end());
  for (int i = 0; i < B.size(); ++i)
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  std::vector<int> taken(B.size(), 0);
  int size = 0;
  for (int b : blocks) {
    taken[b] = 1;
    ++size;
  }
  require(size <= k + 2, Errc::Precondition, "k too small for four blocks");
  bool grew = true;
  while (size < k + 2 && grew) {
    grew = false;
    for (int b : order) {
      if (size == k + 2) break;
      int len = B.blocks()[b].second - B.blocks()[b].first;
      if (taken[b] < len) {
        ++taken[b];
        ++size;
        grew = true;
      }
    }
  }
  require(size == k + 2, Errc::Precondition, "cannot build a right-aligned set of size k+2");
  std::set<int> s;
  for (int b = 0; b < B.size(); ++b) {
    auto e = B.elements(b);
    for (int i = 0; i < taken[b]; ++i) s.insert(e[e.size() - 1 - i]);
  }
  return square_face_certificate(B, blocks, k, Subset(s.begin(), s.end()));
}

std::vector<Subset> k_subsets(int k, int n) {
  std::vector<Subset> out;
  Subset cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x <= n; ++x) {
      if (n - x + 1 < k - static_cast<int>(cur.size())) break;
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace critgrass
