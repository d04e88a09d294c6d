#include <doctest.h>

#include <random>

#include "critgrass/affine_perm.hpp"
#include "critgrass/errors.hpp"
#include "helpers.hpp"

using namespace critgrass;

TEST_CASE("top cells and lengths") {
  CHECK(top_cell(2, 4).window() == std::vector<int>{3, 4, 5, 6});
  for (int n = 3; n <= 6; ++n)
    for (int k = 1; k < n; ++k) {
      BAP f = top_cell(k, n);
      CHECK(length(f) == oracle::inversions(f.window()));
      CHECK(length(f) == 0);
    }
  std::mt19937_64 rng(2);
  auto ws = oracle::bound_windows(2, 5);
  for (int i = 0; i < 40; ++i) {
    auto& w = ws[rng() % ws.size()];
    CHECK(length(make_bap(w)) == oracle::inversions(w));
  }
}

TEST_CASE("crossings and connectivity") {
  // Two chords of a 2-gon share both endpoints and do not cross.
  CHECK(f_crossings(lift_loopless({2, 1})).empty());
  CHECK(f_crossings(top_cell(2, 3)).size() == 3);
  CHECK(connected_strand_diagram(top_cell(2, 3)));
  CHECK_FALSE(connected_strand_diagram(lift_loopless({2, 1, 4, 3})));
  auto c24 = f_crossings(top_cell(2, 4));
  for (auto [p, q] : c24) CHECK(p < q);
}

TEST_CASE("g_B examples") {
  PeriodicPartition pairs(4, {{1, 3}, {3, 5}});
  CHECK(g_from_partition(pairs, 2).window() == std::vector<int>{4, 3, 6, 5});
  PeriodicPartition singles(4, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(g_from_partition(singles, 2).window() == std::vector<int>{3, 4, 5, 6});
}

TEST_CASE("g_B is the unique longest loopless map sending each A to B") {
  for (int n = 3; n <= 5; ++n)
    for (int k = 2; k <= n - 1; ++k) {
      auto wins = oracle::bound_windows(k, n);
      for (const auto& B : testutil::all_partitions(n)) {
        if (!B.generic(k) || B.max_block() >= n) continue;
        int best = -1, count = 0;
        std::vector<int> arg;
        for (const auto& w : wins) {
          bool ok = true;
          for (int j = 1; j <= n && ok; ++j) ok = oracle::perm_at(w, j) != j;
          for (auto [a, b] : B.blocks()) {
            std::set<int> img, want;
            for (int p = a; p < b; ++p) {
              img.insert(oracle::perm_at(w, p - k));
              want.insert(p);
            }
            ok = ok && img == want;
          }
          if (!ok) continue;
          int l = oracle::inversions(w);
          if (l > best) {
            best = l;
            count = 1;
            arg = w;
          } else if (l == best) {
            ++count;
          }
        }
        REQUIRE(best >= 0);
        CHECK(count == 1);
        CHECK(g_from_partition(B, k).window() == arg);
      }
    }
}

TEST_CASE("Grassmann necklaces") {
  auto N = grassmann_necklace(make_bap({4, 3, 6, 5}));
  CHECK(N[0] == Subset{1, 2});
  CHECK(N[1] == Subset{2, 4});
  CHECK(N[2] == Subset{3, 4});
  CHECK(N[3] == Subset{2, 4});
  std::mt19937_64 rng(4);
  for (int n = 4; n <= 6; ++n) {
    auto ws = oracle::bound_windows(2, n);
    for (int i = 0; i < 20; ++i) {
      auto& w = ws[rng() % ws.size()];
      auto got = grassmann_necklace(make_bap(w));
      auto want = oracle::necklace(w);
      for (int q = 0; q < n; ++q) CHECK(got[q] == want[q]);
    }
  }
  auto T = grassmann_necklace(top_cell(3, 6));
  CHECK(T[4] == Subset{1, 5, 6});
}

TEST_CASE("positroid membership and weak separation agree with direct definitions") {
  std::mt19937_64 rng(6);
  for (int n = 4; n <= 6; ++n)
    for (int k = 2; k < n - 1; ++k) {
      auto ws = oracle::bound_windows(k, n);
      for (int i = 0; i < 10; ++i) {
        auto& w = ws[rng() % ws.size()];
        auto N = oracle::necklace(w);
        for (const auto& J : k_subsets(k, n)) CHECK(positroid_contains(make_bap(w), J) == oracle::in_positroid(N, J, n));
      }
      auto S = k_subsets(k, n);
      for (const auto& I : S)
        for (const auto& J : S) CHECK(is_weakly_separated(I, J, n) == oracle::weakly_separated(I, J, n));
    }
  CHECK_FALSE(positroid_contains(make_bap({4, 3, 6, 5}), {1, 4}));
  CHECK(positroid_contains(make_bap({4, 3, 6, 5}), {1, 3}));
  CHECK_FALSE(is_weakly_separated({1, 3}, {2, 4}, 4));
  CHECK(is_weakly_separated({1, 2}, {2, 3}, 4));
}

TEST_CASE("right alignment") {
  PeriodicPartition B(6, {{1, 3}, {3, 6}, {6, 7}});
  CHECK(is_right_aligned({1, 2, 6}, B));
  CHECK(is_right_aligned({2, 5}, B));
  CHECK_FALSE(is_right_aligned({3, 5}, B));
  CHECK_FALSE(is_right_aligned({4}, B));
}

TEST_CASE("arch and square certificates") {
  CHECK_THROWS_AS(arch_certificate(top_cell(2, 4), 1, 1), Error);
  bool found_false = false;
  BAP g = top_cell(3, 6);
  for (int j = 1; j <= 6; ++j)
    for (int t = 1; t <= 6; ++t) {
      int r = g.fbar(mod1(j - 1, 6));
      if (t == j || r == j || r == t) continue;
      if (!arch_certificate(g, j, t)) found_false = true;
    }
  CHECK(found_false);
  PeriodicPartition singles8(8, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}});
  CHECK(square_face_certificate(singles8, {0, 2, 4, 6}, 4).ok);
  PeriodicPartition singles4(4, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(square_face_certificate(singles4, {0, 1, 2, 3}, 2).ok);
  CHECK_THROWS_AS(square_face_certificate(singles4, {0, 1, 2, 3}, 3), Error);
}

TEST_CASE("necklace closed form on random generic partitions") {
  std::mt19937_64 rng(9);
  int tested = 0;
  while (tested < 50) {
    int n = 4 + static_cast<int>(rng() % 7), k = 2 + static_cast<int>(rng() % (n - 3));
    std::vector<int> cuts;
    for (int p = 1; p <= n; ++p)
      if (rng() % 2) cuts.push_back(p);
    if (cuts.size() < 2) continue;
    std::vector<std::pair<int, int>> iv;
    for (size_t i = 0; i < cuts.size(); ++i) iv.emplace_back(cuts[i], i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + n);
    PeriodicPartition B(n, iv);
    if (!B.generic(k)) continue;
    auto want = oracle::necklace(g_from_partition(B, k).window());
    auto cf = necklace_closed_form(B, k);
    for (int j = 0; j < n; ++j) CHECK(cf[j].set == want[j]);
    ++tested;
  }
}
