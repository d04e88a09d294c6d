#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "critgrass/construct.hpp"
#include "critgrass/critical.hpp"
#include "critgrass/errors.hpp"
#include "critgrass/polygon.hpp"
#include "critgrass/sampling.hpp"
#include "critgrass/topcell.hpp"
#include "oracles.hpp"

using namespace critgrass;

TEST_CASE("Le graphs realize the top cell") {
  for (int n = 3; n <= 8; ++n)
    for (int k = 2; k <= n - 1; ++k) {
      LeGraph L = le_graph(k, n);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(bounded_affine_perm_of(L.g) == top_cell(k, n));
      CHECK(is_contracted(L.g));
      CHECK(count_faces(L.g) == k * (n - k) + 1);
      CHECK(static_cast<int>(L.black.size()) == k * (n - k));
      auto s = trace_strands(L.g);
      for (auto [key, v] : L.black) {
        auto lab = s.edge_label[L.sw.at(key)];
        CHECK(lab[0] == key.first);
        CHECK(lab[1] == key.second);
      }
    }
  LeGraph L = le_graph(4, 10);
  CHECK(L.black.size() == 24);
  CHECK(count_faces(L.g) == 25);
  CHECK_THROWS_AS(le_graph(1, 4), Error);
}

TEST_CASE("inscribed polygons") {
  auto sq = solve_inscribed_polygon({1, 1, 1, 1});
  CHECK(sq.R == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sq.dist(0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  auto tri = solve_inscribed_polygon({3, 4, 5});
  CHECK(tri.R == doctest::Approx(2.5).epsilon(1e-12));
  auto line = solve_inscribed_polygon({1, 1, 2});
  CHECK(line.degenerate);
  CHECK(line.dist(0, 2) == doctest::Approx(2.0));
  try {
    solve_inscribed_polygon({1, 1, 3});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PolygonInequalityViolated);
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> sides(5);
    double mx, tot;
    do {
      for (double& s : sides) s = U(rng);
      mx = *std::max_element(sides.begin(), sides.end());
      tot = 0;
      for (double s : sides) tot += s;
    } while (2 * mx >= tot);
    auto poly = solve_inscribed_polygon(sides);
    for (int j = 0; j < 5; ++j) CHECK(poly.dist(j, (j + 1) % 5) == doctest::Approx(sides[j]).epsilon(1e-9));
    auto t = cross_ratio_identities(poly, 0, 1, 3, 4);
    CHECK(std::abs(t[1] - t[0] - t[2]) < 1e-9 * t[1]);
  }
}

TEST_CASE("phi inverts the preimage construction") {
  std::mt19937_64 rng(2);
  for (int n = 4; n <= 7; ++n)
    for (int i = 0; i < 50; ++i) {
      auto y = random_hypersimplex_point(n, rng);
      auto z = phi(preimage_of(y), n);
      for (int p = 0; p < n; ++p) CHECK(z[p] == doctest::Approx(y[p]).epsilon(1e-10));
    }
  auto z = phi(preimage_of({0, 0, 1, 1}), 4);
  CHECK(z[2] == doctest::Approx(1.0));
}

TEST_CASE("hypersimplex membership") {
  CHECK_NOTHROW(check_hypersimplex({0.5, 0.5, 0.5, 0.5}));
  CHECK_NOTHROW(check_hypersimplex({1, 1, 0, 0}));
  CHECK_THROWS_AS(check_hypersimplex({1.5, 0.5, 0, 0}), Error);
  CHECK_THROWS_AS(check_hypersimplex({0.5, 0.5, 0.5, 0.4}), Error);
  CHECK_THROWS_AS(check_hypersimplex({-0.1, 0.5, 0.8, 0.8}), Error);
}

TEST_CASE("psi forgets the seed on a line point") {
  Seeds a{{{1, 2, 3}, {1, 2}}}, b{{{1, 2, 3}, {5, 1}}};
  CHECK(projective_distance(psi({0, 0, 1, 1}, 2, a), psi({0, 0, 1, 1}, 2, b)) < 1e-12);
}

TEST_CASE("limit graph reduction recovers the positroid cell") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.2, 1.2);
  int reduced = 0;
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 5}, {3, 6}, {2, 6}, {4, 6}}) {
    LeGraph L = le_graph(k, n);
    const Realization& R = default_realization(top_cell(k, n));
    for (int it = 0; it < 60; ++it) {
      auto y = random_hypersimplex_point(n, rng);
      CompPoint x = preimage_of(y);
      Seeds seeds;
      for (const auto& t : x.tubing) {
        std::vector<double> g(t.size() - 1);
        for (double& v : g) v = U(rng);
        seeds[t.elems] = g;
      }
      x = preimage_of(y, seeds);
      auto B = grouped_partition(x, k, n);
      auto xr = rotate_point(x, B.shift, n);
      auto wp = limit_weights(R, xr);
      auto ref = measb(R, xr);
      for (int br : {1, 2}) {
        CAPTURE(k);
        CAPTURE(n);
        CAPTURE(br);
        try {
          auto red = reduce_limit_graph(L, R, wp, B, B.special < 0 ? 0 : br);
          ++reduced;
          CHECK(projective_distance(boundary_measurement(red.g, red.w), ref) < 1e-9);
          if (B.special >= 0) {
            BAP g = g_from_partition(B.blocks, k);
            CHECK(bounded_affine_perm_of(red.g) == g);
            CHECK(count_faces(red.g) == k * (n - k) + 1 - length(g));
          }
        } catch (const Error& e) {
          CHECK(e.code() == Errc::BranchUnavailable);
        }
        if (B.special < 0) break;
      }
    }
  }
  CHECK(reduced > 200);
}

TEST_CASE("grouped partitions put n and n+1 in the special block") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    int n = 4 + static_cast<int>(rng() % 4);
    auto x = preimage_of(random_hypersimplex_point(n, rng));
    auto B = grouped_partition(x, 2, n);
    if (B.special < 0) continue;
    auto [a, b] = B.blocks.blocks()[B.special];
    CHECK(a <= n);
    CHECK(b >= n + 2);
  }
}

TEST_CASE("boundary strata of the (2,4) top cell match the hypersimplex") {
  BAP f = top_cell(2, 4);
  auto rep = strata_sample(f, all_faces(f), 3, 7, Exec::Serial);
  CHECK(rep.method == "phi-grid");
  CHECK(rep.groups == oracle::hypersimplex_faces(4));
  CHECK(rep.partial_overlaps.empty());
  CHECK(rep.nonnegative);
  CHECK(rep.max_residual < 1e-9);
}
