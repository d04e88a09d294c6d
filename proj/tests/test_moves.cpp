#include <doctest.h>

#include <random>

#include "critgrass/affine_perm.hpp"
#include "critgrass/construct.hpp"
#include "critgrass/harness.hpp"
#include "critgrass/moves.hpp"
#include "helpers.hpp"

using namespace critgrass;

TEST_CASE("every move preserves the brute-force measurement on fixtures") {
  std::mt19937_64 rng(21);
  const MoveKind kinds[] = {MoveKind::ParallelReduction, MoveKind::LeafRemoval, MoveKind::DipoleRemoval,
                            MoveKind::Contract,          MoveKind::Uncontract,  MoveKind::SquareMove};
  std::map<MoveKind, int> seen;
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 5}}) {
    for (const auto& [name, g] : move_fixtures(k, n)) {
      for (MoveKind m : kinds)
        for (const auto& site : find_sites(g, m)) {
          auto w = testutil::random_rational_weights(g, rng);
          auto r = apply_move(g, w, m, site);
          CHECK_MESSAGE(testutil::oracle_projective_equal(oracle::plucker(g, w), oracle::plucker(r.g, r.w)),
                        name << " " << move_name(m));
          seen[m]++;
        }
    }
  }
  for (MoveKind m : kinds) CHECK_MESSAGE(seen[m] > 0, move_name(m));
}

TEST_CASE("square moves keep the strand permutation") {
  PlabicGraph g = bridge_graph(top_cell(2, 4));
  auto sites = find_sites(g, MoveKind::SquareMove);
  REQUIRE(!sites.empty());
  Weights<mpq_class> w(g.ne(), mpq_class(1));
  for (const auto& s : sites) {
    auto r = apply_move(g, w, MoveKind::SquareMove, s);
    CHECK(bounded_affine_perm_of(r.g) == top_cell(2, 4));
    CHECK(count_faces(r.g) == 5);
  }
}

TEST_CASE("square move weights follow urban renewal exactly") {
  std::mt19937_64 rng(3);
  PlabicGraph g = bridge_graph(top_cell(2, 4));
  auto sites = find_sites(g, MoveKind::SquareMove);
  REQUIRE(!sites.empty());
  for (int it = 0; it < 20; ++it) {
    auto w = testutil::random_rational_weights(g, rng);
    auto r = apply_move(g, w, MoveKind::SquareMove, sites[0]);
    CHECK(testutil::oracle_projective_equal(oracle::plucker(g, w), oracle::plucker(r.g, r.w)));
    // Applying the move twice returns to the same measurement.
    auto back = find_sites(r.g, MoveKind::SquareMove);
    for (const auto& s : back) {
      auto rr = apply_move(r.g, r.w, MoveKind::SquareMove, s);
      CHECK(testutil::oracle_projective_equal(oracle::plucker(g, w), oracle::plucker(rr.g, rr.w)));
    }
  }
}

TEST_CASE("misplaced sites are rejected") {
  PlabicGraph g = le_graph(2, 4).g;
  Weights<double> w(g.ne(), 1.0);
  MoveSite s;
  s.v = 0;  // a boundary vertex
  CHECK_THROWS(apply_move(g, w, MoveKind::LeafRemoval, s));
  CHECK_THROWS(apply_move(g, w, MoveKind::Contract, s));
}

TEST_CASE("graph limits drop zero edges without changing the measurement") {
  std::mt19937_64 rng(8);
  PlabicGraph g = le_graph(2, 5).g;
  int tried = 0;
  for (int e = 0; e < g.ne(); ++e) {
    if (g.boundary_edge(e)) continue;
    auto w = testutil::random_rational_weights(g, rng);
    w[e] = 0;
    auto o = oracle::plucker(g, w);
    bool any = false;
    for (auto& [m, v] : o) any = any || v != 0;
    if (!any) continue;
    auto lim = graph_limit(g, w);
    CHECK(lim.g.ne() < g.ne());
    CHECK(testutil::oracle_projective_equal(o, oracle::plucker(lim.g, lim.w)));
    ++tried;
  }
  CHECK(tried > 0);
}
