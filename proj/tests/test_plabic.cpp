#include <doctest.h>

#include <random>

#include "critgrass/construct.hpp"
#include "critgrass/errors.hpp"
#include "critgrass/plabic.hpp"
#include "helpers.hpp"

using namespace critgrass;

namespace {

GraphSpec path_spec(Color mid) {
  GraphSpec s;
  s.n = 2;
  s.vertices = {{1, Color::Black, 1}, {2, Color::Black, 2}, {3, mid, 0}};
  s.edges = {{1, 1, 3}, {2, 3, 2}};
  s.rotation = {{1, {1}}, {2, {2}}, {3, {1, 2}}};
  return s;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

}  // namespace

TEST_CASE("path graph builds and measures (2:3)") {
  PlabicGraph g = build_graph(path_spec(Color::White));
  CHECK(g.n == 2);
  Weights<mpq_class> w{mpq_class(2), mpq_class(3)};
  auto p = boundary_measurement(g, w);
  CHECK(p.k == 1);
  CHECK(p.at({1}) == 2);
  CHECK(p.at({2}) == 3);
}

TEST_CASE("invalid graphs are rejected") {
  CHECK(code_of([] { build_graph(path_spec(Color::Black)); }) == Errc::NonBipartite);
  GraphSpec s = path_spec(Color::White);
  s.vertices.push_back({4, Color::White, 0});
  s.edges.push_back({3, 1, 4});
  s.rotation[1] = {1, 3};
  s.rotation[4] = {3};
  CHECK(code_of([&] { build_graph(s); }) == Errc::BoundaryDegree);
  GraphSpec t = path_spec(Color::White);
  t.rotation[3] = {1};
  CHECK(code_of([&] { build_graph(t); }) == Errc::BadRotation);
}

TEST_CASE("strands of the grid graph agree with an independent trace") {
  for (int n = 3; n <= 7; ++n)
    for (int k = 1; k < n; ++k) {
      if (k < 2) continue;
      LeGraph L = le_graph(k, n);
      auto f = oracle::strand_targets(L.g);
      auto s = trace_strands(L.g);
      for (int p = 1; p <= n; ++p) {
        CHECK(f[p] == (p + k - 1) % n + 1);
        CHECK(s.fbar[p] == f[p]);
      }
      CHECK(s.closed_strands == 0);
    }
}

TEST_CASE("boundary measurement equals brute-force matching sums") {
  std::mt19937_64 rng(11);
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 5}, {3, 6}}) {
    LeGraph L = le_graph(k, n);
    for (int it = 0; it < 3; ++it) CHECK(testutil::matches_oracle(L.g, testutil::random_rational_weights(L.g, rng)));
  }
}

TEST_CASE("gauge transformations act projectively") {
  std::mt19937_64 rng(5);
  LeGraph L = le_graph(2, 5);
  auto w = testutil::random_rational_weights(L.g, rng);
  auto before = boundary_measurement(L.g, w);
  for (int v : L.g.interior_vertices()) {
    auto u = w;
    for (int e : L.g.rotation[v]) u[e] *= mpq_class(7, 3);
    CHECK(projective_equal(before, boundary_measurement(L.g, u)));
  }
}

TEST_CASE("face counts and reducedness of grid graphs") {
  CHECK(count_faces(le_graph(2, 4).g) == 5);
  CHECK(count_faces(le_graph(4, 10).g) == 25);
  CHECK(is_reduced(le_graph(3, 6).g));
  CHECK(is_contracted(le_graph(3, 6).g));
}

TEST_CASE("matching enumeration and boundary sets") {
  LeGraph L = le_graph(2, 4);
  auto ms = enumerate_matchings(L.g);
  Weights<mpq_class> ones(L.g.ne(), mpq_class(1));
  auto o = oracle::plucker(L.g, ones);
  mpq_class total = 0;
  for (auto& [m, v] : o) total += v;
  CHECK(mpq_class(static_cast<long>(ms.size())) == total);
  for (const auto& m : ms) CHECK(__builtin_popcount(m.boundary) == 2);
}

TEST_CASE("projective helpers") {
  FloatPoint a;
  a.k = 1;
  a.n = 2;
  a.subsets = {{1}, {2}};
  a.coords = {2.0, 4.0};
  FloatPoint b = a;
  b.coords = {-1.0, -2.0};
  CHECK(projective_distance(a, b) < 1e-15);
  CHECK(totally_nonnegative(a));
  CHECK(totally_nonnegative(b));
  b.coords = {1.0, -2.0};
  CHECK_FALSE(totally_nonnegative(b));
}
