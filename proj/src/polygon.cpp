#include "critgrass/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "critgrass/errors.hpp"

namespace critgrass {

namespace {

double asin_clamped(double x) { return std::asin(std::min(1.0, x)); }

template <class F>
double bisect(F h, double lo, double hi) {
  double flo = h(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = h(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double InscribedPolygon::dist(int p, int q) const {
  int mm = m();
  p = ((p % mm) + mm) % mm;
  q = ((q % mm) + mm) % mm;
  if (degenerate) return std::abs(pos[q] - pos[p]);
  return std::abs(2 * R * std::sin(0.5 * (angle[q] - angle[p])));
}

InscribedPolygon solve_inscribed_polygon(const std::vector<double>& sides) {
  int m = static_cast<int>(sides.size());
  require(m >= 2, Errc::Precondition, "polygon needs at least two sides");
  for (double a : sides) require(a >= 0 && std::isfinite(a), Errc::Precondition, "side lengths must be nonnegative");
  require(std::count_if(sides.begin(), sides.end(), [](double a) { return a > 0; }) >= 2, Errc::Precondition,
          "polygon needs two positive sides");
  double total = std::accumulate(sides.begin(), sides.end(), 0.0);
  InscribedPolygon P;
  P.sides = sides;
  int M = static_cast<int>(std::max_element(P.sides.begin(), P.sides.end()) - P.sides.begin());
  double amax = P.sides[M];
  double slack = ((total - amax) - amax) / total;
  require(slack > -1e-12, Errc::PolygonInequalityViolated, "one side exceeds the sum of the others");

  if (slack < 1e-12) {
    P.degenerate = true;
    P.pos.assign(m, 0.0);
    // Vertex M+1 starts the line and vertex M ends it.
    for (int t = 1; t < m; ++t) {
      int side = (M + t) % m;
      P.pos[(side + 1) % m] = P.pos[side] + P.sides[side];
    }
    return P;
  }
  P.near_degenerate = slack < 1e-9;

  double rmin = amax / 2;
  double S = 0;
  for (int i = 0; i < m; ++i)
    if (i != M) S += asin_clamped(P.sides[i] / amax);
  bool inside = S >= std::numbers::pi / 2;
  auto others = [&](double R) {
    double s = 0;
    for (int i = 0; i < m; ++i)
      if (i != M) s += asin_clamped(P.sides[i] / (2 * R));
    return s;
  };
  double R;
  if (inside) {
    auto g = [&](double r) { return others(r) + asin_clamped(amax / (2 * r)) - std::numbers::pi; };
    double hi = total;
    while (g(hi) > 0) hi *= 2;
    R = g(rmin) <= 0 ? rmin : bisect(g, rmin, hi);
  } else {
    auto h = [&](double r) { return others(r) - asin_clamped(amax / (2 * r)); };
    double hi = total;
    while (h(hi) <= 0) hi *= 2;
    R = bisect(h, rmin, hi);
  }
  P.R = R;
  P.alpha.assign(m, 0.0);
  double sum_other = 0;
  for (int i = 0; i < m; ++i)
    if (i != M) {
      P.alpha[i] = 2 * asin_clamped(P.sides[i] / (2 * R));
      sum_other += P.alpha[i];
    }
  P.alpha[M] = 2 * std::numbers::pi - sum_other;
  P.angle.assign(m, 0.0);
  for (int i = 1; i < m; ++i) P.angle[i] = P.angle[i - 1] + P.alpha[i - 1];
  return P;
}

std::array<double, 3> cross_ratio_identities(const InscribedPolygon& poly, int p, int q, int t, int s) {
  return {poly.dist(p, q) * poly.dist(t, s), poly.dist(p, t) * poly.dist(q, s), poly.dist(p, s) * poly.dist(q, t)};
}

}  // namespace critgrass
