#include <cmath>

#include "avd/bisector.hpp"
#include "avd/rng.hpp"
#include "avd/sites.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace avd;
using avd::testing::bisection_intersections;
using avd::testing::random_sites;

namespace {
const Tolerance tol;

SiteRecord site(int id, double x, double y, double w = 0) {
  return SiteRecord{id, {x, y}, w};
}
}  // namespace

TEST_CASE("euclidean bisector is the perpendicular midline") {
  auto p = site(0, 0, 0), q = site(1, 2, 0);
  auto J = bisector(BackendKind::Euclidean, p, q, tol);
  for (double u : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
    Point z = J.point(u);
    CHECK(z.x == doctest::Approx(1.0));
  }
  // D(p,q) = half-plane x<1 lies to the left of the traversal.
  CHECK(dominance(BackendKind::Euclidean, p, q, {0.5, 3}, tol) == Side::PSide);
  CHECK(dominance(BackendKind::Euclidean, p, q, {1.0, -2}, tol) == Side::On);
  CHECK(dominance(BackendKind::Euclidean, p, q, {1.7, 0}, tol) == Side::QSide);
  Point left = rot90(J.tangent(0.0));
  CHECK(dominance(BackendKind::Euclidean, p, q, J.point(0) + left * 0.1, tol) ==
        Side::PSide);
}

TEST_CASE("vertical line gamma crossings") {
  auto J = bisector(BackendKind::Euclidean, site(0, 0, 0), site(1, 2, 0), tol);
  CHECK(angle_eq(J.gamma_theta(+1), std::numbers::pi / 2, 1e-12));
  CHECK(angle_eq(J.gamma_theta(-1), 3 * std::numbers::pi / 2, 1e-12));
}

TEST_CASE("horizontal line oriented +x has gamma crossings (0, pi)") {
  // J(p,q) for q above p runs in +x direction.
  auto J = bisector(BackendKind::Euclidean, site(0, 0, 1), site(1, 0, -1), tol);
  CHECK(angle_eq(J.gamma_theta(+1), 0.0, 1e-12));
  CHECK(angle_eq(J.gamma_theta(-1), std::numbers::pi, 1e-12));
}

TEST_CASE("power bisector with equal weights is the midline") {
  auto p = site(0, 0, 0, 1), q = site(1, 2, 0, 1);
  auto J = bisector(BackendKind::Power, p, q, tol);
  CHECK(J.point(0.3).x == doctest::Approx(1.0));
  CHECK(dominance(BackendKind::Power, p, q, {0.2, 0}, tol) == Side::PSide);
}

TEST_CASE("apollonius bisector through the weighted midpoint") {
  // |z-p| = |z-q| - 2 passes through (1,0).
  auto p = site(0, 0, 0, 0), q = site(1, 4, 0, 2);
  auto J = bisector(BackendKind::Apollonius, p, q, tol);
  CHECK(J.kind == CurveKind::Hyperbola);
  Point vertex = J.point(0);
  CHECK(vertex.x == doctest::Approx(1.0));
  CHECK(vertex.y == doctest::Approx(0.0));
  // Points on the curve are weighted-equidistant; dominance samples agree.
  for (double u : {-0.7, -0.2, 0.5, 0.9}) {
    Point z = J.point(u);
    CHECK(site_distance(BackendKind::Apollonius, p, z) ==
          doctest::Approx(site_distance(BackendKind::Apollonius, q, z)));
    Point left = rot90(J.tangent(u)) * 0.05;
    CHECK(dominance(BackendKind::Apollonius, p, q, z + left, tol) == Side::PSide);
    CHECK(dominance(BackendKind::Apollonius, p, q, z - left, tol) == Side::QSide);
  }
  CHECK(dominance(BackendKind::Apollonius, p, q, {3, 0}, tol) == Side::QSide);
}

TEST_CASE("reverse bisector swaps orientation and dominance") {
  for (auto k : {BackendKind::Euclidean, BackendKind::Apollonius}) {
    auto p = site(0, 0.2, -0.1, 0.3), q = site(1, 1.4, 0.8, 0.7);
    auto J = bisector(k, p, q, tol);
    auto R = bisector(k, q, p, tol);
    for (double u : {-0.8, -0.1, 0.6})
      CHECK(dist(J.point(u), R.point(-u)) < 1e-9);
    CHECK(angle_eq(J.gamma_theta(+1), R.gamma_theta(-1), 1e-9));
  }
}

TEST_CASE("param_of inverts point") {
  auto p = site(0, 0.1, 0.2, 0.4), q = site(1, 1.1, 0.7, 0.1);
  for (auto k : {BackendKind::Euclidean, BackendKind::Power, BackendKind::Apollonius}) {
    auto J = bisector(k, p, q, tol);
    for (double u : {-0.95, -0.5, 0.0, 0.33, 0.9})
      CHECK(J.param_of(J.point(u)) == doctest::Approx(u).epsilon(1e-10));
  }
}

TEST_CASE("identical sites have no bisector") {
  CHECK_THROWS_AS(bisector(BackendKind::Euclidean, site(0, 1, 1), site(1, 1, 1), tol),
                  Error);
}

TEST_CASE("euclidean related intersections meet at the circumcenter") {
  SiteSet s;
  s.backend = BackendKind::Euclidean;
  s.sites = {site(0, 0, 0), site(1, 2, 0), site(2, 1, 2)};
  BisectorCache cache(s, tol);
  auto xs = cache.related(0, 1, 2);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].pt.x == doctest::Approx(1.0));
  CHECK(xs[0].pt.y == doctest::Approx(0.75));
  // The point also lies on the third bisector.
  CHECK(dominance(BackendKind::Euclidean, s.sites[1], s.sites[2], xs[0].pt, tol) ==
        Side::On);
}

TEST_CASE("apollonius triple with a small middle weight yields two points") {
  auto p = site(0, 0, 0, 0.2), q = site(1, 3, 0, 0.1), r = site(2, 1.5, 2.0, 0.15);
  auto pts = equidistant_points(BackendKind::Apollonius, p, q, r, tol);
  REQUIRE(pts.size() <= 2);
  auto oracle = bisection_intersections(BackendKind::Apollonius, p, q, r);
  REQUIRE(pts.size() == oracle.size());
  for (const auto& tp : pts) {
    double dp = site_distance(BackendKind::Apollonius, p, tp.pt);
    double dq = site_distance(BackendKind::Apollonius, q, tp.pt);
    double dr = site_distance(BackendKind::Apollonius, r, tp.pt);
    CHECK(std::abs(dp - dq) < 1e-9);
    CHECK(std::abs(dp - dr) < 1e-9);
    double best = 1e9;
    for (const auto& z : oracle) best = std::min(best, dist(z, tp.pt));
    CHECK(best < 1e-6);
  }
}

TEST_CASE("algebraic intersections match the bisection route on random triples") {
  SplitMix64 rng(7);
  for (auto k : {BackendKind::Euclidean, BackendKind::Power, BackendKind::Apollonius}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto s = random_sites(k, 3, rng.next());
      if (s.size() < 3) continue;
      auto pts = equidistant_points(k, s.sites[0], s.sites[1], s.sites[2], tol);
      auto oracle = bisection_intersections(k, s.sites[0], s.sites[1], s.sites[2]);
      REQUIRE(pts.size() == oracle.size());
      for (const auto& tp : pts) {
        double best = 1e9;
        for (const auto& z : oracle) best = std::min(best, dist(z, tp.pt));
        CHECK(best < 1e-6);
      }
    }
  }
}

TEST_CASE("transitivity of dominance") {
  SplitMix64 rng(99);
  int checked = 0;
  for (auto k : {BackendKind::Euclidean, BackendKind::Power, BackendKind::Apollonius}) {
    auto s = random_sites(k, 3, 1234);
    REQUIRE(s.size() == 3);
    for (int i = 0; i < 100000 / 3; ++i) {
      Point z{rng.uniform(-2, 3), rng.uniform(-2, 3)};
      auto pq = dominance(k, s.sites[0], s.sites[1], z, tol);
      auto qr = dominance(k, s.sites[1], s.sites[2], z, tol);
      if (pq == Side::PSide && qr != Side::QSide) {
        CHECK(dominance(k, s.sites[0], s.sites[2], z, tol) == Side::PSide);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("side swap property") {
  SplitMix64 rng(3);
  for (auto k : {BackendKind::Euclidean, BackendKind::Power, BackendKind::Apollonius}) {
    auto s = random_sites(k, 2, 77);
    for (int i = 0; i < 2000; ++i) {
      Point z{rng.uniform(-2, 3), rng.uniform(-2, 3)};
      auto a = dominance(k, s.sites[0], s.sites[1], z, tol);
      auto b = dominance(k, s.sites[1], s.sites[0], z, tol);
      CHECK(a == flip(b));
    }
  }
}

TEST_CASE("intersection symmetry across the three related pairs") {
  SplitMix64 rng(41);
  for (auto k : {BackendKind::Euclidean, BackendKind::Apollonius}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto s = random_sites(k, 3, rng.next());
      if (s.size() < 3) continue;
      BisectorCache cache(s, tol);
      auto a = cache.related(0, 1, 2);
      auto b = cache.related(1, 2, 0);
      REQUIRE(a.size() == b.size());
      for (const auto& x : a) {
        double best = 1e9;
        for (const auto& y : b) best = std::min(best, dist(x.pt, y.pt));
        CHECK(best < 1e-9);
      }
    }
  }
}

TEST_CASE("gamma crossings match asymptotic directions") {
  auto p = site(0, 0.1, 0.3, 0.5), q = site(1, 1.7, 0.6, 0.1);
  auto J = bisector(BackendKind::Apollonius, p, q, tol);
  for (int end : {+1, -1}) {
    double u = end * (1.0 - 1e-8);
    Point far = J.point(u);
    CHECK(angle_eq(angle_of(far - J.origin), J.gamma_theta(end), 1e-3));
  }
}

TEST_CASE("dominance at infinity agrees with far samples") {
  SplitMix64 rng(5);
  for (auto k : {BackendKind::Euclidean, BackendKind::Power, BackendKind::Apollonius}) {
    auto s = random_sites(k, 2, 11);
    for (int i = 0; i < 500; ++i) {
      double theta = rng.uniform(0, kTau);
      auto at_inf = dominance_at_infinity(k, s.sites[0], s.sites[1], theta, tol);
      if (at_inf == Side::On) continue;
      Point z = unit_dir(theta) * 1e7;
      auto far = dominance(k, s.sites[0], s.sites[1], z, tol);
      if (far != Side::On) CHECK(far == at_inf);
    }
  }
}

TEST_CASE("site validation rejects enclosing circles") {
  SiteSet s;
  s.backend = BackendKind::Apollonius;
  s.sites = {site(0, 0, 0, 5), site(1, 1, 0, 0.5)};
  CHECK_THROWS_AS(validate_sites(s, tol), Error);
}
