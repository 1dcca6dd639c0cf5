#include "avd/oracle.hpp"

#include "avd/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace avd;
using avd::testing::random_sites;

namespace {
const Tolerance tol;

SiteSet make(BackendKind k, std::vector<SiteRecord> v) {
  SiteSet s;
  s.backend = k;
  s.sites = std::move(v);
  return s;
}
}  // namespace

TEST_CASE("three points give one vertex and three unbounded edges") {
  auto s = make(BackendKind::Euclidean,
                {{0, {0, 0}, 0}, {1, {2, 0}, 0}, {2, {1, 2}, 0}});
  auto d = brute_voronoi(s, Mode::Nearest, tol);
  CHECK(d.edges.size() == 3);
  REQUIRE(d.vertices.size() == 1);
  CHECK(d.vertices[0].pt.x == doctest::Approx(1.0));
  CHECK(d.vertices[0].pt.y == doctest::Approx(0.75));
  CHECK(d.vertices[0].edges.size() == 3);
  int gamma_ends = 0;
  for (const auto& e : d.edges) {
    if (e.e0.at_gamma) ++gamma_ends;
    if (e.e1.at_gamma) ++gamma_ends;
  }
  CHECK(gamma_ends == 3);
}

TEST_CASE("two sites give the single full bisector") {
  auto s = make(BackendKind::Euclidean, {{0, {0, 0}, 0}, {1, {1, 0}, 0}});
  auto d = brute_voronoi(s, Mode::Nearest, tol);
  REQUIRE(d.edges.size() == 1);
  CHECK(d.edges[0].e0.at_gamma);
  CHECK(d.edges[0].e1.at_gamma);
}

TEST_CASE("collinear-ish jittered points give a path-like diagram") {
  SplitMix64 rng(17);
  SiteSet s;
  s.backend = BackendKind::Euclidean;
  for (int i = 0; i < 6; ++i)
    s.sites.push_back({i, {double(i), 1e-3 * rng.uniform(-1, 1)}, 0});
  auto d = brute_voronoi(s, Mode::Nearest, tol);
  // The n-1 path edges between consecutive sites; anything extra comes from
  // far hull-pair contacts and must live far outside the point cloud.
  int near_edges = 0;
  for (const auto& e : d.edges) {
    bool adjacent_pair = e.q == e.p + 1;
    bool far = (e.e0.at_gamma || norm(e.e0.pt) > 10) &&
               (e.e1.at_gamma || norm(e.e1.pt) > 10);
    if (adjacent_pair) ++near_edges;
    if (!adjacent_pair) CHECK(far);
  }
  CHECK(near_edges == 5);
  LabelField f{&s, Mode::Nearest};
  auto sc = sample_check(d, f, 800);
  CHECK(sc.ratio == doctest::Approx(1.0));
}

TEST_CASE("oracle is self consistent under sampling") {
  SplitMix64 rng(4);
  for (auto k : {BackendKind::Euclidean, BackendKind::Power, BackendKind::Apollonius}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto s = random_sites(k, 4 + int(rng.below(5)), rng.next());
      auto d = brute_voronoi(s, Mode::Nearest, tol);
      LabelField f{&s, Mode::Nearest};
      auto sc = sample_check(d, f, 600, rng.next());
      CHECK(sc.ratio == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("axiom audit: every region of every subset is non-empty") {
  // A1 on random site sets: sample many points; every site must own at least
  // one sample in the diagram of every small subset it belongs to.
  SplitMix64 rng(12);
  for (auto k : {BackendKind::Apollonius, BackendKind::Power}) {
    auto s = random_sites(k, 5, 321 + int(k));
    LabelField f{&s, Mode::Nearest};
    std::vector<int> owned(size_t(s.size()), 0);
    for (int i = 0; i < 20000; ++i) {
      Point z{rng.uniform(-3, 4), rng.uniform(-3, 4)};
      int lab = f(z);
      owned[size_t(s.index_of(lab))]++;
    }
    for (int c : owned) CHECK(c > 0);
  }
}

TEST_CASE("dominated apollonius site keeps a region") {
  // Small weight site inside the geometric influence of a bigger one but
  // non-enclosing: axiom A1 still guarantees a nonempty region.
  SiteSet s = make(BackendKind::Apollonius,
                   {{0, {0, 0}, 1.0}, {1, {1.2, 0}, 0.05}, {2, {-2, 1}, 0.3}});
  validate_sites(s, tol);
  auto d = brute_voronoi(s, Mode::Nearest, tol);
  LabelField f{&s, Mode::Nearest};
  auto sc = sample_check(d, f, 1500);
  CHECK(sc.ratio == doctest::Approx(1.0));
  bool site1_edge = false;
  for (const auto& e : d.edges)
    if (e.p == 1 || e.q == 1) site1_edge = true;
  CHECK(site1_edge);
}

TEST_CASE("compare_diagrams flags a contracted edge") {
  auto s = make(BackendKind::Euclidean,
                {{0, {0, 0}, 0}, {1, {2, 0}, 0}, {2, {1, 2}, 0}});
  auto a = brute_voronoi(s, Mode::Nearest, tol);
  auto b = a;
  CHECK(compare_diagrams(a, b, 1e-6).isomorphic);
  b.edges.pop_back();
  auto res = compare_diagrams(a, b, 1e-6);
  CHECK(!res.isomorphic);
  CHECK(!res.mismatches.empty());
}

TEST_CASE("sample_check catches a corrupted diagram") {
  auto s = make(BackendKind::Euclidean,
                {{0, {0, 0}, 0}, {1, {2, 0}, 0}, {2, {1, 2}, 0}});
  auto d = brute_voronoi(s, Mode::Nearest, tol);
  // Swap the sites of one edge: labels on both sides flip.
  std::swap(d.edges[0].p, d.edges[0].q);
  LabelField f{&s, Mode::Nearest};
  auto sc = sample_check(d, f, 1000);
  CHECK(sc.ratio < 1.0);
  CHECK(!sc.witnesses.empty());
}

TEST_CASE("farthest oracle uses only hull-extreme sites") {
  auto s = make(BackendKind::Euclidean, {{0, {0, 0}, 0},
                                         {1, {2, 0}, 0},
                                         {2, {1, 2}, 0},
                                         {3, {1, 0.7}, 0}});  // interior point
  auto d = brute_voronoi(s, Mode::Farthest, tol);
  for (const auto& e : d.edges) {
    CHECK(e.p != 3);
    CHECK(e.q != 3);
  }
  LabelField f{&s, Mode::Farthest};
  auto sc = sample_check(d, f, 800);
  CHECK(sc.ratio == doctest::Approx(1.0));
}

TEST_CASE("check_structure accepts a star and rejects a bad leaf") {
  InteriorView view;
  FullDiagram::Edge e;
  e.p = 0;
  e.q = 1;
  e.e0 = EndPoint::at({0, 0});
  e.e1 = EndPoint::at({1, 0});
  view.edges.push_back(e);
  e.e1 = EndPoint::at({-0.5, 0.8});
  view.edges.push_back(e);
  e.e1 = EndPoint::at({-0.5, -0.8});
  view.edges.push_back(e);
  view.allowed_leaves = {{1, 0}, {-0.5, 0.8}, {-0.5, -0.8}};
  view.face_count = view.core_count = 3;
  CHECK(check_structure(view, true, 1e-6).ok);

  view.allowed_leaves.pop_back();
  CHECK(!check_structure(view, true, 1e-6).ok);
}
