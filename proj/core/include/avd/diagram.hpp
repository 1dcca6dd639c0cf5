#pragma once

#include <vector>

#include "avd/bisector.hpp"
#include "avd/geom.hpp"
#include "avd/oracle.hpp"
#include "avd/sites.hpp"

namespace avd {

using EdgeId = int;
inline constexpr EdgeId kNone = -1;

// Edge carrier: an oriented bisector J(a,b), or Gamma (angular).
struct Carrier {
  int a = -1, b = -1;
  bool gamma() const { return a < 0; }
  static Carrier of(int a, int b) { return {a, b}; }
  static Carrier gamma_carrier() { return {-1, -1}; }
  bool operator==(const Carrier&) const = default;
};

// Shared immutable context of one build: the site universe, the site being
// deleted (the diagram lives inside its region), and the label sense.
struct BuildContext {
  const SiteSet* sites = nullptr;
  int center = -1;   // deleted site; unused in farthest mode
  Mode sense = Mode::Nearest;
  Tolerance tol;
  mutable BisectorCache cache;

  BuildContext(const SiteSet& s, int center_site, Mode m, Tolerance t = {})
      : sites(&s), center(center_site), sense(m), tol(t), cache(s, t) {}

  // Oriented curve with the dominance of `left_site` (in the current sense)
  // to the left of increasing parameter.
  Carrier carrier_between(int left_site, int right_site) const {
    return sense == Mode::Nearest ? Carrier::of(left_site, right_site)
                                  : Carrier::of(right_site, left_site);
  }
  const BisectorCurve& curve(const Carrier& c) const { return cache.get(c.a, c.b); }
  double scale() const { return std::max(1.0, sites->bounding_box().diag()); }
};

// One directed edge of a region's counterclockwise boundary cycle.
//
// Curve edges store a sub-interval [t0,t1] (t0 < t1) of the carrier's
// canonical parameterization; `forward` tells whether the cycle traverses it
// with increasing parameter. Gamma edges store t0 = start angle and
// t1 = ccw span, and are always traversed counterclockwise.
struct HalfEdge {
  bool alive = false;
  int region = -1;
  Carrier carrier{};
  bool forward = true;
  double t0 = 0, t1 = 0;
  EdgeId twin = kNone;
  EdgeId next = kNone, prev = kNone;
  bool on_boundary = false;  // element of the boundary curve (or its openings)
  int site = -1;             // inducing site for boundary arcs, -1 otherwise
  std::vector<int> cores;    // covered core arcs; original iff non-empty
  EndPoint src{}, dst{};     // endpoints in traversal order
};

struct Region {
  bool alive = false;
  EdgeId arc = kNone;  // the boundary arc owning this region
  int site = -1;
};

class VoronoiLikeDiagram {
 public:
  explicit VoronoiLikeDiagram(const BuildContext& ctx) : ctx_(&ctx) {}

  const BuildContext& ctx() const { return *ctx_; }
  std::vector<HalfEdge> edges;
  std::vector<Region> regions;

  EdgeId new_edge() {
    edges.push_back({});
    edges.back().alive = true;
    return EdgeId(edges.size()) - 1;
  }
  int new_region() {
    regions.push_back({});
    regions.back().alive = true;
    return int(regions.size()) - 1;
  }
  void kill_edge(EdgeId e) { edges[size_t(e)].alive = false; }
  void kill_region(int r) { regions[size_t(r)].alive = false; }

  HalfEdge& at(EdgeId e) { return edges[size_t(e)]; }
  const HalfEdge& at(EdgeId e) const { return edges[size_t(e)]; }

  void link(EdgeId a, EdgeId b) {  // a -> b in a cycle
    at(a).next = b;
    at(b).prev = a;
  }

  int alive_region_count() const;
  int boundary_element_count() const;  // arcs plus maximal gamma openings

  // Next / previous element of the (fine) boundary curve, counterclockwise.
  EdgeId next_boundary(EdgeId e) const;
  EdgeId prev_boundary(EdgeId e) const;

  // Endpoint of a half-edge as seen by the cycle traversal.
  EndPoint edge_src(EdgeId e) const { return at(e).src; }
  EndPoint edge_dst(EdgeId e) const { return at(e).dst; }

  // Point/direction on a cycle element at element parameter t.
  EndPoint eval_on_element(EdgeId e, double t) const;

  // Structural self-check (cycle closure, twin symmetry, endpoint
  // continuity). Throws Error on corruption; used by tests and debug runs.
  void check_integrity() const;

  // The boundary arc currently covering core `c`, if registered.
  std::vector<EdgeId> core_arc;  // core index -> boundary arc edge

  // Degeneracy events absorbed by tolerance snapping during construction.
  mutable int degeneracy_ties = 0;

 private:
  const BuildContext* ctx_;
};

// Conversion to the edge-set view: the interior (twinned) edges only, i.e.
// the computed diagram without the boundary curve itself.
std::vector<FullDiagram::Edge> interior_edges(const VoronoiLikeDiagram& v);

}  // namespace avd
