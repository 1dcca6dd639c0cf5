#include "avd/diagram.hpp"

#include <cmath>
#include <string>

namespace avd {

int VoronoiLikeDiagram::alive_region_count() const {
  int n = 0;
  for (const auto& r : regions)
    if (r.alive) ++n;
  return n;
}

int VoronoiLikeDiagram::boundary_element_count() const {
  // Boundary arcs count individually; consecutive fine gamma arcs merge into
  // one opening.
  int count = 0;
  EdgeId start = kNone;
  for (size_t i = 0; i < edges.size() && start == kNone; ++i)
    if (edges[i].alive && edges[i].on_boundary) start = EdgeId(i);
  if (start == kNone) return 0;
  EdgeId e = start;
  bool prev_gamma = false;
  bool first_gamma = false;
  bool first = true;
  do {
    bool g = at(e).carrier.gamma() && at(e).site < 0;
    if (!g)
      ++count;
    else if (!prev_gamma)
      ++count;
    if (first) first_gamma = g;
    if (!first && g && prev_gamma) {
      // merged continuation
    }
    prev_gamma = g;
    first = false;
    e = next_boundary(e);
  } while (e != start);
  if (prev_gamma && first_gamma && count > 1) --count;  // wrapped opening
  return count;
}

EdgeId VoronoiLikeDiagram::next_boundary(EdgeId e) const {
  EdgeId cur = at(e).next;
  while (!at(cur).on_boundary) cur = at(at(cur).twin).next;
  return cur;
}

EdgeId VoronoiLikeDiagram::prev_boundary(EdgeId e) const {
  EdgeId cur = at(e).prev;
  while (!at(cur).on_boundary) cur = at(at(cur).twin).prev;
  return cur;
}

EndPoint VoronoiLikeDiagram::eval_on_element(EdgeId e, double t) const {
  const HalfEdge& he = at(e);
  if (he.carrier.gamma()) return EndPoint::gamma(t);
  if (t <= -1.0 || t >= 1.0)
    return EndPoint::gamma(ctx_->curve(he.carrier).gamma_theta(t > 0 ? +1 : -1));
  return EndPoint::at(ctx_->curve(he.carrier).point(t));
}

void VoronoiLikeDiagram::check_integrity() const {
  const Tolerance& tol = ctx_->tol;
  double sc = ctx_->scale();
  auto fail = [&](const std::string& what, EdgeId e) {
    throw Error(Errc::BadInput,
                "diagram integrity: " + what + " at edge " + std::to_string(e));
  };
  for (size_t i = 0; i < edges.size(); ++i) {
    const HalfEdge& he = edges[i];
    if (!he.alive) continue;
    EdgeId id = EdgeId(i);
    if (he.next == kNone || he.prev == kNone) fail("unlinked", id);
    if (!at(he.next).alive || !at(he.prev).alive) fail("dead neighbor", id);
    if (at(he.next).prev != id || at(he.prev).next != id) fail("bad links", id);
    if (at(he.next).region != he.region) fail("cycle crosses regions", id);
    if (he.twin != kNone) {
      const HalfEdge& tw = at(he.twin);
      if (!tw.alive || tw.twin != id) fail("twin mismatch", id);
      if (!(tw.carrier == he.carrier) || tw.forward == he.forward)
        fail("twin geometry mismatch", id);
    }
    if (!he.carrier.gamma() && he.t0 >= he.t1) fail("empty interval", id);
    if (he.carrier.gamma() && !(he.t1 > 0)) fail("empty gamma span", id);
    // Endpoint continuity along the cycle.
    EndPoint a = he.dst;
    EndPoint b = at(he.next).src;
    if (!same_endpoint(a, b, 1e-6 * sc, 1e-6)) fail("discontinuous cycle", id);
    if (he.region < 0 || !regions[size_t(he.region)].alive)
      fail("edge in dead region", id);
  }
  for (size_t r = 0; r < regions.size(); ++r) {
    if (!regions[r].alive) continue;
    const Region& reg = regions[r];
    if (reg.arc == kNone || !at(reg.arc).alive || at(reg.arc).region != int(r))
      throw Error(Errc::BadInput, "region arc broken at region " + std::to_string(r));
    // Exactly one boundary arc with a site label per region cycle.
    int arcs = 0;
    EdgeId e = reg.arc;
    int guard = 0;
    do {
      if (at(e).on_boundary && at(e).site >= 0) ++arcs;
      e = at(e).next;
      if (++guard > int(edges.size()) + 2)
        throw Error(Errc::BadInput, "unclosed cycle in region " + std::to_string(r));
    } while (e != reg.arc);
    if (arcs != 1)
      throw Error(Errc::BadInput, "region " + std::to_string(r) + " has " +
                                      std::to_string(arcs) + " boundary arcs");
    (void)tol;
  }
}

std::vector<FullDiagram::Edge> interior_edges(const VoronoiLikeDiagram& v) {
  std::vector<FullDiagram::Edge> out;
  for (size_t i = 0; i < v.edges.size(); ++i) {
    const HalfEdge& he = v.edges[i];
    if (!he.alive || he.twin == kNone) continue;
    if (he.twin < EdgeId(i)) continue;  // one record per twin pair
    FullDiagram::Edge e;
    int a = he.carrier.a, b = he.carrier.b;
    const HalfEdge& fwd = he.forward ? he : v.at(he.twin);
    EndPoint lo_end = fwd.src, hi_end = fwd.dst;
    if (a < b) {
      e.p = a;
      e.q = b;
      e.lo = he.t0;
      e.hi = he.t1;
      e.e0 = lo_end;
      e.e1 = hi_end;
    } else {
      e.p = b;
      e.q = a;
      e.lo = -he.t1;
      e.hi = -he.t0;
      e.e0 = hi_end;
      e.e1 = lo_end;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace avd
