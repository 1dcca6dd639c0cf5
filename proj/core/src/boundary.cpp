#include "avd/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "avd/rng.hpp"

namespace avd {

namespace {

struct RawArc {
  int site;
  double lo, hi;
  EndPoint src, dst;
};

// Chain arcs into one ccw cycle: matching finite endpoints join directly,
// gamma ends bridge to the angularly next arc start.
std::vector<RawArc> assemble_cycle(std::vector<RawArc> arcs, double join_tol) {
  if (arcs.empty()) return arcs;
  std::vector<RawArc> out;
  std::vector<bool> used(arcs.size(), false);
  out.push_back(arcs[0]);
  used[0] = true;
  for (size_t step = 1; step < arcs.size(); ++step) {
    const EndPoint& end = out.back().dst;
    int best = -1;
    double best_key = 1e300;
    for (size_t i = 0; i < arcs.size(); ++i) {
      if (used[i]) continue;
      const EndPoint& start = arcs[i].src;
      if (!end.at_gamma && !start.at_gamma) {
        double d = dist(end.pt, start.pt);
        if (d <= join_tol && d < best_key) {
          best = int(i);
          best_key = d;
        }
      } else if (end.at_gamma && start.at_gamma) {
        double d = ccw_delta(end.theta, start.theta);
        if (d < best_key) {
          best = int(i);
          best_key = d;
        }
      }
    }
    if (best < 0)
      throw Error(Errc::BadInput, "boundary arcs do not close into one cycle");
    out.push_back(arcs[size_t(best)]);
    used[size_t(best)] = true;
  }
  return out;
}

}  // namespace

CoreArcSequence extract_core_sequence(const FullDiagram& v, int center,
                                      const Tolerance& tol) {
  if (v.sites.index_of(center) < 0)
    throw Error(Errc::UnknownSite, "no such site " + std::to_string(center));
  std::vector<RawArc> raw;
  for (const auto& e : v.edges) {
    if (e.p != center && e.q != center) continue;
    RawArc a;
    if (e.p == center) {
      a.site = e.q;
      a.lo = e.lo;
      a.hi = e.hi;
      a.src = e.e0;
      a.dst = e.e1;
    } else {
      // Remap from canonical J(q,center) onto J(center,q).
      a.site = e.p;
      a.lo = -e.hi;
      a.hi = -e.lo;
      a.src = e.e1;
      a.dst = e.e0;
    }
    raw.push_back(a);
  }
  if (raw.empty())
    throw Error(Errc::EmptyRegion,
                "site " + std::to_string(center) + " has no boundary edges");
  double join_tol = 1e-6 * std::max(1.0, v.sites.bounding_box().diag());
  raw = assemble_cycle(std::move(raw), join_tol);
  CoreArcSequence seq;
  seq.center = center;
  seq.sense = v.mode;
  for (const auto& a : raw) seq.arcs.push_back({a.site, a.lo, a.hi, a.src, a.dst});
  return seq;
}

bool is_ds_order2(const std::vector<int>& labels) {
  int n = int(labels.size());
  std::set<int> dict(labels.begin(), labels.end());
  for (int a : dict) {
    for (int b : dict) {
      if (a >= b) continue;
      // Cyclic block count of the subsequence restricted to {a,b}.
      std::vector<int> sub;
      for (int i = 0; i < n; ++i)
        if (labels[size_t(i)] == a || labels[size_t(i)] == b)
          sub.push_back(labels[size_t(i)]);
      if (sub.size() < 4) continue;
      int blocks = 0;
      for (size_t i = 0; i < sub.size(); ++i)
        if (sub[i] != sub[(i + 1) % sub.size()]) ++blocks;
      if (blocks > 2) return false;
    }
  }
  return true;
}

BoundaryCurveView boundary_view(const VoronoiLikeDiagram& v) {
  BoundaryCurveView out;
  EdgeId start = kNone;
  for (size_t i = 0; i < v.edges.size() && start == kNone; ++i)
    if (v.edges[i].alive && v.edges[i].on_boundary) start = EdgeId(i);
  if (start == kNone) return out;
  EdgeId e = start;
  do {
    const HalfEdge& he = v.at(e);
    BoundaryArcDesc d;
    d.gamma_arc = he.carrier.gamma() && he.site < 0;
    d.site = he.site;
    d.t0 = he.t0;
    d.t1 = he.t1;
    d.src = he.src;
    d.dst = he.dst;
    d.cores = he.cores;
    d.edge = e;
    out.push_back(d);
    e = v.next_boundary(e);
  } while (e != start);
  return out;
}

BoundaryCurveView envelope(const BuildContext& ctx, const std::vector<int>& others) {
  SiteSet subset;
  subset.backend = ctx.sites->backend;
  subset.sites.push_back(ctx.sites->by_id(ctx.center));
  for (int id : others) subset.sites.push_back(ctx.sites->by_id(id));
  auto full = brute_voronoi(subset, Mode::Nearest, ctx.tol);
  auto seq = extract_core_sequence(full, ctx.center, ctx.tol);
  BoundaryCurveView out;
  for (size_t i = 0; i < seq.arcs.size(); ++i) {
    const CoreArc& a = seq.arcs[size_t(i)];
    BoundaryArcDesc d;
    d.site = a.site;
    d.t0 = a.lo;
    d.t1 = a.hi;
    d.src = a.src;
    d.dst = a.dst;
    out.push_back(d);
    // Bridge to the next arc with a gamma opening when both ends are at
    // infinity.
    const CoreArc& nx = seq.arcs[(i + 1) % seq.arcs.size()];
    if (a.dst.at_gamma && nx.src.at_gamma) {
      double span = ccw_delta(a.dst.theta, nx.src.theta);
      if (span > ctx.tol.angular) {
        BoundaryArcDesc g;
        g.gamma_arc = true;
        g.t0 = a.dst.theta;
        g.t1 = span;
        g.src = EndPoint::gamma(a.dst.theta);
        g.dst = EndPoint::gamma(nx.src.theta);
        out.push_back(g);
      }
    }
  }
  return out;
}

namespace {

// Closure-side dominance in the build sense: is z weakly on `a`'s side of
// J(a,b)?
bool weakly_dominates(const BuildContext& ctx, int a, int b, Point z) {
  Side s = dominance(ctx.sites->backend, ctx.sites->by_id(a), ctx.sites->by_id(b),
                     z, ctx.tol);
  return ctx.sense == Mode::Nearest ? s != Side::QSide : s != Side::PSide;
}

bool weakly_dominates_at_infinity(const BuildContext& ctx, int a, int b,
                                  double theta) {
  Side s = dominance_at_infinity(ctx.sites->backend, ctx.sites->by_id(a),
                                 ctx.sites->by_id(b), theta, ctx.tol);
  return ctx.sense == Mode::Nearest ? s != Side::QSide : s != Side::PSide;
}

}  // namespace

bool validate_monotone_pair(const BuildContext& ctx, const BoundaryArcDesc& a,
                            const BoundaryArcDesc& b) {
  if (a.gamma_arc || b.gamma_arc || a.site == b.site) return false;
  if (ctx.sense == Mode::Farthest) {
    // Arcs live on Gamma; the shared vertex is a crossing of J(a.site,b.site).
    double va = norm_angle(a.t0 + a.t1), vb = b.t0;
    if (!angle_eq(va, vb, 1e-6)) return false;
    double ea = std::min(1e-3, a.t1 / 8), eb = std::min(1e-3, b.t1 / 8);
    return weakly_dominates_at_infinity(ctx, b.site, a.site, va - ea) &&
           weakly_dominates_at_infinity(ctx, a.site, b.site, vb + eb);
  }
  if (a.dst.at_gamma || b.src.at_gamma) return false;
  if (dist(a.dst.pt, b.src.pt) > 1e-6 * ctx.scale()) return false;
  const BisectorCurve& ca = ctx.curve(Carrier::of(ctx.center, a.site));
  const BisectorCurve& cb = ctx.curve(Carrier::of(ctx.center, b.site));
  double ua = ca.param_of(a.dst.pt);
  double ub = cb.param_of(b.src.pt);
  double ea = std::min(1e-4, (ua - a.t0) / 8);
  double eb = std::min(1e-4, (b.t1 - ub) / 8);
  // Just before the vertex, arc a must lie weakly inside D(center, b.site);
  // just after, arc b weakly inside D(center, a.site). That is exactly the
  // local boundary condition of the three-site diagram at the vertex.
  Point za = ca.point(ua - ea);
  Point zb = cb.point(ub + eb);
  return weakly_dominates(ctx, ctx.center, b.site, za) &&
         weakly_dominates(ctx, ctx.center, a.site, zb);
}

ValidationReport validate_boundary_curve(const BuildContext& ctx,
                                         const BoundaryCurveView& fine) {
  ValidationReport rep;
  if (fine.empty()) {
    rep.fail("empty boundary curve");
    return rep;
  }
  // Coarsen: merge consecutive fine gamma openings.
  BoundaryCurveView curve;
  for (const auto& d : fine) {
    if (d.gamma_arc && !curve.empty() && curve.back().gamma_arc) {
      curve.back().t1 += d.t1;
      curve.back().dst = d.dst;
      continue;
    }
    curve.push_back(d);
  }
  if (curve.size() > 1 && curve.front().gamma_arc && curve.back().gamma_arc) {
    curve.front().t0 = curve.back().t0;
    curve.front().t1 += curve.back().t1;
    curve.front().src = curve.back().src;
    curve.pop_back();
  }

  double sc = ctx.scale();
  int n = int(curve.size());
  for (int i = 0; i < n; ++i) {
    const auto& cur = curve[size_t(i)];
    const auto& nxt = curve[size_t((i + 1) % n)];
    if (!same_endpoint(cur.dst, nxt.src, 1e-6 * sc, 1e-6) && n > 1)
      rep.fail("gap after arc " + std::to_string(i));
    if (!cur.gamma_arc && !nxt.gamma_arc && n > 1) {
      if (cur.site == nxt.site && ctx.sense == Mode::Nearest)
        rep.fail("arcs " + std::to_string(i) + "," + std::to_string(i + 1) +
                 " on the same bisector");
      else if (!validate_monotone_pair(ctx, cur, nxt))
        rep.fail("arcs " + std::to_string(i) + "," + std::to_string(i + 1) +
                 " violate the monotone path condition");
    }
    if (!cur.gamma_arc) {
      for (int core : cur.cores) {
        (void)core;  // interval coverage is validated against the sequence
      }
    }
  }
  return rep;
}

namespace {

// Crossings of the ray z + t*dir (t > 0) with a curve piece.
int ray_curve_crossings(const BisectorCurve& J, double lo, double hi, Point z,
                        Point dir) {
  // Work in the curve frame: P(t) = Z + t*D must satisfy the curve equation.
  Point Z{dot(z - J.origin, J.ex), dot(z - J.origin, J.ey)};
  Point D{dot(dir, J.ex), dot(dir, J.ey)};
  int count = 0;
  auto consider = [&](double X, double Y, double t) {
    if (t <= 1e-12) return;
    double u;
    if (J.kind == CurveKind::Line) {
      double tau = Y / J.scale;
      u = tau == 0 ? 0 : (-1.0 + std::sqrt(1.0 + 4.0 * tau * tau)) / (2.0 * tau);
    } else {
      if (X * J.branch <= 0) return;  // other branch
      double tau = Y / J.b;
      u = tau == 0 ? 0 : (-1.0 + std::sqrt(1.0 + tau * tau)) / tau;
    }
    if (u >= lo && u <= hi) ++count;
  };
  if (J.kind == CurveKind::Line) {
    // X(t) = Z.x + t D.x = x0
    if (std::abs(D.x) < 1e-300) return 0;
    double t = (J.x0 - Z.x) / D.x;
    consider(J.x0, Z.y + t * D.y, t);
    return count;
  }
  // (Zx + tDx)^2 / a^2 - (Zy + tDy)^2 / b^2 = 1
  double A = D.x * D.x / (J.a * J.a) - D.y * D.y / (J.b * J.b);
  double B = 2 * (Z.x * D.x / (J.a * J.a) - Z.y * D.y / (J.b * J.b));
  double C = Z.x * Z.x / (J.a * J.a) - Z.y * Z.y / (J.b * J.b) - 1.0;
  if (std::abs(A) < 1e-14) {
    if (std::abs(B) < 1e-300) return 0;
    double t = -C / B;
    consider(Z.x + t * D.x, Z.y + t * D.y, t);
    return count;
  }
  double disc = B * B - 4 * A * C;
  if (disc < 0) return 0;
  double sq = std::sqrt(disc);
  for (double t : {(-B + sq) / (2 * A), (-B - sq) / (2 * A)})
    consider(Z.x + t * D.x, Z.y + t * D.y, t);
  return count;
}

struct RegionParity {
  bool inside = false;
  bool near_edge = false;
};

RegionParity point_in_region(const VoronoiLikeDiagram& v, int region, Point z,
                             double theta_ray) {
  RegionParity rp;
  const BuildContext& ctx = v.ctx();
  Point dir = unit_dir(theta_ray);
  int crossings = 0;
  for (size_t i = 0; i < v.edges.size(); ++i) {
    const HalfEdge& he = v.edges[i];
    if (!he.alive || he.region != region) continue;
    if (he.carrier.gamma()) {
      if (angle_in_ccw(theta_ray, he.t0, he.t1, 0)) ++crossings;
      continue;
    }
    crossings += ray_curve_crossings(ctx.curve(he.carrier), he.t0, he.t1, z, dir);
  }
  rp.inside = (crossings % 2) == 1;
  return rp;
}

}  // namespace

ValidationReport validate_vld(const VoronoiLikeDiagram& v, int samples,
                              uint64_t seed) {
  ValidationReport rep;
  const BuildContext& ctx = v.ctx();
  try {
    v.check_integrity();
  } catch (const Error& e) {
    rep.fail(e.what());
    return rep;
  }

  // Region boundaries minus their arc must be monotone paths: check every
  // consecutive pair of interior edges via the three-site condition.
  for (size_t r = 0; r < v.regions.size(); ++r) {
    if (!v.regions[r].alive) continue;
    int p = v.regions[r].site;
    EdgeId start = v.regions[r].arc;
    for (EdgeId e = v.at(start).next; e != start; e = v.at(e).next) {
      EdgeId f = v.at(e).next;
      if (f == start) break;
      const HalfEdge& he = v.at(e);
      const HalfEdge& hf = v.at(f);
      if (he.carrier.gamma() || hf.carrier.gamma()) continue;
      if (he.twin == kNone || hf.twin == kNone) continue;
      int s1 = he.carrier.a == p ? he.carrier.b : he.carrier.a;
      int s2 = hf.carrier.a == p ? hf.carrier.b : hf.carrier.a;
      if (s1 == s2) {
        rep.fail("region " + std::to_string(r) +
                 ": consecutive path edges on one bisector");
        continue;
      }
      if (he.dst.at_gamma) continue;
      Point vtx = he.dst.pt;
      const BisectorCurve& c1 = ctx.curve(he.carrier);
      const BisectorCurve& c2 = ctx.curve(hf.carrier);
      double u1 = c1.param_of(vtx), u2 = c2.param_of(vtx);
      double d1 = std::min(1e-4, (u1 - he.t0) / 8);
      double d2 = std::min(1e-4, (hf.t1 - u2) / 8);
      Point z1 = c1.point(he.forward ? u1 - d1 : u1 + d1);
      Point z2 = c2.point(hf.forward ? u2 + d2 : u2 - d2);
      if (!weakly_dominates(ctx, p, s2, z1) || !weakly_dominates(ctx, p, s1, z2))
        rep.fail("region " + std::to_string(r) + ": non-monotone path at vertex");
    }
  }

  // Vertex degrees: cluster finite endpoints of interior edges and arcs.
  {
    struct Cluster {
      Point pt;
      int interior = 0;
      int boundary = 0;
    };
    std::vector<Cluster> clusters;
    double ctol = 1e-6 * ctx.scale();
    auto add = [&](Point p, bool interior) {
      for (auto& c : clusters)
        if (dist(c.pt, p) <= ctol) {
          (interior ? c.interior : c.boundary)++;
          return;
        }
      clusters.push_back({p, interior ? 1 : 0, interior ? 0 : 1});
    };
    for (size_t i = 0; i < v.edges.size(); ++i) {
      const HalfEdge& he = v.edges[i];
      if (!he.alive) continue;
      bool interior = he.twin != kNone;
      if (interior && he.twin < EdgeId(i)) continue;
      if (!he.src.at_gamma) add(he.src.pt, interior);
      if (!he.dst.at_gamma) add(he.dst.pt, interior);
    }
    for (const auto& c : clusters) {
      if (c.boundary == 0 && c.interior != 3)
        rep.fail("interior vertex of degree " + std::to_string(c.interior));
      if (c.boundary > 0 && c.interior > 1)
        rep.fail("boundary vertex with " + std::to_string(c.interior) +
                 " interior edges");
    }
  }

  // Coverage and dominance by stratified sampling.
  Box box = ctx.sites->bounding_box();
  double margin = std::max(1.0, box.diag());
  box = {box.xmin - margin, box.ymin - margin, box.xmax + margin, box.ymax + margin};
  SplitMix64 rng(seed);
  int grid = std::max(2, int(std::sqrt(double(samples))));
  int bad_cover = 0, bad_dom = 0;
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      Point z{box.xmin + (box.xmax - box.xmin) * (gx + rng.uniform()) / grid,
              box.ymin + (box.ymax - box.ymin) * (gy + rng.uniform()) / grid};
      double theta = rng.uniform(0, kTau);
      // Domain membership: parity against the boundary curve itself.
      int pcross = 0;
      for (size_t i = 0; i < v.edges.size(); ++i) {
        const HalfEdge& he = v.edges[i];
        if (!he.alive || !he.on_boundary) continue;
        if (he.carrier.gamma()) {
          if (angle_in_ccw(theta, he.t0, he.t1, 0)) ++pcross;
        } else {
          pcross += ray_curve_crossings(ctx.curve(he.carrier), he.t0, he.t1, z,
                                        unit_dir(theta));
        }
      }
      bool in_domain = (pcross % 2) == 1;
      int holders = 0;
      int holder_region = -1;
      for (size_t r = 0; r < v.regions.size(); ++r) {
        if (!v.regions[r].alive) continue;
        if (point_in_region(v, int(r), z, theta).inside) {
          ++holders;
          holder_region = int(r);
        }
      }
      if (holders != (in_domain ? 1 : 0)) {
        ++bad_cover;
        continue;
      }
      if (in_domain && ctx.sense == Mode::Nearest) {
        if (!weakly_dominates(ctx, ctx.center, v.regions[size_t(holder_region)].site, z))
          ++bad_dom;
      }
    }
  }
  // Parity tests misfire within tolerance of edges; allow a tiny fraction.
  int total = grid * grid;
  if (bad_cover > total / 100)
    rep.fail("coverage violated at " + std::to_string(bad_cover) + "/" +
             std::to_string(total) + " samples");
  if (bad_dom > 0)
    rep.fail("region not inside center dominance at " + std::to_string(bad_dom) +
             " samples");
  return rep;
}

ValidationReport validate_cycles(const VoronoiLikeDiagram& v) {
  ValidationReport rep;
  const BuildContext& ctx = v.ctx();
  double ctol = 1e-6 * ctx.scale();

  // Collect nodes (finite endpoints and gamma directions) and labeled edges.
  struct Node {
    bool gamma;
    Point pt;
    double theta;
  };
  std::vector<Node> nodes;
  auto node_of = [&](const EndPoint& e) {
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].gamma != e.at_gamma) continue;
      if (e.at_gamma ? angle_eq(nodes[i].theta, e.theta, 1e-7)
                     : dist(nodes[i].pt, e.pt) <= ctol)
        return int(i);
    }
    nodes.push_back({e.at_gamma, e.pt, e.theta});
    return int(nodes.size()) - 1;
  };

  struct GEdge {
    int u, v;
    EdgeId id;
    bool gamma;
  };

  std::set<int> site_set;
  for (const auto& r : v.regions)
    if (r.alive) site_set.insert(r.site);

  for (int p : site_set) {
    nodes.clear();
    std::vector<GEdge> gedges;
    for (size_t i = 0; i < v.edges.size(); ++i) {
      const HalfEdge& he = v.edges[i];
      if (!he.alive) continue;
      if (he.twin != kNone && he.twin < EdgeId(i)) continue;
      bool is_gamma = he.carrier.gamma();
      bool p_related = !is_gamma && (he.carrier.a == p || he.carrier.b == p);
      if (!p_related && !is_gamma) continue;
      gedges.push_back({node_of(he.src), node_of(he.dst), EdgeId(i), is_gamma});
    }
    // Look for simple cycles in this small labeled graph.
    int m = int(gedges.size());
    std::vector<std::vector<int>> adj(nodes.size());
    for (int e = 0; e < m; ++e) {
      adj[size_t(gedges[size_t(e)].u)].push_back(e);
      adj[size_t(gedges[size_t(e)].v)].push_back(e);
    }
    std::vector<int> stack_edges;
    std::vector<bool> on_path(nodes.size(), false);
    std::vector<std::vector<int>> cycles;
    std::function<void(int, int, int)> dfs = [&](int start, int at, int via) {
      if (cycles.size() > 64) return;
      on_path[size_t(at)] = true;
      for (int e : adj[size_t(at)]) {
        if (e == via) continue;
        const GEdge& g = gedges[size_t(e)];
        int to = g.u == at ? g.v : g.u;
        if (to == start && stack_edges.size() >= 2) {
          auto cyc = stack_edges;
          cyc.push_back(e);
          if (g.id > gedges[size_t(cyc[0])].id) cycles.push_back(cyc);
        } else if (!on_path[size_t(to)]) {
          stack_edges.push_back(e);
          dfs(start, to, e);
          stack_edges.pop_back();
        }
      }
      on_path[size_t(at)] = false;
    };
    for (size_t s = 0; s < nodes.size(); ++s) dfs(int(s), int(s), -1);

    for (const auto& cyc : cycles) {
      // Orientation of the cycle polygon from sampled edge midpoints.
      std::vector<Point> poly;
      int at = gedges[size_t(cyc[0])].u;
      bool has_gamma = false;
      double R = 4 * ctx.scale();
      for (int e : cyc) {
        const GEdge& g = gedges[size_t(e)];
        const HalfEdge& he = v.at(g.id);
        bool fwd_in_cycle = g.u == at;
        if (g.gamma) has_gamma = true;
        std::vector<Point> pts;
        for (int smp = 0; smp <= 4; ++smp) {
          double f = double(smp) / 4;
          if (g.gamma) {
            pts.push_back(unit_dir(he.t0 + he.t1 * f) * R);
          } else {
            double u = he.t0 + (he.t1 - he.t0) * (he.forward ? f : 1 - f);
            u = std::clamp(u, -0.999999, 0.999999);
            pts.push_back(ctx.curve(he.carrier).point(u));
          }
        }
        if (!fwd_in_cycle) std::reverse(pts.begin(), pts.end());
        poly.insert(poly.end(), pts.begin(), pts.end());
        at = fwd_in_cycle ? g.v : g.u;
      }
      double area2 = 0;
      for (size_t i = 0; i < poly.size(); ++i)
        area2 += cross(poly[i], poly[(i + 1) % poly.size()]);
      bool ccw = area2 > 0;
      // For every non-gamma edge: does the p label face the cycle interior?
      int inward = 0, outward = 0, count = 0;
      at = gedges[size_t(cyc[0])].u;
      for (int e : cyc) {
        const GEdge& g = gedges[size_t(e)];
        const HalfEdge& he = v.at(g.id);
        bool fwd_in_cycle = g.u == at;
        at = fwd_in_cycle ? g.v : g.u;
        if (g.gamma) continue;
        ++count;
        // p dominates left of +u iff p is the carrier's first site.
        bool p_left_of_traversal =
            (he.carrier.a == p) == (fwd_in_cycle == he.forward);
        bool p_inward = p_left_of_traversal == ccw;
        (p_inward ? inward : outward)++;
      }
      if (count == 0) continue;
      if (outward == count && !has_gamma)
        rep.fail("inverse cycle for site " + std::to_string(p));
      if (inward == count && p != ctx.center)
        rep.fail("dominance cycle of site " + std::to_string(p) +
                 " inside the domain");
    }
  }
  return rep;
}

}  // namespace avd
