#include "avd/bisector.hpp"

#include <algorithm>
#include <cmath>

namespace avd {

namespace {

// Monotone map from u in (-1,1) onto the real line, u -> u/(1-u^2).
double unbounded(double u) { return u / (1.0 - u * u); }

// Inverse of unbounded().
double bounded(double t) {
  if (t == 0) return 0;
  return (-1.0 + std::sqrt(1.0 + 4.0 * t * t)) / (2.0 * t);
}

}  // namespace

Point BisectorCurve::point(double u) const {
  double X, Y;
  if (kind == CurveKind::Line) {
    X = x0;
    Y = scale * unbounded(u);
  } else {
    double d = 1.0 - u * u;
    X = branch * a * (1.0 + u * u) / d;
    Y = b * 2.0 * u / d;
  }
  return origin + ex * X + ey * Y;
}

double BisectorCurve::param_of(Point z) const {
  double Y = dot(z - origin, ey);
  if (kind == CurveKind::Line) return bounded(Y / scale);
  // Y = b * 2u/(1-u^2); solve tau*u^2 + 2u - tau = 0 for the root in (-1,1).
  double tau = Y / b;
  if (tau == 0) return 0;
  return (-1.0 + std::sqrt(1.0 + tau * tau)) / tau;
}

double BisectorCurve::gamma_theta(int end) const {
  Point v;
  if (kind == CurveKind::Line)
    v = end > 0 ? ey : ey * -1.0;
  else
    v = ex * (branch * a) + ey * (end > 0 ? b : -b);
  return angle_of(v);
}

Point BisectorCurve::tangent(double u) const {
  Point v;
  if (kind == CurveKind::Line) {
    v = ey;
  } else {
    // d/du of the rational parameterization, up to positive scale.
    double d = 1.0 - u * u;
    double dX = branch * a * 4.0 * u / (d * d);
    double dY = b * 2.0 * (1.0 + u * u) / (d * d);
    v = ex * dX + ey * dY;
  }
  return normalized(v);
}

BisectorCurve bisector(BackendKind k, const SiteRecord& p, const SiteRecord& q,
                       const Tolerance& tol) {
  Point d = q.pos - p.pos;
  double c2 = norm(d);
  double scale = std::max(1.0, c2);
  if (tol.zero(c2, scale)) {
    // Coincident centers never produce a Jordan-curve bisector: equal sites
    // have none, unequal weights make one region empty.
    throw Error(Errc::IdenticalSites, "bisector of coincident sites");
  }
  BisectorCurve out;
  out.p = p.id;
  out.q = q.id;
  out.backend = k;
  out.origin = (p.pos + q.pos) * 0.5;
  out.ex = normalized(d);
  out.ey = rot90(out.ex);
  out.scale = scale;

  switch (k) {
    case BackendKind::Euclidean:
      out.kind = CurveKind::Line;
      out.x0 = 0;
      break;
    case BackendKind::Power:
      out.kind = CurveKind::Line;
      // |z-p|^2 - wp = |z-q|^2 - wq  =>  2*c2*x = wp - wq in the frame.
      out.x0 = (p.weight - q.weight) / (2.0 * c2);
      break;
    case BackendKind::Apollonius: {
      double kdiff = p.weight - q.weight;  // = r_p(z) - r_q(z) on the locus
      if (tol.zero(kdiff, scale)) {
        out.kind = CurveKind::Line;
        out.x0 = 0;
      } else {
        out.kind = CurveKind::Hyperbola;
        out.a = std::abs(kdiff) / 2.0;
        double c = c2 / 2.0;
        if (out.a >= c)
          throw Error(Errc::DegenerateInput,
                      "enclosing apollonius circles have no bisector");
        out.b = std::sqrt(c * c - out.a * out.a);
        out.branch = kdiff > 0 ? 1.0 : -1.0;  // wraps the smaller-weight site
      }
      break;
    }
  }
  return out;
}

namespace {

std::vector<TriplePoint> circumcenter(const SiteRecord& p, const SiteRecord& q,
                                      const SiteRecord& r, const Tolerance& tol,
                                      double scale) {
  double ax = p.pos.x, ay = p.pos.y;
  double bx = q.pos.x, by = q.pos.y;
  double cx = r.pos.x, cy = r.pos.y;
  double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (tol.zero(d, scale * scale)) return {};
  double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  Point z{(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
          (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d};
  return {{z, dist(z, p.pos)}};
}

std::vector<TriplePoint> power_center(const SiteRecord& p, const SiteRecord& q,
                                      const SiteRecord& r, const Tolerance& tol,
                                      double scale) {
  // pow_p(z) = pow_q(z) and pow_p(z) = pow_r(z): two linear equations.
  double a1 = 2 * (q.pos.x - p.pos.x), b1 = 2 * (q.pos.y - p.pos.y);
  double c1 = (dot(q.pos, q.pos) - q.weight) - (dot(p.pos, p.pos) - p.weight);
  double a2 = 2 * (r.pos.x - p.pos.x), b2 = 2 * (r.pos.y - p.pos.y);
  double c2 = (dot(r.pos, r.pos) - r.weight) - (dot(p.pos, p.pos) - p.weight);
  double det = a1 * b2 - a2 * b1;
  if (tol.zero(det, scale * scale)) return {};
  Point z{(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
  return {{z, site_distance(BackendKind::Power, p, z)}};
}

// Solve |z - pos_i| = t + w_i for three additively weighted sites.
std::vector<TriplePoint> apollonius_centers(const SiteRecord& p,
                                            const SiteRecord& q,
                                            const SiteRecord& r,
                                            const Tolerance& tol,
                                            double scale) {
  // Subtracting the squared equations pairwise gives, for (i,j):
  //   2(xj-xi) zx + 2(yj-yi) zy + 2(wj-wi) t = Kj - Ki,
  // with Ki = |pos_i|^2 - wi^2. Solve z as an affine function of t, then
  // substitute into one quadratic.
  auto K = [](const SiteRecord& s) { return dot(s.pos, s.pos) - s.weight * s.weight; };
  double a1 = 2 * (q.pos.x - p.pos.x), b1 = 2 * (q.pos.y - p.pos.y),
         c1 = 2 * (q.weight - p.weight), d1 = K(q) - K(p);
  double a2 = 2 * (r.pos.x - p.pos.x), b2 = 2 * (r.pos.y - p.pos.y),
         c2 = 2 * (r.weight - p.weight), d2 = K(r) - K(p);
  double det = a1 * b2 - a2 * b1;

  Point z0, z1;
  std::vector<TriplePoint> out;
  auto accept = [&](double t, Point z) {
    for (const SiteRecord* s : {&p, &q, &r}) {
      double rad = t + s->weight;
      if (rad < -tol.rel * scale) return;
      if (!tol.close(dist(z, s->pos), rad, scale)) return;
    }
    out.push_back({z, t});
  };

  if (!tol.zero(det, scale * scale)) {
    z0 = {(d1 * b2 - d2 * b1) / det, (a1 * d2 - a2 * d1) / det};
    z1 = {(-c1 * b2 + c2 * b1) / det, (-a1 * c2 + a2 * c1) / det};
    // |z0 + t z1 - p|^2 = (t + wp)^2
    Point e = z0 - p.pos;
    double A = dot(z1, z1) - 1.0;
    double B = 2.0 * dot(e, z1) - 2.0 * p.weight;
    double C = dot(e, e) - p.weight * p.weight;
    if (tol.zero(A, 1.0)) {
      if (!tol.zero(B, scale)) accept(-C / B, z0 + z1 * (-C / B));
      return out;
    }
    double disc = B * B - 4 * A * C;
    if (disc < 0) {
      if (tol.zero(disc, scale * scale * scale * scale))
        throw Error(Errc::DegenerateContact, "tangential bisector contact");
      return out;
    }
    double sq = std::sqrt(disc);
    for (double t : {(-B + sq) / (2 * A), (-B - sq) / (2 * A)}) {
      accept(t, z0 + z1 * t);
    }
    if (out.size() == 2 && dist(out[0].pt, out[1].pt) <= tol.rel * scale * 10)
      throw Error(Errc::DegenerateContact, "tangential bisector contact");
    return out;
  }

  // Collinear centers: both linear equations constrain the same direction.
  Point u = normalized(q.pos - p.pos);
  if (norm(q.pos - p.pos) == 0) u = normalized(r.pos - p.pos);
  Point v = rot90(u);
  // Rewrite L_i in coordinates z = p.pos + xi*u + eta*v; eta drops out.
  double m1 = a1 * u.x + b1 * u.y, n1 = c1,
         k1 = d1 - (a1 * p.pos.x + b1 * p.pos.y);
  double m2 = a2 * u.x + b2 * u.y, n2 = c2,
         k2 = d2 - (a2 * p.pos.x + b2 * p.pos.y);
  double det2 = m1 * n2 - m2 * n1;
  if (tol.zero(det2, scale * scale)) return {};
  double xi = (k1 * n2 - k2 * n1) / det2;
  double t = (m1 * k2 - m2 * k1) / det2;
  double eta2 = (t + p.weight) * (t + p.weight) - xi * xi;
  if (eta2 < 0) return {};
  for (double eta : {std::sqrt(eta2), -std::sqrt(eta2)}) {
    accept(t, p.pos + u * xi + v * eta);
    if (eta2 == 0) break;
  }
  return out;
}

}  // namespace

std::vector<TriplePoint> equidistant_points(BackendKind k, const SiteRecord& p,
                                            const SiteRecord& q,
                                            const SiteRecord& r,
                                            const Tolerance& tol) {
  Box box{p.pos.x, p.pos.y, p.pos.x, p.pos.y};
  box.grow(q.pos);
  box.grow(r.pos);
  double scale = std::max(1.0, box.diag());
  switch (k) {
    case BackendKind::Euclidean: return circumcenter(p, q, r, tol, scale);
    case BackendKind::Power: return power_center(p, q, r, tol, scale);
    case BackendKind::Apollonius: return apollonius_centers(p, q, r, tol, scale);
  }
  return {};
}

std::vector<RelatedIntersection> related_intersections(
    BackendKind k, const SiteRecord& p, const SiteRecord& q,
    const SiteRecord& r, const BisectorCurve& first,
    const BisectorCurve& second, const Tolerance& tol) {
  std::vector<RelatedIntersection> out;
  for (const auto& tp : equidistant_points(k, p, q, r, tol)) {
    RelatedIntersection ri;
    ri.pt = tp.pt;
    ri.u_first = first.param_of(tp.pt);
    ri.u_second = second.param_of(tp.pt);
    out.push_back(ri);
  }
  std::sort(out.begin(), out.end(),
            [](const RelatedIntersection& a, const RelatedIntersection& b) {
              return a.u_first < b.u_first;
            });
  return out;
}

const BisectorCurve& BisectorCache::get(int p, int q) const {
  auto key = std::make_pair(p, q);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto curve = bisector(sites_->backend, sites_->by_id(p), sites_->by_id(q), tol_);
  return cache_.emplace(key, curve).first->second;
}

std::vector<RelatedIntersection> BisectorCache::related(int p, int q,
                                                        int r) const {
  return related_intersections(sites_->backend, sites_->by_id(p),
                               sites_->by_id(q), sites_->by_id(r), get(p, q),
                               get(p, r), tol_);
}

}  // namespace avd
