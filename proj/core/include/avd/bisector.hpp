#pragma once

#include <map>
#include <utility>
#include <vector>

#include "avd/geom.hpp"
#include "avd/sites.hpp"

namespace avd {

// Oriented bisector J(p,q). Traversal direction is chosen so that the
// dominance region D(p,q) lies locally to the LEFT of increasing parameter.
// Every curve is parameterized over the open interval u in (-1,1); the ends
// u->+1 and u->-1 are the two crossings with Gamma, realized as asymptotic
// directions. reverse(J(p,q)) equals J(q,p) with u negated.
enum class CurveKind { Line, Hyperbola };

struct BisectorCurve {
  int p = -1, q = -1;
  BackendKind backend = BackendKind::Euclidean;
  CurveKind kind = CurveKind::Line;

  Point origin{};      // frame origin (midpoint of the two centers)
  Point ex{}, ey{};    // unit axes, ex from p to q, ey = rot90(ex)
  double x0 = 0;       // line: offset along ex
  double scale = 1;    // line: parameter scale
  double a = 0, b = 0; // hyperbola: semi-axes
  double branch = 1;   // hyperbola: +1 branch wraps q, -1 wraps p

  Point point(double u) const;
  // Inverse of point(); z is assumed to lie on the curve.
  double param_of(Point z) const;
  // Asymptotic direction at u->+1 (end=+1) or u->-1 (end=-1).
  double gamma_theta(int end) const;
  // Unit tangent in the direction of increasing u.
  Point tangent(double u) const;
};

// J(p,q) for two distinct sites of the same backend.
// Throws Error(IdenticalSites) when the bisector is undefined.
BisectorCurve bisector(BackendKind k, const SiteRecord& p, const SiteRecord& q,
                       const Tolerance& tol);

// A common point of three bisectors J(p,q), J(p,r), J(q,r).
struct TriplePoint {
  Point pt{};
  double t = 0;  // common backend distance at the point
};

// Points equidistant (in the backend sense) from all three sites: the
// candidate Voronoi vertices of {p,q,r}. 0, 1 or 2 points, unordered.
// Throws Error(DegenerateContact) on a tangential (double-root) contact.
std::vector<TriplePoint> equidistant_points(BackendKind k, const SiteRecord& p,
                                            const SiteRecord& q,
                                            const SiteRecord& r,
                                            const Tolerance& tol);

// Intersections of two p-related bisectors, sorted along `first`'s
// orientation. Each returned point also lies on the third bisector J(q,r).
struct RelatedIntersection {
  Point pt{};
  double u_first = 0;   // parameter on `first`
  double u_second = 0;  // parameter on `second`
};

std::vector<RelatedIntersection> related_intersections(
    BackendKind k, const SiteRecord& p, const SiteRecord& q,
    const SiteRecord& r, const BisectorCurve& first,
    const BisectorCurve& second, const Tolerance& tol);

// Construction cache; curves are immutable so sharing is safe.
class BisectorCache {
 public:
  BisectorCache(const SiteSet& sites, Tolerance tol)
      : sites_(&sites), tol_(tol) {}

  const BisectorCurve& get(int p, int q) const;
  const SiteSet& sites() const { return *sites_; }
  const Tolerance& tol() const { return tol_; }

  // Co-intersections of the p-related pair (J(p,q), J(p,r)),
  // sorted along J(p,q).
  std::vector<RelatedIntersection> related(int p, int q, int r) const;

 private:
  const SiteSet* sites_;
  Tolerance tol_;
  mutable std::map<std::pair<int, int>, BisectorCurve> cache_;
};

}  // namespace avd
