#pragma once

#include <cmath>
#include <vector>

#include "avd/bisector.hpp"
#include "avd/rng.hpp"
#include "avd/sites.hpp"

namespace avd::testing {

inline SiteSet random_sites(BackendKind k, int n, uint64_t seed) {
  SplitMix64 rng(seed);
  SiteSet out;
  out.backend = k;
  int attempts = 0;
  while (out.size() < n && attempts < 10000) {
    ++attempts;
    SiteRecord s;
    s.id = out.size();
    s.pos = {rng.uniform(), rng.uniform()};
    if (k == BackendKind::Apollonius)
      s.weight = rng.uniform(0.0, 0.08);
    else if (k == BackendKind::Power)
      s.weight = rng.uniform(0.0, 0.01);
    SiteSet trial = out;
    trial.sites.push_back(s);
    try {
      validate_sites(trial, Tolerance{});
    } catch (const Error&) {
      continue;  // enclosing draw; resample
    }
    out = trial;
  }
  return out;
}

// Independent root-finding route for bisector intersections: march the first
// curve's parameter, bracket sign changes of the distance gap to the third
// site, and bisect. Used only to cross-check the algebraic solver.
inline std::vector<Point> bisection_intersections(BackendKind k,
                                                  const SiteRecord& p,
                                                  const SiteRecord& q,
                                                  const SiteRecord& r,
                                                  int samples = 20000) {
  Tolerance tol;
  BisectorCurve J = bisector(k, p, q, tol);
  auto gap = [&](double u) {
    Point z = J.point(u);
    return site_distance(k, p, z) - site_distance(k, r, z);
  };
  std::vector<Point> out;
  double lim = 1.0 - 1e-7;
  double prev_u = -lim, prev_g = gap(prev_u);
  for (int i = 1; i <= samples; ++i) {
    double u = -lim + 2 * lim * double(i) / samples;
    double g = gap(u);
    if ((prev_g < 0) != (g < 0)) {
      double lo = prev_u, hi = u;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((gap(lo) < 0) != (gap(mid) < 0))
          hi = mid;
        else
          lo = mid;
      }
      out.push_back(J.point(0.5 * (lo + hi)));
    }
    prev_u = u;
    prev_g = g;
  }
  return out;
}

}  // namespace avd::testing
