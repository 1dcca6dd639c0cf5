#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avd/geom.hpp"
#include "avd/scalar.hpp"

namespace avd {

enum class BackendKind { Euclidean, Power, Apollonius };

std::string to_string(BackendKind k);
std::optional<BackendKind> backend_from_string(const std::string& s);

// A concrete site. `weight` is the squared radius for power circles, the
// additive radius for apollonius points, and unused for euclidean points.
struct SiteRecord {
  int id = -1;
  Point pos{};
  double weight = 0;
};

struct SiteSet {
  BackendKind backend = BackendKind::Euclidean;
  std::vector<SiteRecord> sites;

  int size() const { return int(sites.size()); }
  const SiteRecord& by_id(int id) const;
  int index_of(int id) const;  // -1 if absent
  Box bounding_box() const;
  SiteSet without(int id) const;
};

// Backend distance from z to site p. Nearest labels minimize it, farthest
// labels maximize it.
double site_distance(BackendKind k, const SiteRecord& p, Point z);

// Which of p, q is closer to z (nearest sense), within tolerance.
Side dominance(BackendKind k, const SiteRecord& p, const SiteRecord& q, Point z,
               const Tolerance& tol);

// Same comparison for the point at infinity in direction theta: which label
// holds far along the ray. Exact (lexicographic in the ray expansion), so it
// agrees with the bisector's Gamma crossings.
Side dominance_at_infinity(BackendKind k, const SiteRecord& p,
                           const SiteRecord& q, double theta,
                           const Tolerance& tol);

// Ingest validation: unique ids, finite coordinates, apollonius weights >= 0,
// power/apollonius circles pairwise non-enclosing. Throws Error on violation.
void validate_sites(const SiteSet& s, const Tolerance& tol);

// Seeded perturbation of magnitude `mag * bbox diagonal`, used to restore
// general position on degenerate inputs.
SiteSet jitter_sites(const SiteSet& s, uint64_t seed, double mag = 1e-6);

}  // namespace avd
