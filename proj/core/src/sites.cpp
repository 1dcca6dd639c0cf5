#include "avd/sites.hpp"

#include <cmath>
#include <set>

#include "avd/rng.hpp"

namespace avd {

std::string to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Euclidean: return "euclidean";
    case BackendKind::Power: return "power";
    case BackendKind::Apollonius: return "apollonius";
  }
  return "?";
}

std::optional<BackendKind> backend_from_string(const std::string& s) {
  if (s == "euclidean") return BackendKind::Euclidean;
  if (s == "power") return BackendKind::Power;
  if (s == "apollonius") return BackendKind::Apollonius;
  return std::nullopt;
}

const SiteRecord& SiteSet::by_id(int id) const {
  int i = index_of(id);
  if (i < 0) throw Error(Errc::UnknownSite, "unknown site id " + std::to_string(id));
  return sites[size_t(i)];
}

int SiteSet::index_of(int id) const {
  for (size_t i = 0; i < sites.size(); ++i)
    if (sites[i].id == id) return int(i);
  return -1;
}

Box SiteSet::bounding_box() const {
  Box b;
  if (!sites.empty()) {
    b = {sites[0].pos.x, sites[0].pos.y, sites[0].pos.x, sites[0].pos.y};
    for (const auto& s : sites) b.grow(s.pos);
  }
  return b;
}

SiteSet SiteSet::without(int id) const {
  SiteSet out;
  out.backend = backend;
  for (const auto& s : sites)
    if (s.id != id) out.sites.push_back(s);
  return out;
}

double site_distance(BackendKind k, const SiteRecord& p, Point z) {
  switch (k) {
    case BackendKind::Euclidean: return dist(z, p.pos);
    case BackendKind::Power: {
      Point d = z - p.pos;
      return dot(d, d) - p.weight;
    }
    case BackendKind::Apollonius: return dist(z, p.pos) - p.weight;
  }
  return 0;
}

Side dominance(BackendKind k, const SiteRecord& p, const SiteRecord& q, Point z,
               const Tolerance& tol) {
  double dp = site_distance(k, p, z);
  double dq = site_distance(k, q, z);
  double scale = std::max({1.0, std::abs(dp), std::abs(dq)});
  int s = tol.sign(dq - dp, scale);
  if (s > 0) return Side::PSide;
  if (s < 0) return Side::QSide;
  return Side::On;
}

Side dominance_at_infinity(BackendKind k, const SiteRecord& p,
                           const SiteRecord& q, double theta,
                           const Tolerance& tol) {
  Point u = unit_dir(theta);
  // Leading coefficients of site_distance(t*u) as t grows. The t^2 and t
  // terms shared by both sites cancel in the comparison.
  double lin_p, lin_q, const_p, const_q;
  if (k == BackendKind::Power) {
    lin_p = -2.0 * dot(p.pos, u);
    lin_q = -2.0 * dot(q.pos, u);
    const_p = dot(p.pos, p.pos) - p.weight;
    const_q = dot(q.pos, q.pos) - q.weight;
  } else {
    double wp = k == BackendKind::Apollonius ? p.weight : 0.0;
    double wq = k == BackendKind::Apollonius ? q.weight : 0.0;
    lin_p = -(dot(p.pos, u) + wp);
    lin_q = -(dot(q.pos, u) + wq);
    const_p = const_q = 0;
  }
  double scale = std::max({1.0, std::abs(lin_p), std::abs(lin_q)});
  int s = tol.sign(lin_q - lin_p, scale);
  if (s == 0) s = tol.sign(const_q - const_p, std::max(1.0, std::abs(const_p)));
  if (s > 0) return Side::PSide;
  if (s < 0) return Side::QSide;
  return Side::On;
}

void validate_sites(const SiteSet& s, const Tolerance& tol) {
  std::set<int> ids;
  for (const auto& r : s.sites) {
    if (!ids.insert(r.id).second)
      throw Error(Errc::BadInput, "duplicate site id " + std::to_string(r.id));
    if (!std::isfinite(r.pos.x) || !std::isfinite(r.pos.y) ||
        !std::isfinite(r.weight))
      throw Error(Errc::BadInput, "non-finite site " + std::to_string(r.id));
    if (s.backend == BackendKind::Apollonius && r.weight < 0)
      throw Error(Errc::BadInput,
                  "negative apollonius weight on site " + std::to_string(r.id));
  }
  if (s.backend == BackendKind::Euclidean) return;
  // Circles must be pairwise non-enclosing for the bisector system to be
  // admissible.
  for (size_t i = 0; i < s.sites.size(); ++i) {
    for (size_t j = i + 1; j < s.sites.size(); ++j) {
      const auto& a = s.sites[i];
      const auto& b = s.sites[j];
      double d = dist(a.pos, b.pos);
      double ra = s.backend == BackendKind::Power ? std::sqrt(std::max(0.0, a.weight))
                                                  : a.weight;
      double rb = s.backend == BackendKind::Power ? std::sqrt(std::max(0.0, b.weight))
                                                  : b.weight;
      if (d <= std::abs(ra - rb) + tol.rel)
        throw Error(Errc::DegenerateInput,
                    "sites " + std::to_string(a.id) + "," + std::to_string(b.id) +
                        " have enclosing circles");
    }
  }
}

SiteSet jitter_sites(const SiteSet& s, uint64_t seed, double mag) {
  SplitMix64 rng(seed);
  double amp = mag * std::max(1.0, s.bounding_box().diag());
  SiteSet out = s;
  for (auto& r : out.sites) {
    r.pos.x += amp * (rng.uniform() - 0.5);
    r.pos.y += amp * (rng.uniform() - 0.5);
  }
  return out;
}

}  // namespace avd
