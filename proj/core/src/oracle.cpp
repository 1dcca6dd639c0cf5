#include "avd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "avd/rng.hpp"

namespace avd {

namespace {

// Union-find over endpoint indices, used to cluster vertices.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void FullDiagram::rebuild_vertices(double cluster_tol) {
  vertices.clear();
  struct Ref {
    Point pt;
    int edge;
  };
  std::vector<Ref> refs;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].e0.at_gamma) refs.push_back({edges[i].e0.pt, int(i)});
    if (!edges[i].e1.at_gamma) refs.push_back({edges[i].e1.pt, int(i)});
  }
  UnionFind uf(int(refs.size()));
  for (size_t i = 0; i < refs.size(); ++i)
    for (size_t j = i + 1; j < refs.size(); ++j)
      if (dist(refs[i].pt, refs[j].pt) <= cluster_tol) uf.unite(int(i), int(j));
  std::map<int, int> root_to_vertex;
  for (size_t i = 0; i < refs.size(); ++i) {
    int root = uf.find(int(i));
    auto [it, fresh] = root_to_vertex.try_emplace(root, int(vertices.size()));
    if (fresh) vertices.push_back({refs[i].pt, {}});
    vertices[size_t(it->second)].edges.push_back(refs[i].edge);
  }
}

FullDiagram brute_voronoi(const SiteSet& sites, Mode mode, const Tolerance& tol) {
  validate_sites(sites, tol);
  FullDiagram out;
  out.backend = sites.backend;
  out.mode = mode;
  out.sites = sites;
  const int n = sites.size();
  if (n < 2) return out;
  BisectorCache cache(sites, tol);
  double scale = std::max(1.0, sites.bounding_box().diag());

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int p = sites.sites[size_t(i)].id;
      int q = sites.sites[size_t(j)].id;
      const BisectorCurve& J = cache.get(p, q);
      // Candidate breakpoints: co-intersections with every other site.
      struct Cut {
        double u;
        Point pt;
      };
      std::vector<Cut> cuts;
      for (int k = 0; k < n; ++k) {
        int r = sites.sites[size_t(k)].id;
        if (r == p || r == q) continue;
        for (const auto& x : cache.related(p, q, r)) cuts.push_back({x.u_first, x.pt});
      }
      std::sort(cuts.begin(), cuts.end(),
                [](const Cut& a, const Cut& b) { return a.u < b.u; });

      std::vector<double> grid{-1.0};
      for (const auto& c : cuts) grid.push_back(c.u);
      grid.push_back(1.0);

      // A grid cell survives when no third site beats the tied pair there.
      // Cells have no crossings inside, so the status is constant; evaluate
      // at a moderate radius, and settle cells lying entirely past it with
      // the exact at-infinity comparison (midpoints degenerate out there).
      const double uT = 1.0 - 1.0 / (2.0 * 1e3);  // param past all crossings
      auto alive_at_infinity = [&](int end) {
        double theta = J.gamma_theta(end);
        for (int k = 0; k < n; ++k) {
          int r = sites.sites[size_t(k)].id;
          if (r == p || r == q) continue;
          Side s = dominance_at_infinity(sites.backend, sites.by_id(p),
                                         sites.by_id(r), theta, tol);
          if (mode == Mode::Nearest && s == Side::QSide) return false;
          if (mode == Mode::Farthest && s == Side::PSide) return false;
        }
        return true;
      };
      auto cell_alive = [&](double ulo, double uhi) {
        if (ulo >= uT) return alive_at_infinity(+1);
        if (uhi <= -uT) return alive_at_infinity(-1);
        double um = 0.5 * (std::max(ulo, -uT) + std::min(uhi, uT));
        Point z = J.point(um);
        double dpq = site_distance(sites.backend, sites.by_id(p), z);
        for (int k = 0; k < n; ++k) {
          int r = sites.sites[size_t(k)].id;
          if (r == p || r == q) continue;
          double dr = site_distance(sites.backend, sites.by_id(r), z);
          double sc = std::max({1.0, std::abs(dpq), std::abs(dr), scale});
          if (mode == Mode::Nearest && dr < dpq - tol.rel * sc) return false;
          if (mode == Mode::Farthest && dr > dpq + tol.rel * sc) return false;
        }
        return true;
      };

      auto end_at = [&](double u, bool lo_end) -> EndPoint {
        if (u <= -1.0) return EndPoint::gamma(J.gamma_theta(-1));
        if (u >= 1.0) return EndPoint::gamma(J.gamma_theta(+1));
        (void)lo_end;
        for (const auto& c : cuts)
          if (c.u == u) return EndPoint::at(c.pt);
        return EndPoint::at(J.point(u));
      };

      // Merge consecutive alive cells into maximal edges.
      size_t c = 0;
      while (c + 1 < grid.size()) {
        if (!cell_alive(grid[c], grid[c + 1])) {
          ++c;
          continue;
        }
        size_t c2 = c;
        while (c2 + 1 < grid.size() && cell_alive(grid[c2], grid[c2 + 1])) ++c2;
        FullDiagram::Edge e;
        e.p = std::min(p, q);
        e.q = std::max(p, q);
        double lo = grid[c], hi = grid[c2];
        EndPoint e0 = end_at(lo, true), e1 = end_at(hi, false);
        if (e.p == p) {
          e.lo = lo;
          e.hi = hi;
          e.e0 = e0;
          e.e1 = e1;
        } else {
          // map onto the canonical J(min,max) parameterization
          e.lo = hi >= 1.0 ? -1.0 : -hi;
          e.hi = lo <= -1.0 ? 1.0 : -lo;
          e.e0 = e1;
          e.e1 = e0;
        }
        // Skip degenerate slivers (three-way near-ties).
        bool sliver = false;
        if (!e.e0.at_gamma && !e.e1.at_gamma &&
            dist(e.e0.pt, e.e1.pt) <= tol.rel * scale * 100)
          sliver = true;
        if (!sliver) out.edges.push_back(e);
        c = c2 + 1;
      }
    }
  }
  out.rebuild_vertices(1e-7 * scale);
  return out;
}

int LabelField::operator()(Point z) const {
  int best = -1;
  double bestd = 0;
  for (const auto& s : sites->sites) {
    double d = site_distance(sites->backend, s, z);
    bool better = best < 0 || (mode == Mode::Nearest ? d < bestd : d > bestd);
    if (better) {
      best = s.id;
      bestd = d;
    }
  }
  return best;
}

namespace {

std::string end_str(const EndPoint& e) {
  if (e.at_gamma) return "gamma(" + std::to_string(e.theta) + ")";
  return "(" + std::to_string(e.pt.x) + "," + std::to_string(e.pt.y) + ")";
}

std::string edge_str(const FullDiagram::Edge& e) {
  return "J(" + std::to_string(e.p) + "," + std::to_string(e.q) + ") " +
         end_str(e.e0) + ".." + end_str(e.e1);
}

bool ends_match(const EndPoint& a, const EndPoint& b, double tol, double ang_tol) {
  return same_endpoint(a, b, tol, ang_tol);
}

}  // namespace

CompareResult compare_diagrams(const FullDiagram& a, const FullDiagram& b,
                               double tol) {
  CompareResult res;
  double ang_tol = std::max(1e-9, tol);
  std::vector<bool> used(b.edges.size(), false);
  for (const auto& ea : a.edges) {
    bool matched = false;
    for (size_t j = 0; j < b.edges.size(); ++j) {
      if (used[j]) continue;
      const auto& eb = b.edges[j];
      if (ea.p != eb.p || ea.q != eb.q) continue;
      bool fwd = ends_match(ea.e0, eb.e0, tol, ang_tol) &&
                 ends_match(ea.e1, eb.e1, tol, ang_tol);
      if (fwd) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      res.isomorphic = false;
      res.mismatches.push_back("unmatched edge in A: " + edge_str(ea));
    }
  }
  for (size_t j = 0; j < b.edges.size(); ++j)
    if (!used[j]) {
      res.isomorphic = false;
      res.mismatches.push_back("unmatched edge in B: " + edge_str(b.edges[j]));
    }
  return res;
}

namespace {

// Distance from z to the curve piece [lo,hi] of edge e, with side label.
struct EdgeHit {
  double d = 1e300;
  int label = -1;
};

EdgeHit closest_on_edge(const FullDiagram& dg, const FullDiagram::Edge& e,
                        const BisectorCache& cache, Point z,
                        const Tolerance& tol) {
  const BisectorCurve& J = cache.get(e.p, e.q);
  // Coarse parameter scan plus local refinement; adequate for a diagnostic.
  const int kSteps = 48;
  double best_u = e.lo;
  double best_d = 1e300;
  for (int i = 0; i <= kSteps; ++i) {
    double u = e.lo + (e.hi - e.lo) * double(i) / kSteps;
    u = std::clamp(u, -1.0 + 1e-9, 1.0 - 1e-9);
    double d = dist(J.point(u), z);
    if (d < best_d) {
      best_d = d;
      best_u = u;
    }
  }
  double step = (e.hi - e.lo) / kSteps;
  for (int it = 0; it < 40; ++it) {
    step *= 0.5;
    for (double u : {best_u - step, best_u + step}) {
      u = std::clamp(u, std::max(e.lo, -1.0 + 1e-9), std::min(e.hi, 1.0 - 1e-9));
      double d = dist(J.point(u), z);
      if (d < best_d) {
        best_d = d;
        best_u = u;
      }
    }
  }
  EdgeHit hit;
  hit.d = best_d;
  Side s = dominance(dg.backend, dg.sites.by_id(e.p), dg.sites.by_id(e.q), z, tol);
  if (dg.mode == Mode::Farthest) s = flip(s);
  hit.label = s == Side::QSide ? e.q : e.p;
  return hit;
}

}  // namespace

SampleCheckResult sample_check(const FullDiagram& d, const LabelField& field,
                               int k, uint64_t seed) {
  SampleCheckResult res;
  if (d.sites.size() == 0) return res;
  Tolerance tol;
  Box box = d.sites.bounding_box();
  double margin = std::max(1.0, box.diag());
  box = {box.xmin - margin, box.ymin - margin, box.xmax + margin, box.ymax + margin};
  BisectorCache cache(d.sites, tol);
  SplitMix64 rng(seed);

  int grid = std::max(1, int(std::sqrt(double(k))));
  int total = 0;
  for (int gy = 0; gy < grid && total < k; ++gy) {
    for (int gx = 0; gx < grid && total < k; ++gx, ++total) {
      Point z{box.xmin + (box.xmax - box.xmin) * (gx + rng.uniform()) / grid,
              box.ymin + (box.ymax - box.ymin) * (gy + rng.uniform()) / grid};
      if (d.edges.empty()) {
        ++res.checked;
        continue;  // single region: trivially consistent
      }
      EdgeHit best;
      for (const auto& e : d.edges) {
        EdgeHit h = closest_on_edge(d, e, cache, z, tol);
        if (h.d < best.d) best = h;
      }
      if (best.d <= 1e-6 * margin) {
        ++res.skipped;
        continue;
      }
      ++res.checked;
      if (best.label != field(z)) res.witnesses.push_back(z);
    }
  }
  res.ratio = res.checked == 0
                  ? 1.0
                  : 1.0 - double(res.witnesses.size()) / double(res.checked);
  return res;
}

StructureReport check_structure(const InteriorView& tree, bool bounded,
                                double tol) {
  StructureReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  };

  if (tree.face_count != tree.core_count)
    fail("face count " + std::to_string(tree.face_count) + " != core count " +
         std::to_string(tree.core_count));

  // Cluster endpoints into graph vertices.
  struct Node {
    Point pt;
    int degree = 0;
  };
  std::vector<Node> nodes;
  auto node_of = [&](Point p) {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (dist(nodes[i].pt, p) <= tol) return int(i);
    nodes.push_back({p, 0});
    return int(nodes.size()) - 1;
  };
  std::vector<std::pair<int, int>> graph_edges;
  int gamma_leaves = 0;
  for (const auto& e : tree.edges) {
    int a = e.e0.at_gamma ? -1 : node_of(e.e0.pt);
    int b = e.e1.at_gamma ? -1 : node_of(e.e1.pt);
    if (a >= 0) nodes[size_t(a)].degree++;
    if (b >= 0) nodes[size_t(b)].degree++;
    if (a < 0) ++gamma_leaves;
    if (b < 0) ++gamma_leaves;
    graph_edges.push_back({a, b});
  }

  // Forest check: finite components must be acyclic.
  UnionFind uf(int(nodes.size()));
  for (auto [a, b] : graph_edges) {
    if (a < 0 || b < 0) continue;
    if (uf.find(a) == uf.find(b)) {
      fail("cycle among interior edges");
      break;
    }
    uf.unite(a, b);
  }

  // Leaves lie on the old region boundary vertices or at infinity.
  for (const auto& nd : nodes) {
    if (nd.degree != 1) continue;
    bool allowed = false;
    for (const auto& p : tree.allowed_leaves)
      if (dist(p, nd.pt) <= tol) allowed = true;
    if (!allowed)
      fail("leaf at (" + std::to_string(nd.pt.x) + "," + std::to_string(nd.pt.y) +
           ") not on the region boundary");
  }

  if (bounded) {
    if (gamma_leaves > 0) fail("bounded region but edges reach gamma");
    // A tree: edges = vertices - 1 within one component.
    if (!tree.edges.empty()) {
      int roots = 0;
      for (size_t i = 0; i < nodes.size(); ++i)
        if (uf.find(int(i)) == int(i)) ++roots;
      if (roots != 1) fail("bounded region interior is not connected");
    }
  }
  return rep;
}

}  // namespace avd
