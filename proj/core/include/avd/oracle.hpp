#pragma once

#include <functional>
#include <string>
#include <vector>

#include "avd/bisector.hpp"
#include "avd/geom.hpp"
#include "avd/sites.hpp"

namespace avd {

enum class Mode { Nearest, Farthest };

// A concrete Voronoi diagram clipped to the interior of Gamma: edges are
// maximal undominated pieces of bisectors, vertices their finite meeting
// points, unbounded ends are Gamma directions. Faces are implicit per site.
struct FullDiagram {
  BackendKind backend = BackendKind::Euclidean;
  Mode mode = Mode::Nearest;
  SiteSet sites;

  struct Edge {
    int p = -1, q = -1;   // carrier J(p,q) with p < q, canonical orientation
    double lo = 0, hi = 0;
    EndPoint e0{}, e1{};  // ends at lo / hi
  };
  struct Vertex {
    Point pt{};
    std::vector<int> edges;  // incident edge indices
  };

  std::vector<Edge> edges;
  std::vector<Vertex> vertices;  // derived by clustering edge endpoints

  void rebuild_vertices(double cluster_tol);
};

// O(n^3)-style reference construction: every bisector clipped against the
// dominance of every other site. Shares only the kernel with the algorithm
// modules.
FullDiagram brute_voronoi(const SiteSet& sites, Mode mode, const Tolerance& tol);

// Pointwise site label by direct distance comparison.
struct LabelField {
  const SiteSet* sites = nullptr;
  Mode mode = Mode::Nearest;
  int operator()(Point z) const;
};

struct CompareResult {
  bool isomorphic = true;
  std::vector<std::string> mismatches;
};

// Structural equality of two diagrams over the same site universe: edge sets
// match carrier-by-carrier with endpoints within `tol` (angular tolerance for
// Gamma ends derived from it).
CompareResult compare_diagrams(const FullDiagram& a, const FullDiagram& b,
                               double tol);

struct SampleCheckResult {
  double ratio = 1.0;
  int checked = 0, skipped = 0;
  std::vector<Point> witnesses;  // disagreeing sample points
};

// Draws k stratified points over the site neighborhood, compares the label
// implied by the diagram structure (side of the closest edge) with the direct
// distance argmin. Points within eps of an edge are skipped.
SampleCheckResult sample_check(const FullDiagram& d, const LabelField& field,
                               int k, uint64_t seed = 1);

struct StructureReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Interior of a deleted region: edge set plus where its leaves may lie.
struct InteriorView {
  std::vector<FullDiagram::Edge> edges;
  std::vector<Point> allowed_leaves;  // boundary vertices of the old region
  int face_count = 0;                 // regions carried by the structure
  int core_count = 0;
};

// Checks the forest/tree structure of a diagram computed inside a deleted
// region: forest, one face per core arc, leaves only at the old region's
// vertices or on Gamma, connected whenever the region was bounded.
StructureReport check_structure(const InteriorView& tree, bool bounded,
                                double tol);

}  // namespace avd
