#pragma once

#include <string>
#include <vector>

#include "avd/diagram.hpp"
#include "avd/oracle.hpp"

namespace avd {

// One Voronoi edge of the deleted region's boundary, oriented ccw around the
// region (increasing parameter of J(center, site)). For farthest builds the
// arcs live on Gamma and lo/hi are angles (hi = lo + span direction).
struct CoreArc {
  int site = -1;
  double lo = 0, hi = 0;
  EndPoint src{}, dst{};
};

struct CoreArcSequence {
  int center = -1;
  Mode sense = Mode::Nearest;
  std::vector<CoreArc> arcs;  // cyclic, ccw
  int h() const { return int(arcs.size()); }
};

// Voronoi edges of the region of `center`, as a cyclic ccw sequence.
// Throws Error(EmptyRegion) when the site has no edges in the diagram.
CoreArcSequence extract_core_sequence(const FullDiagram& v, int center,
                                      const Tolerance& tol);

// Cyclic Davenport-Schinzel order-2 test: no abab pattern in site labels.
bool is_ds_order2(const std::vector<int>& labels);

// A boundary-curve element decoupled from any diagram.
struct BoundaryArcDesc {
  bool gamma_arc = false;  // opening (no site)
  int site = -1;
  double t0 = 0, t1 = 0;  // curve interval, or gamma start+span
  EndPoint src{}, dst{};
  std::vector<int> cores;
  EdgeId edge = kNone;  // backlink when extracted from a diagram
};

using BoundaryCurveView = std::vector<BoundaryArcDesc>;

// Extract the (fine) boundary curve of a diagram, ccw.
BoundaryCurveView boundary_view(const VoronoiLikeDiagram& v);

// Brute-force envelope of the center-related bisectors over `others`,
// clipped to the Gamma disk: the boundary of the center's region in the
// diagram of {center} + others. Validator/test path only.
BoundaryCurveView envelope(const BuildContext& ctx, const std::vector<int>& others);

// Definition check for two consecutive non-gamma arcs meeting at a point:
// in the three-site diagram {center, site(a), site(b)} the two arcs must
// locally induce the boundary edges at their shared vertex.
bool validate_monotone_pair(const BuildContext& ctx, const BoundaryArcDesc& a,
                            const BoundaryArcDesc& b);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(std::string v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

// All boundary-curve invariants: closed, consecutive arcs on different
// bisectors, monotone pairs, original arcs cover their cores.
ValidationReport validate_boundary_curve(const BuildContext& ctx,
                                         const BoundaryCurveView& curve);

// Voronoi-like diagram invariants: region-per-arc bijection, monotone region
// boundaries, domain coverage by stratified sampling, vertex degrees, and
// R(arc) inside the center's dominance versus the arc site.
ValidationReport validate_vld(const VoronoiLikeDiagram& v, int samples = 2048,
                              uint64_t seed = 1);

// Cycle-label checks on the constructed diagram: no inverse cycle for any
// site, and no dominance cycle of a boundary site inside the closed domain.
ValidationReport validate_cycles(const VoronoiLikeDiagram& v);

}  // namespace avd
