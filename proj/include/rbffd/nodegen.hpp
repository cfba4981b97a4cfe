#pragma once

#include <cstdint>

#include "rbffd/domain.hpp"
#include "rbffd/nodeset.hpp"

namespace rbffd {

// Boundary-condition labeling rule for generated boundary nodes.
struct BoundarySplit {
  enum class Kind { AllDirichlet, ThetaInterval, ZSplit } kind =
      Kind::AllDirichlet;
  // Neumann where theta (normalized to [0, 2pi)) falls in [lo, hi).
  double theta_lo = 0.0, theta_hi = 0.0;

  static BoundarySplit all_dirichlet() { return {}; }
  static BoundarySplit theta_interval(double lo, double hi) {
    return {Kind::ThetaInterval, lo, hi};
  }
  // Dirichlet where z >= 0, Neumann below.
  static BoundarySplit z_split() { return {Kind::ZSplit, 0.0, 0.0}; }
};

// Quasi-uniform interior points: jittered grid over the covering box, thinned
// to a 0.5h separation, filtered to strict interior. Deterministic per seed.
NodeSet generate_interior_nodes(const Domain& dom, double h,
                                std::uint64_t seed);

// Boundary points with ~h spacing along the boundary, labeled by the split
// rule; Neumann nodes carry unit outward normals.
NodeSet generate_boundary_nodes(const Domain& dom, double h,
                                const BoundarySplit& split);

struct FitResult {
  NodeSet nodes;  // interior nodes after repulsion (roles preserved)
  bool converged = true;
  int iterations_used = 0;
};

// Pushes interior nodes off the boundary nodes: nodes whose nearest boundary
// node is closer than 0.75h take 0.2h steps away from nearby boundary nodes
// (support radius 2h) until clear; moves that would leave the domain are
// skipped; boundary nodes never move. converged is false if some node is
// still closer than 0.5h after `iterations` passes.
FitResult fit_nodes(const Domain& dom, const NodeSet& interior,
                    const NodeSet& boundary, int iterations = 50);

// (measure / n_interior)^(1/d): spacing for a target count, and the
// representative h reported for a realized count.
double representative_spacing(const Domain& dom, int n_interior);

}  // namespace rbffd
