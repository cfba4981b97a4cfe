#pragma once

#include <Eigen/Dense>

#include "rbffd/assembly.hpp"
#include "rbffd/nodeset.hpp"
#include "rbffd/problems.hpp"
#include "rbffd/stencil.hpp"

namespace rbffd {

struct SolveReport {
  // Solution samples: on all nodes for collocation and fitted-full LM runs,
  // on the interior nodes for interior-only LM runs.
  Eigen::VectorXd u;
  Eigen::VectorXd lambda;  // empty for collocation
  double linear_residual = 0.0;
  double rel_l2_error = 0.0;
  // ||C u - c||_inf over the boundary-condition constraint rows (0 for
  // collocation).
  double constraint_violation = 0.0;
  double t_weights = 0.0;   // stencil weight solves
  double t_assembly = 0.0;  // operator assembly minus weight solves
  double t_solve = 0.0;     // global system build + factorization + solve
  int n_interior = 0;
  int n_total = 0;
};

// Traditional square collocation [L; B_D; B_N] u = [f; g; h] on a
// boundary-fitted set.
SolveReport solve_collocation(const ManufacturedProblem& prob,
                              const NodeSet& nodes, const StencilConfig& cfg);

// Constrained least squares min ||L u - f|| s.t. boundary rows, via the
// normal-equation KKT system. FittedFull mode collocates the Laplacian on
// all nodes (boundary nodes relabeled interior); InteriorOnly collocates on
// interior nodes only, with extrapolation boundary rows.
SolveReport solve_lm1(const ManufacturedProblem& prob, const NodeSet& nodes,
                      CollocationMode mode, const StencilConfig& cfg);

// Same constraints through the direct saddle system with L itself in the
// (1,1) block.
SolveReport solve_lm2(const ManufacturedProblem& prob, const NodeSet& nodes,
                      CollocationMode mode, const StencilConfig& cfg);

}  // namespace rbffd
