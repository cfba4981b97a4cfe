#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <vector>

#include "rbffd/kdtree.hpp"
#include "rbffd/nodeset.hpp"
#include "rbffd/stencil.hpp"

namespace rbffd {

struct SparseOperator {
  int nrows = 0, ncols = 0;
  std::vector<Eigen::Triplet<double>> entries;

  // Compressed form; duplicate (row, col) pairs are summed.
  Eigen::SparseMatrix<double> to_sparse() const;
};

enum class CollocationMode {
  FittedFull,    // stencil sources = all nodes
  InteriorOnly,  // stencil sources = interior nodes only
};

// Shared stencil-source state (kd-tree, workspace) for building the three
// operators of one discretization. Column j of every operator refers to
// source node j: node j of the set in FittedFull mode, the j-th interior
// node in InteriorOnly mode.
class Assembler {
 public:
  Assembler(const NodeSet& nodes, CollocationMode mode,
            const StencilConfig& cfg);

  // One row per interior node: Laplacian stencil over the n nearest sources.
  SparseOperator laplacian();
  // One row per Dirichlet node. FittedFull: exact cardinal row selecting the
  // node's own value; InteriorOnly: evaluation (extrapolation) stencil.
  SparseOperator dirichlet();
  // One row per Neumann node: normal-derivative stencil; MissingNormal if a
  // Neumann node has no unit normal stored.
  SparseOperator neumann();

  int n_sources() const { return static_cast<int>(sources_.size()); }
  // Accumulated wall time spent inside stencil weight solves.
  double weight_seconds() const { return weight_seconds_; }

 private:
  SparseOperator stencil_rows(const std::vector<int>& eval_nodes,
                              OperatorKind::Tag tag);

  const NodeSet& nodes_;
  CollocationMode mode_;
  StencilConfig cfg_;
  std::vector<int> sources_;
  std::vector<double> sx_, sy_, sz_;
  KdTree tree_;
  StencilWorkspace ws_;
  std::vector<double> gx_, gy_, gz_;
  double weight_seconds_ = 0.0;
};

SparseOperator assemble_laplacian(const NodeSet& nodes, CollocationMode mode,
                                  const StencilConfig& cfg);
SparseOperator assemble_dirichlet(const NodeSet& nodes, CollocationMode mode,
                                  const StencilConfig& cfg);
SparseOperator assemble_neumann(const NodeSet& nodes, CollocationMode mode,
                                const StencilConfig& cfg);

// MatrixMarket coordinate text format.
void write_matrix_market(const SparseOperator& op, std::ostream& os);

}  // namespace rbffd
