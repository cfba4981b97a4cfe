#include "rbffd/assembly.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "rbffd/errors.hpp"

namespace rbffd {

namespace {

std::vector<int> source_indices(const NodeSet& nodes, CollocationMode mode) {
  if (mode == CollocationMode::InteriorOnly)
    return nodes.indices(NodeRole::Interior);
  std::vector<int> all(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) all[i] = static_cast<int>(i);
  return all;
}

std::vector<double> gather(const std::vector<double>& v,
                           const std::vector<int>& idx) {
  std::vector<double> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

}  // namespace

Eigen::SparseMatrix<double> SparseOperator::to_sparse() const {
  Eigen::SparseMatrix<double> m(nrows, ncols);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

Assembler::Assembler(const NodeSet& nodes, CollocationMode mode,
                     const StencilConfig& cfg)
    : nodes_(nodes),
      mode_(mode),
      cfg_(cfg),
      sources_(source_indices(nodes, mode)),
      sx_(gather(nodes.xs, sources_)),
      sy_(gather(nodes.ys, sources_)),
      sz_(nodes.dim == 3 ? gather(nodes.zs, sources_) : std::vector<double>{}),
      tree_(nodes.dim, sx_, sy_, sz_) {
  if (cfg_.d != nodes.dim)
    throw std::invalid_argument("assembler: config dimension mismatch");
}

SparseOperator Assembler::stencil_rows(const std::vector<int>& eval_nodes,
                                       OperatorKind::Tag tag) {
  SparseOperator op;
  op.nrows = static_cast<int>(eval_nodes.size());
  op.ncols = n_sources();
  const int n = cfg_.n();
  if (n > n_sources())
    throw std::invalid_argument("assembler: stencil size exceeds source count");
  op.entries.reserve(eval_nodes.size() * static_cast<std::size_t>(n));

  gx_.resize(n);
  gy_.resize(n);
  gz_.resize(n);
  const int d = nodes_.dim;
  for (int row = 0; row < op.nrows; ++row) {
    const int node = eval_nodes[row];
    double p[3];
    nodes_.coords(node, p);
    OperatorKind kind = OperatorKind::evaluation();
    if (tag == OperatorKind::Tag::Laplacian) {
      kind = OperatorKind::laplacian();
    } else if (tag == OperatorKind::Tag::NormalDerivative) {
      const double* nrm = nodes_.normals.data() + node * d;
      double len = 0.0;
      for (int a = 0; a < d; ++a) len += nrm[a] * nrm[a];
      if (!(std::abs(std::sqrt(len) - 1.0) < 1e-8))
        throw MissingNormal("node " + std::to_string(node) +
                            " lacks a unit normal");
      kind = OperatorKind::normal_derivative(nrm, d);
    }

    const std::vector<int> nb = tree_.knn(p, n);
    for (int t = 0; t < n; ++t) {
      gx_[t] = sx_[nb[t]];
      gy_[t] = sy_[nb[t]];
      if (d == 3) gz_[t] = sz_[nb[t]];
    }
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const std::vector<double>& w =
          stencil_weights(p, gx_.data(), gy_.data(),
                          d == 3 ? gz_.data() : nullptr, n, kind, cfg_, ws_);
      weight_seconds_ +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      for (int t = 0; t < n; ++t) op.entries.emplace_back(row, nb[t], w[t]);
    } catch (const SingularStencil& e) {
      throw SingularStencil(std::string(e.what()) + " (evaluation node " +
                                std::to_string(node) + ")",
                            node);
    }
  }
  return op;
}

SparseOperator Assembler::laplacian() {
  return stencil_rows(nodes_.indices(NodeRole::Interior),
                      OperatorKind::Tag::Laplacian);
}

SparseOperator Assembler::dirichlet() {
  const std::vector<int> dnodes = nodes_.indices(NodeRole::Dirichlet);
  if (mode_ == CollocationMode::InteriorOnly)
    return stencil_rows(dnodes, OperatorKind::Tag::Evaluation);
  // Sources are all nodes, so evaluation at a boundary node is the exact
  // cardinal row.
  SparseOperator op;
  op.nrows = static_cast<int>(dnodes.size());
  op.ncols = n_sources();
  for (int row = 0; row < op.nrows; ++row)
    op.entries.emplace_back(row, dnodes[row], 1.0);
  return op;
}

SparseOperator Assembler::neumann() {
  return stencil_rows(nodes_.indices(NodeRole::Neumann),
                      OperatorKind::Tag::NormalDerivative);
}

SparseOperator assemble_laplacian(const NodeSet& nodes, CollocationMode mode,
                                  const StencilConfig& cfg) {
  return Assembler(nodes, mode, cfg).laplacian();
}

SparseOperator assemble_dirichlet(const NodeSet& nodes, CollocationMode mode,
                                  const StencilConfig& cfg) {
  return Assembler(nodes, mode, cfg).dirichlet();
}

SparseOperator assemble_neumann(const NodeSet& nodes, CollocationMode mode,
                                const StencilConfig& cfg) {
  return Assembler(nodes, mode, cfg).neumann();
}

void write_matrix_market(const SparseOperator& op, std::ostream& os) {
  const Eigen::SparseMatrix<double> m = op.to_sparse();
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  char buf[64];
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n",
                    static_cast<long>(it.row() + 1),
                    static_cast<long>(it.col() + 1), it.value());
      os << buf;
    }
}

}  // namespace rbffd
