#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace rbffd {

enum class NodeRole : char {
  Interior = 'I',
  Dirichlet = 'D',
  Neumann = 'N',
};

// Scattered nodes in SoA layout. zs is used only when dim == 3. normals holds
// dim entries per node and is zero except on Neumann nodes, where it is the
// unit outward normal.
struct NodeSet {
  int dim = 2;
  std::vector<double> xs, ys, zs;
  std::vector<NodeRole> roles;
  std::vector<double> normals;
  double h = 0.0;

  std::size_t size() const { return xs.size(); }
  std::size_t count(NodeRole r) const;
  std::size_t n_interior() const { return count(NodeRole::Interior); }
  std::size_t n_dirichlet() const { return count(NodeRole::Dirichlet); }
  std::size_t n_neumann() const { return count(NodeRole::Neumann); }

  void coords(std::size_t i, double* out) const {
    out[0] = xs[i];
    out[1] = ys[i];
    out[2] = dim == 3 ? zs[i] : 0.0;
  }
  void push(const double* x, NodeRole role, const double* normal = nullptr);

  // Indices of nodes with the given role, in stored order.
  std::vector<int> indices(NodeRole r) const;
};

// Concatenates two sets over the same domain (a's nodes first).
NodeSet merge(const NodeSet& a, const NodeSet& b);

// Header "x,y[,z],role,nx,ny[,nz]"; role one of I/D/N; normal fields blank
// for non-Neumann rows.
void write_nodeset_csv(const NodeSet& ns, std::ostream& os);
void write_nodeset_csv(const NodeSet& ns, const std::string& path);
NodeSet read_nodeset_csv(std::istream& is);
NodeSet read_nodeset_csv(const std::string& path);

}  // namespace rbffd
