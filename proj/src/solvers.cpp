#include "rbffd/solvers.hpp"

#include <chrono>
#include <vector>

#include "rbffd/errors.hpp"
#include "rbffd/kkt.hpp"

namespace rbffd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::VectorXd sample(const NodeSet& nodes, const std::vector<int>& idx,
                       const std::function<double(const double*)>& fn) {
  Eigen::VectorXd v(idx.size());
  double p[3];
  for (std::size_t i = 0; i < idx.size(); ++i) {
    nodes.coords(idx[i], p);
    v(i) = fn(p);
  }
  return v;
}

// Stacked [g; h] boundary data over Dirichlet then Neumann nodes.
Eigen::VectorXd boundary_data(const ManufacturedProblem& prob,
                              const NodeSet& nodes,
                              const std::vector<int>& dir,
                              const std::vector<int>& neu) {
  Eigen::VectorXd c(dir.size() + neu.size());
  double p[3];
  for (std::size_t i = 0; i < dir.size(); ++i) {
    nodes.coords(dir[i], p);
    c(i) = prob.g(p);
  }
  const int d = nodes.dim;
  for (std::size_t i = 0; i < neu.size(); ++i) {
    nodes.coords(neu[i], p);
    c(dir.size() + i) = prob.h(p, nodes.normals.data() + neu[i] * d);
  }
  return c;
}

Eigen::SparseMatrix<double> vstack(const Eigen::SparseMatrix<double>& top,
                                   const Eigen::SparseMatrix<double>& bottom) {
  Eigen::SparseMatrix<double> out(top.rows() + bottom.rows(), top.cols());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(top.nonZeros() + bottom.nonZeros());
  for (int k = 0; k < top.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(top, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < bottom.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(bottom, k); it; ++it)
      trip.emplace_back(top.rows() + it.row(), it.col(), it.value());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

NodeSet relabel_all_interior(const NodeSet& nodes) {
  NodeSet out = nodes;
  for (auto& r : out.roles) r = NodeRole::Interior;
  return out;
}

SolveReport solve_lm(const ManufacturedProblem& prob, const NodeSet& nodes,
                     CollocationMode mode, const StencilConfig& cfg,
                     bool saddle) {
  SolveReport rep;
  rep.n_total = static_cast<int>(nodes.size());
  rep.n_interior = static_cast<int>(nodes.n_interior());

  const std::vector<int> dir = nodes.indices(NodeRole::Dirichlet);
  const std::vector<int> neu = nodes.indices(NodeRole::Neumann);

  auto t0 = Clock::now();
  Eigen::SparseMatrix<double> L, C;
  std::vector<int> colloc;  // nodes carrying the solution vector
  double weight_s = 0.0;
  if (mode == CollocationMode::FittedFull) {
    const NodeSet relabeled = relabel_all_interior(nodes);
    Assembler lap_asm(relabeled, CollocationMode::FittedFull, cfg);
    L = lap_asm.laplacian().to_sparse();
    Assembler bc_asm(nodes, CollocationMode::FittedFull, cfg);
    C = vstack(bc_asm.dirichlet().to_sparse(), bc_asm.neumann().to_sparse());
    weight_s = lap_asm.weight_seconds() + bc_asm.weight_seconds();
    colloc = relabeled.indices(NodeRole::Interior);
  } else {
    Assembler asmb(nodes, CollocationMode::InteriorOnly, cfg);
    L = asmb.laplacian().to_sparse();
    C = vstack(asmb.dirichlet().to_sparse(), asmb.neumann().to_sparse());
    weight_s = asmb.weight_seconds();
    colloc = nodes.indices(NodeRole::Interior);
  }
  const Eigen::VectorXd f = sample(nodes, colloc, prob.f);
  const Eigen::VectorXd c = boundary_data(prob, nodes, dir, neu);
  rep.t_weights = weight_s;
  rep.t_assembly = seconds_since(t0) - weight_s;

  t0 = Clock::now();
  const KktResult kkt = saddle ? solve_kkt_saddle(L, f, C, c)
                               : solve_kkt_normal(L, f, C, c);
  rep.t_solve = seconds_since(t0);

  rep.u = kkt.x;
  rep.lambda = kkt.lambda;
  rep.linear_residual = kkt.linear_residual;
  if (C.rows() > 0)
    rep.constraint_violation =
        (C * kkt.x - c).cwiseAbs().maxCoeff();

  const Eigen::VectorXd exact = sample(nodes, colloc, prob.u);
  rep.rel_l2_error = relative_l2_error(rep.u, exact);
  return rep;
}

}  // namespace

SolveReport solve_collocation(const ManufacturedProblem& prob,
                              const NodeSet& nodes, const StencilConfig& cfg) {
  SolveReport rep;
  rep.n_total = static_cast<int>(nodes.size());
  rep.n_interior = static_cast<int>(nodes.n_interior());

  const std::vector<int> inter = nodes.indices(NodeRole::Interior);
  const std::vector<int> dir = nodes.indices(NodeRole::Dirichlet);
  const std::vector<int> neu = nodes.indices(NodeRole::Neumann);

  const auto t0 = Clock::now();
  Assembler asmb(nodes, CollocationMode::FittedFull, cfg);
  const Eigen::SparseMatrix<double> M =
      vstack(asmb.laplacian().to_sparse(),
             vstack(asmb.dirichlet().to_sparse(), asmb.neumann().to_sparse()));
  rep.t_weights = asmb.weight_seconds();
  rep.t_assembly = seconds_since(t0) - rep.t_weights;

  Eigen::VectorXd rhs(nodes.size());
  rhs.head(inter.size()) = sample(nodes, inter, prob.f);
  rhs.segment(inter.size(), dir.size() + neu.size()) =
      boundary_data(prob, nodes, dir, neu);

  const auto t1 = Clock::now();
  rep.u = solve_equilibrated(M, rhs, &rep.linear_residual);
  rep.t_solve = seconds_since(t1);

  std::vector<int> all(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) all[i] = static_cast<int>(i);
  rep.rel_l2_error = relative_l2_error(rep.u, sample(nodes, all, prob.u));
  return rep;
}

SolveReport solve_lm1(const ManufacturedProblem& prob, const NodeSet& nodes,
                      CollocationMode mode, const StencilConfig& cfg) {
  return solve_lm(prob, nodes, mode, cfg, /*saddle=*/false);
}

SolveReport solve_lm2(const ManufacturedProblem& prob, const NodeSet& nodes,
                      CollocationMode mode, const StencilConfig& cfg) {
  return solve_lm(prob, nodes, mode, cfg, /*saddle=*/true);
}

}  // namespace rbffd
