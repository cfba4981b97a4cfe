#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rbffd/assembly.hpp"
#include "rbffd/nodegen.hpp"
#include "rbffd/solvers.hpp"
#include "support/oracles.hpp"

using namespace rbffd;

namespace {

constexpr double kPi = std::numbers::pi;

NodeSet problem_nodes(const ManufacturedProblem& prob, double h, bool fitted,
                      std::uint64_t seed = 3) {
  const Domain dom = prob.domain();
  NodeSet interior = generate_interior_nodes(dom, h, seed);
  NodeSet boundary = generate_boundary_nodes(dom, h, prob.split);
  if (fitted) interior = fit_nodes(dom, interior, boundary).nodes;
  return merge(interior, boundary);
}

ManufacturedProblem harmonic2d(BoundarySplit split) {
  ManufacturedProblem p;
  p.name = "harmonic2d";
  p.shape = Shape::UnitDisk;
  p.split = split;
  p.u = [](const double* x) {
    return x[0] * x[0] - x[1] * x[1] + 0.5 * x[0] * x[1] + 2.0 * x[0] - 1.0;
  };
  p.f = [](const double*) { return 0.0; };
  p.grad = [](const double* x, double* g) {
    g[0] = 2.0 * x[0] + 0.5 * x[1] + 2.0;
    g[1] = -2.0 * x[1] + 0.5 * x[0];
    g[2] = 0.0;
  };
  return p;
}

ManufacturedProblem harmonic3d() {
  ManufacturedProblem p;
  p.name = "harmonic3d";
  p.shape = Shape::UnitBall;
  p.split = BoundarySplit::z_split();
  p.u = [](const double* x) {
    return x[0] * x[0] + x[1] * x[1] - 2.0 * x[2] * x[2] + x[0];
  };
  p.f = [](const double*) { return 0.0; };
  p.grad = [](const double* x, double* g) {
    g[0] = 2.0 * x[0] + 1.0;
    g[1] = 2.0 * x[1];
    g[2] = -4.0 * x[2];
  };
  return p;
}

Eigen::MatrixXd dense_of(const SparseOperator& op) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(op.nrows, op.ncols);
  for (const auto& t : op.entries) out(t.row(), t.col()) += t.value();
  return out;
}

}  // namespace

TEST_CASE("quadratic solutions are recovered to round-off") {
  const ManufacturedProblem mixed =
      harmonic2d(BoundarySplit::theta_interval(kPi, 2 * kPi));
  const ManufacturedProblem dirichlet =
      harmonic2d(BoundarySplit::all_dirichlet());
  StencilConfig cfg{2, 2, 2.5, 1};

  NodeSet fitted = problem_nodes(dirichlet, 0.2, true);
  CHECK(solve_collocation(dirichlet, fitted, cfg).rel_l2_error <= 1e-9);
  CHECK(solve_lm1(dirichlet, fitted, CollocationMode::FittedFull, cfg)
            .rel_l2_error <= 1e-9);
  CHECK(solve_lm2(dirichlet, fitted, CollocationMode::FittedFull, cfg)
            .rel_l2_error <= 1e-9);

  NodeSet unfitted = problem_nodes(mixed, 0.2, false);
  CHECK(solve_lm1(mixed, unfitted, CollocationMode::InteriorOnly, cfg)
            .rel_l2_error <= 1e-9);
  CHECK(solve_lm2(mixed, unfitted, CollocationMode::InteriorOnly, cfg)
            .rel_l2_error <= 1e-9);
}

TEST_CASE("3-d quadratic solutions are recovered to round-off") {
  const ManufacturedProblem prob = harmonic3d();
  StencilConfig cfg{3, 2, 2.0, 1};
  NodeSet nodes = problem_nodes(prob, 0.35, false);
  CHECK(solve_lm2(prob, nodes, CollocationMode::InteriorOnly, cfg)
            .rel_l2_error <= 1e-9);
  NodeSet fitted = problem_nodes(prob, 0.35, true);
  CHECK(solve_lm1(prob, fitted, CollocationMode::FittedFull, cfg)
            .rel_l2_error <= 1e-9);
}

TEST_CASE("report bookkeeping matches the node set") {
  const ManufacturedProblem prob = problem_from_name("tp1");
  NodeSet nodes = problem_nodes(prob, 0.25, true);
  StencilConfig cfg{2, 3, 2.0, 1};

  SolveReport lm = solve_lm2(prob, nodes, CollocationMode::FittedFull, cfg);
  CHECK(lm.n_interior == int(nodes.n_interior()));
  CHECK(lm.n_total == int(nodes.size()));
  CHECK(lm.u.size() == Eigen::Index(nodes.size()));
  CHECK(lm.lambda.size() ==
        Eigen::Index(nodes.n_dirichlet() + nodes.n_neumann()));
  CHECK(lm.linear_residual <= 1e-8);
  CHECK(lm.constraint_violation <= 1e-9);
  CHECK(lm.t_weights > 0.0);
  CHECK(lm.t_solve > 0.0);

  SolveReport in = solve_lm1(prob, nodes, CollocationMode::InteriorOnly, cfg);
  CHECK(in.u.size() == Eigen::Index(nodes.n_interior()));

  SolveReport c = solve_collocation(prob, nodes, cfg);
  CHECK(c.lambda.size() == 0);
  CHECK(c.constraint_violation == 0.0);
  CHECK(c.u.size() == Eigen::Index(nodes.size()));
}

TEST_CASE("saddle formulation on fitted sets equals square collocation") {
  const ManufacturedProblem prob = problem_from_name("tp1");
  NodeSet nodes = problem_nodes(prob, 0.12, true);
  StencilConfig cfg{2, 3, 2.0, 1};
  SolveReport c = solve_collocation(prob, nodes, cfg);
  SolveReport lm2 = solve_lm2(prob, nodes, CollocationMode::FittedFull, cfg);
  CHECK((lm2.u - c.u).norm() <= 1e-10 * c.u.norm());
}

TEST_CASE("interior-only solvers match the dense oracles") {
  const ManufacturedProblem prob = problem_from_name("tp1");
  Domain dom = prob.domain();
  NodeSet interior = generate_interior_nodes(dom, 0.3, 5);
  NodeSet boundary = generate_boundary_nodes(
      dom, 0.3, BoundarySplit::theta_interval(kPi, 2 * kPi));
  NodeSet nodes = merge(interior, boundary);
  StencilConfig cfg{2, 2, 2.0, 1};

  const Eigen::MatrixXd L =
      dense_of(assemble_laplacian(nodes, CollocationMode::InteriorOnly, cfg));
  const Eigen::MatrixXd BD =
      dense_of(assemble_dirichlet(nodes, CollocationMode::InteriorOnly, cfg));
  const Eigen::MatrixXd BN =
      dense_of(assemble_neumann(nodes, CollocationMode::InteriorOnly, cfg));
  Eigen::MatrixXd C(BD.rows() + BN.rows(), BD.cols());
  C << BD, BN;

  Eigen::VectorXd b(L.rows());
  const auto inodes = nodes.indices(NodeRole::Interior);
  double x[3];
  for (std::size_t i = 0; i < inodes.size(); ++i) {
    nodes.coords(std::size_t(inodes[i]), x);
    b[Eigen::Index(i)] = prob.f(x);
  }
  Eigen::VectorXd c(C.rows());
  Eigen::Index row = 0;
  for (int idx : nodes.indices(NodeRole::Dirichlet)) {
    nodes.coords(std::size_t(idx), x);
    c[row++] = prob.g(x);
  }
  for (int idx : nodes.indices(NodeRole::Neumann)) {
    nodes.coords(std::size_t(idx), x);
    double n[3] = {nodes.normals[2 * std::size_t(idx)],
                   nodes.normals[2 * std::size_t(idx) + 1], 0.0};
    c[row++] = prob.h(x, n);
  }

  const oracle::KktSolution lsq = oracle::constrained_lsq(L, C, b, c);
  SolveReport lm1 = solve_lm1(prob, nodes, CollocationMode::InteriorOnly, cfg);
  CHECK((lm1.u - lsq.x).norm() <= 1e-8 * (1.0 + lsq.x.norm()));
  CHECK((lm1.lambda - lsq.lambda).norm() <=
        1e-8 * (1.0 + lsq.lambda.norm()));

  const oracle::KktSolution sad = oracle::saddle(L, C, b, c);
  SolveReport lm2 = solve_lm2(prob, nodes, CollocationMode::InteriorOnly, cfg);
  CHECK((lm2.u - sad.x).norm() <= 1e-8 * (1.0 + sad.x.norm()));
  CHECK((lm2.lambda - sad.lambda).norm() <= 1e-8 * (1.0 + sad.lambda.norm()));
}

TEST_CASE("boundary constraints hold at the solve tolerance") {
  for (const char* name : {"tp1", "tp2"}) {
    const ManufacturedProblem prob = problem_from_name(name);
    NodeSet nodes = problem_nodes(prob, name[2] == '1' ? 0.07 : 0.08, false);
    StencilConfig cfg{2, 3, 2.0, 1};
    for (auto solver : {solve_lm1, solve_lm2}) {
      SolveReport rep = solver(prob, nodes, CollocationMode::InteriorOnly, cfg);
      CHECK(rep.constraint_violation <= 1e-8);
      CHECK(rep.rel_l2_error < 0.5);
    }
  }
}
