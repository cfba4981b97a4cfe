#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "rbffd/domain.hpp"
#include "rbffd/nodegen.hpp"

namespace rbffd {

// Manufactured Poisson problem: exact solution u with analytically derived
// source f = lap(u), Dirichlet data g = u and Neumann data h = n . grad(u).
struct ManufacturedProblem {
  std::string name;
  Shape shape = Shape::UnitDisk;
  BoundarySplit split;
  std::function<double(const double*)> u;
  std::function<double(const double*)> f;
  std::function<void(const double*, double*)> grad;

  int dim() const { return shape == Shape::UnitBall ? 3 : 2; }
  Domain domain() const { return Domain{shape}; }
  double g(const double* x) const { return u(x); }
  double h(const double* x, const double* n) const {
    double gr[3] = {0.0, 0.0, 0.0};
    grad(x, gr);
    double dot = 0.0;
    for (int a = 0; a < dim(); ++a) dot += gr[a] * n[a];
    return dot;
  }
};

// sin(10(x+y)) on the unit disk, all Dirichlet.
ManufacturedProblem tp1();
// Franke-type solution on the butterfly domain, mixed Dirichlet/Neumann.
ManufacturedProblem tp2();
// sin(pi x) + cos(pi y) + sin(pi z) on the unit ball, all Dirichlet.
ManufacturedProblem tp3();
// Same solution, Dirichlet on z >= 0, Neumann below.
ManufacturedProblem tp4();

ManufacturedProblem problem_from_name(const std::string& name);

// ||num - exact||_2 / ||exact||_2; DegenerateNorm if the exact norm is zero.
double relative_l2_error(const Eigen::VectorXd& num,
                         const Eigen::VectorXd& exact);

}  // namespace rbffd
