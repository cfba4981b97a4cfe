#pragma once

#include <Eigen/Sparse>

namespace rbffd {

struct KktResult {
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;
  double linear_residual = 0.0;  // relative, of the assembled global system
};

// Direct sparse solve of M z = rhs with symmetric max-norm equilibration
// (D M D) y = D rhs, z = D y. Throws SingularGlobalSystem if factorization
// fails or the unscaled relative residual exceeds 1e-8.
Eigen::VectorXd solve_equilibrated(const Eigen::SparseMatrix<double>& M,
                                   const Eigen::VectorXd& rhs,
                                   double* residual_out = nullptr);

// minimize 1/2 ||A x - b||^2 subject to C x = c, via the normal-equation KKT
// block system [[A^T A, C^T], [C, 0]] [x; lambda] = [A^T b; c].
KktResult solve_kkt_normal(const Eigen::SparseMatrix<double>& A,
                           const Eigen::VectorXd& b,
                           const Eigen::SparseMatrix<double>& C,
                           const Eigen::VectorXd& c);

// Direct saddle system [[A, C^T], [C, 0]] [x; lambda] = [b; c]; for symmetric
// negative definite A this minimizes 1/2 (Ax-b)^T (-A)^{-1} (Ax-b) under the
// constraint.
KktResult solve_kkt_saddle(const Eigen::SparseMatrix<double>& A,
                           const Eigen::VectorXd& b,
                           const Eigen::SparseMatrix<double>& C,
                           const Eigen::VectorXd& c);

}  // namespace rbffd
