#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace rbffd {

// Monomials of total degree <= m in d variables, C(d+m, m) of them.
int monomial_count(int d, int m);
// Exponent triples ordered by total degree, then by descending leading
// powers; the z exponent is 0 in 2-D.
std::vector<std::array<int, 3>> monomial_exponents(int d, int m);

struct OperatorKind {
  enum class Tag { Evaluation, Laplacian, NormalDerivative };
  Tag tag = Tag::Evaluation;
  std::array<double, 3> normal{0.0, 0.0, 0.0};

  static OperatorKind evaluation() { return {Tag::Evaluation}; }
  static OperatorKind laplacian() { return {Tag::Laplacian}; }
  static OperatorKind normal_derivative(const double* n, int d);

  // Differential order: weights scale by spacing^-order.
  int order() const {
    switch (tag) {
      case Tag::Evaluation:
        return 0;
      case Tag::NormalDerivative:
        return 1;
      case Tag::Laplacian:
        return 2;
    }
    return 0;
  }
};

struct StencilConfig {
  int d = 2;
  int m = 2;
  double ratio = 2.0;
  int k = 1;  // phi(r) = r^(2k+1)

  int ell() const { return monomial_count(d, m); }
  int n() const;
};

// Applies the operator to phi(||x - center||) = r^(2k+1) at the eval point.
double phs_apply(const OperatorKind& kind, const double* center,
                 const double* eval, int k, int d);

// Applies the operator to the monomial with the given exponents at x.
double monomial_apply(const OperatorKind& kind, const std::array<int, 3>& e,
                      const double* x, int d);

// Scratch buffers reused across stencil solves.
struct StencilWorkspace {
  Eigen::MatrixXd M;
  Eigen::VectorXd rhs;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  std::vector<double> sx, sy, sz, r2, phi;
  std::vector<double> weights;
};

// RBF-FD weights at `eval` over n neighbor points (SoA, nz may be null in
// 2-D): the (n + l) polyharmonic/monomial saddle system is solved in shifted
// coordinates scaled by the stencil radius, the monomial multipliers are
// discarded and the weights are rescaled back. Throws SingularStencil when
// n < l or the system's reciprocal condition estimate falls under 1e-14.
const std::vector<double>& stencil_weights(const double* eval,
                                           const double* nx, const double* ny,
                                           const double* nz, int n,
                                           const OperatorKind& kind,
                                           const StencilConfig& cfg,
                                           StencilWorkspace& ws);

std::vector<double> stencil_weights(const double* eval, const double* nx,
                                    const double* ny, const double* nz, int n,
                                    const OperatorKind& kind,
                                    const StencilConfig& cfg);

}  // namespace rbffd
