#include "rbffd/kkt.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef RBFFD_HAVE_UMFPACK
#include <umfpack.h>
#endif

#include "rbffd/errors.hpp"

namespace rbffd {

namespace {

// Multifrontal factorization when available and its own symbolic-phase
// estimate fits a fixed memory budget; otherwise the leaner left-looking
// factorization. The fixed budget keeps the backend choice a pure function
// of the matrix, so repeated runs pick the same path.
class DirectFactorization {
 public:
  DirectFactorization() = default;
  DirectFactorization(const DirectFactorization&) = delete;
  DirectFactorization& operator=(const DirectFactorization&) = delete;

  ~DirectFactorization() {
#ifdef RBFFD_HAVE_UMFPACK
    if (numeric_) umfpack_di_free_numeric(&numeric_);
#endif
  }

  bool factorize(const Eigen::SparseMatrix<double>& M) {
#ifdef RBFFD_HAVE_UMFPACK
    mat_ = &M;
    const int n = static_cast<int>(M.rows());
    double control[UMFPACK_CONTROL];
    double info[UMFPACK_INFO];
    umfpack_di_defaults(control);
    void* symbolic = nullptr;
    int status =
        umfpack_di_symbolic(n, n, M.outerIndexPtr(), M.innerIndexPtr(),
                            M.valuePtr(), &symbolic, control, info);
    if (status == UMFPACK_OK) {
      const double estimated_bytes =
          info[UMFPACK_PEAK_MEMORY_ESTIMATE] * info[UMFPACK_SIZE_OF_UNIT];
      if (estimated_bytes <= kMemoryBudgetBytes) {
        status = umfpack_di_numeric(M.outerIndexPtr(), M.innerIndexPtr(),
                                    M.valuePtr(), symbolic, &numeric_,
                                    control, info);
        if (status == UMFPACK_OK) {
          umfpack_di_free_symbolic(&symbolic);
          return true;
        }
        if (numeric_) {
          umfpack_di_free_numeric(&numeric_);
          numeric_ = nullptr;
        }
      }
      umfpack_di_free_symbolic(&symbolic);
    }
#endif
    lu_.compute(M);
    return lu_.info() == Eigen::Success;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
#ifdef RBFFD_HAVE_UMFPACK
    if (numeric_) {
      Eigen::VectorXd x(b.size());
      double control[UMFPACK_CONTROL];
      umfpack_di_defaults(control);
      umfpack_di_solve(UMFPACK_A, mat_->outerIndexPtr(),
                       mat_->innerIndexPtr(), mat_->valuePtr(), x.data(),
                       b.data(), numeric_, control, nullptr);
      return x;
    }
#endif
    return lu_.solve(b);
  }

 private:
#ifdef RBFFD_HAVE_UMFPACK
  static constexpr double kMemoryBudgetBytes = 3.0e9;
  const Eigen::SparseMatrix<double>* mat_ = nullptr;
  void* numeric_ = nullptr;
#endif
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

// [[G, C^T], [C, 0]] from the (1,1) block and the constraint block.
Eigen::SparseMatrix<double> kkt_matrix(const Eigen::SparseMatrix<double>& G,
                                       const Eigen::SparseMatrix<double>& C) {
  const int nx = static_cast<int>(G.rows());
  const int nc = static_cast<int>(C.rows());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(G.nonZeros() + 2 * C.nonZeros());
  for (int k = 0; k < G.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(G, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < C.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(C, k); it; ++it) {
      trip.emplace_back(nx + it.row(), it.col(), it.value());
      trip.emplace_back(it.col(), nx + it.row(), it.value());
    }
  Eigen::SparseMatrix<double> M(nx + nc, nx + nc);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

}  // namespace

Eigen::VectorXd solve_equilibrated(const Eigen::SparseMatrix<double>& M,
                                   const Eigen::VectorXd& rhs,
                                   double* residual_out) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n || rhs.size() != n)
    throw std::invalid_argument("solve_equilibrated: shape mismatch");

  Eigen::VectorXd rowmax = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < M.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it) {
      const double a = std::abs(it.value());
      if (a > rowmax(it.row())) rowmax(it.row()) = a;
    }
  for (int i = 0; i < n; ++i)
    if (!(rowmax(i) > 0.0))
      throw SingularGlobalSystem("global system has an empty row " +
                                 std::to_string(i));
  const Eigen::VectorXd d = rowmax.array().rsqrt();

  Eigen::SparseMatrix<double> Ms = M;
  Ms.makeCompressed();
  for (int k = 0; k < Ms.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(Ms, k); it; ++it)
      it.valueRef() *= d(it.row()) * d(it.col());

  DirectFactorization lu;
  if (!lu.factorize(Ms))
    throw SingularGlobalSystem("global sparse factorization failed");
  const Eigen::VectorXd rhs_scaled = (d.array() * rhs.array()).matrix();
  const Eigen::VectorXd y = lu.solve(rhs_scaled);
  Eigen::VectorXd z = (d.array() * y.array()).matrix();

  const double rhs_norm = rhs.norm();
  const double denom = rhs_norm > 0.0 ? rhs_norm : 1.0;
  double resid = (M * z - rhs).norm() / denom;
  // Refine against the unscaled system until the residual stops improving.
  for (int pass = 0; pass < 3 && resid > 1e-14; ++pass) {
    const Eigen::VectorXd r = rhs - M * z;
    const Eigen::VectorXd r_scaled = (d.array() * r.array()).matrix();
    const Eigen::VectorXd dy = lu.solve(r_scaled);
    const Eigen::VectorXd z_next = z + (d.array() * dy.array()).matrix();
    const double resid_next = (M * z_next - rhs).norm() / denom;
    if (!(resid_next < resid)) break;
    z = z_next;
    resid = resid_next;
  }
  if (residual_out) *residual_out = resid;
  if (!(resid <= 1e-8))
    throw SingularGlobalSystem(
        "global solve residual " + std::to_string(resid) + " exceeds 1e-8",
        resid);
  return z;
}

KktResult solve_kkt_normal(const Eigen::SparseMatrix<double>& A,
                           const Eigen::VectorXd& b,
                           const Eigen::SparseMatrix<double>& C,
                           const Eigen::VectorXd& c) {
  if (A.rows() != b.size() || C.rows() != c.size() || A.cols() != C.cols())
    throw std::invalid_argument("solve_kkt_normal: shape mismatch");
  const int nx = static_cast<int>(A.cols());
  const int nc = static_cast<int>(C.rows());
  Eigen::SparseMatrix<double> G = (A.transpose() * A).pruned();
  const Eigen::SparseMatrix<double> M = kkt_matrix(G, C);
  Eigen::VectorXd rhs(nx + nc);
  rhs.head(nx) = A.transpose() * b;
  rhs.tail(nc) = c;

  KktResult res;
  const Eigen::VectorXd z = solve_equilibrated(M, rhs, &res.linear_residual);
  res.x = z.head(nx);
  res.lambda = z.tail(nc);
  return res;
}

KktResult solve_kkt_saddle(const Eigen::SparseMatrix<double>& A,
                           const Eigen::VectorXd& b,
                           const Eigen::SparseMatrix<double>& C,
                           const Eigen::VectorXd& c) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("solve_kkt_saddle: A must be square");
  if (A.rows() != b.size() || C.rows() != c.size() || A.cols() != C.cols())
    throw std::invalid_argument("solve_kkt_saddle: shape mismatch");
  const int nx = static_cast<int>(A.cols());
  const int nc = static_cast<int>(C.rows());
  const Eigen::SparseMatrix<double> M = kkt_matrix(A, C);
  Eigen::VectorXd rhs(nx + nc);
  rhs.head(nx) = b;
  rhs.tail(nc) = c;

  KktResult res;
  const Eigen::VectorXd z = solve_equilibrated(M, rhs, &res.linear_residual);
  res.x = z.head(nx);
  res.lambda = z.tail(nc);
  return res;
}

}  // namespace rbffd
