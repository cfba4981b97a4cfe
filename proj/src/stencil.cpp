#include "rbffd/stencil.hpp"

#include <cmath>
#include <stdexcept>

#include "rbffd/errors.hpp"
#include "rbffd/kernels.hpp"

namespace rbffd {

namespace {

// r^(2k+1) from r^2, same operation order as the batch kernels; k = 0 gives r.
double odd_power(double r2, int k) {
  double p = k >= 1 ? r2 : 1.0;
  for (int j = 1; j < k; ++j) p = p * r2;
  return p * std::sqrt(r2);
}

double ipow(double x, int e) {
  double p = 1.0;
  for (int j = 0; j < e; ++j) p *= x;
  return p;
}

double monomial_value(const std::array<int, 3>& e, const double* x, int d) {
  double v = 1.0;
  for (int a = 0; a < d; ++a) v *= ipow(x[a], e[a]);
  return v;
}

}  // namespace

int monomial_count(int d, int m) {
  if (d < 1 || m < 0) throw std::invalid_argument("monomial_count: bad d or m");
  // C(d+m, m)
  long num = 1, den = 1;
  for (int i = 1; i <= d; ++i) {
    num *= m + i;
    den *= i;
  }
  return static_cast<int>(num / den);
}

std::vector<std::array<int, 3>> monomial_exponents(int d, int m) {
  std::vector<std::array<int, 3>> out;
  for (int t = 0; t <= m; ++t) {
    if (d == 2) {
      for (int ex = t; ex >= 0; --ex) out.push_back({ex, t - ex, 0});
    } else {
      for (int ex = t; ex >= 0; --ex)
        for (int ey = t - ex; ey >= 0; --ey) out.push_back({ex, ey, t - ex - ey});
    }
  }
  return out;
}

OperatorKind OperatorKind::normal_derivative(const double* n, int d) {
  OperatorKind k{Tag::NormalDerivative};
  double len = 0.0;
  for (int a = 0; a < d; ++a) len += n[a] * n[a];
  len = std::sqrt(len);
  if (!(len > 0.0))
    throw std::invalid_argument("normal_derivative: zero normal");
  for (int a = 0; a < d; ++a) k.normal[a] = n[a] / len;
  return k;
}

int StencilConfig::n() const {
  return static_cast<int>(std::ceil(ratio * static_cast<double>(ell())));
}

double phs_apply(const OperatorKind& kind, const double* center,
                 const double* eval, int k, int d) {
  if (k < 1) throw std::invalid_argument("phs_apply: k must be >= 1");
  double r2 = 0.0;
  for (int a = 0; a < d; ++a) {
    const double diff = eval[a] - center[a];
    r2 += diff * diff;
  }
  const int q = 2 * k + 1;
  switch (kind.tag) {
    case OperatorKind::Tag::Evaluation:
      return odd_power(r2, k);
    case OperatorKind::Tag::Laplacian:
      // laplacian of r^q is q(q+d-2) r^(q-2)
      return static_cast<double>(q * (q + d - 2)) * odd_power(r2, k - 1);
    case OperatorKind::Tag::NormalDerivative: {
      // gradient of r^q is q r^(q-2) (x - c)
      double dot = 0.0;
      for (int a = 0; a < d; ++a) dot += (eval[a] - center[a]) * kind.normal[a];
      return static_cast<double>(q) * odd_power(r2, k - 1) * dot;
    }
  }
  return 0.0;
}

double monomial_apply(const OperatorKind& kind, const std::array<int, 3>& e,
                      const double* x, int d) {
  switch (kind.tag) {
    case OperatorKind::Tag::Evaluation:
      return monomial_value(e, x, d);
    case OperatorKind::Tag::Laplacian: {
      double sum = 0.0;
      for (int a = 0; a < d; ++a) {
        const int ea = e[a];
        if (ea < 2) continue;
        double term = static_cast<double>(ea * (ea - 1)) * ipow(x[a], ea - 2);
        for (int b = 0; b < d; ++b)
          if (b != a) term *= ipow(x[b], e[b]);
        sum += term;
      }
      return sum;
    }
    case OperatorKind::Tag::NormalDerivative: {
      double sum = 0.0;
      for (int a = 0; a < d; ++a) {
        const int ea = e[a];
        if (ea < 1 || kind.normal[a] == 0.0) continue;
        double term = kind.normal[a] * static_cast<double>(ea) * ipow(x[a], ea - 1);
        for (int b = 0; b < d; ++b)
          if (b != a) term *= ipow(x[b], e[b]);
        sum += term;
      }
      return sum;
    }
  }
  return 0.0;
}

const std::vector<double>& stencil_weights(const double* eval,
                                           const double* nx, const double* ny,
                                           const double* nz, int n,
                                           const OperatorKind& kind,
                                           const StencilConfig& cfg,
                                           StencilWorkspace& ws) {
  if (cfg.k < 1) throw std::invalid_argument("stencil_weights: k must be >= 1");
  const int d = cfg.d;
  const int l = cfg.ell();
  if (n < l)
    throw SingularStencil("stencil saddle system singular: n = " +
                          std::to_string(n) + " < l = " + std::to_string(l));
  const int size = n + l;

  ws.sx.resize(n);
  ws.sy.resize(n);
  ws.sz.resize(n);
  ws.r2.resize(n);
  ws.phi.resize(n);

  if (d == 3)
    kernels::sqdist3(nx, ny, nz, n, eval[0], eval[1], eval[2], ws.r2.data());
  else
    kernels::sqdist2(nx, ny, n, eval[0], eval[1], ws.r2.data());
  double rho2 = 0.0;
  for (int i = 0; i < n; ++i) rho2 = std::max(rho2, ws.r2[i]);
  if (!(rho2 > 0.0))
    throw SingularStencil("stencil degenerate: all neighbors coincide");
  const double rho = std::sqrt(rho2);

  for (int i = 0; i < n; ++i) {
    ws.sx[i] = (nx[i] - eval[0]) / rho;
    ws.sy[i] = (ny[i] - eval[1]) / rho;
    ws.sz[i] = d == 3 ? (nz[i] - eval[2]) / rho : 0.0;
  }

  ws.M.resize(size, size);
  ws.rhs.resize(size);
  ws.M.setZero();

  // A block: phi of pairwise distances in local coordinates.
  for (int i = 0; i < n; ++i) {
    if (d == 3)
      kernels::sqdist3(ws.sx.data(), ws.sy.data(), ws.sz.data(), n, ws.sx[i],
                       ws.sy[i], ws.sz[i], ws.r2.data());
    else
      kernels::sqdist2(ws.sx.data(), ws.sy.data(), n, ws.sx[i], ws.sy[i],
                       ws.r2.data());
    kernels::phs_odd(ws.r2.data(), n, cfg.k, ws.phi.data());
    for (int j = 0; j < n; ++j) ws.M(i, j) = ws.phi[j];
  }

  const auto exps = monomial_exponents(d, cfg.m);
  for (int i = 0; i < n; ++i) {
    const double y[3] = {ws.sx[i], ws.sy[i], ws.sz[i]};
    for (int j = 0; j < l; ++j) {
      const double v = monomial_value(exps[j], y, d);
      ws.M(i, n + j) = v;
      ws.M(n + j, i) = v;
    }
  }

  // Right-hand side: the operator applied at the (local) origin.
  const double origin[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const double c[3] = {ws.sx[i], ws.sy[i], ws.sz[i]};
    ws.rhs(i) = phs_apply(kind, c, origin, cfg.k, d);
  }
  for (int j = 0; j < l; ++j)
    ws.rhs(n + j) = monomial_apply(kind, exps[j], origin, d);

  ws.lu.compute(ws.M);
  const double rcond = ws.lu.rcond();
  if (!(rcond >= 1e-14))
    throw SingularStencil("stencil saddle system singular: rcond = " +
                          std::to_string(rcond));
  const Eigen::VectorXd sol = ws.lu.solve(ws.rhs);

  const double scale = ipow(1.0 / rho, kind.order());
  ws.weights.resize(n);
  bool finite = true;
  for (int i = 0; i < n; ++i) {
    ws.weights[i] = sol(i) * scale;
    finite = finite && std::isfinite(ws.weights[i]);
  }
  if (!finite) throw SingularStencil("stencil produced non-finite weights");
  return ws.weights;
}

std::vector<double> stencil_weights(const double* eval, const double* nx,
                                    const double* ny, const double* nz, int n,
                                    const OperatorKind& kind,
                                    const StencilConfig& cfg) {
  StencilWorkspace ws;
  return stencil_weights(eval, nx, ny, nz, n, kind, cfg, ws);
}

}  // namespace rbffd
