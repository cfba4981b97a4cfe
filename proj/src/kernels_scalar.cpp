#include <cmath>
#include <cstddef>

#include "rbffd/kernels.hpp"

// Reference implementation. Compiled without FP contraction so that results
// are plain IEEE mul/add sequences the vector backend can reproduce exactly.

namespace rbffd::kernels::scalar {

void sqdist2(const double* xs, const double* ys, std::size_t n, double qx,
             double qy, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

void sqdist3(const double* xs, const double* ys, const double* zs,
             std::size_t n, double qx, double qy, double qz, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double dz = zs[i] - qz;
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

void phs_odd(const double* r2, std::size_t n, int k, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double p = r2[i];
    for (int j = 1; j < k; ++j) p = p * r2[i];
    out[i] = p * std::sqrt(r2[i]);
  }
}

}  // namespace rbffd::kernels::scalar
