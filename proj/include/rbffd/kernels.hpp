#pragma once

#include <cstddef>
#include <string>

namespace rbffd::kernels {

// Batched squared distances from a query point to points in SoA layout.
using Sqdist2Fn = void (*)(const double* xs, const double* ys, std::size_t n,
                           double qx, double qy, double* out);
using Sqdist3Fn = void (*)(const double* xs, const double* ys, const double* zs,
                           std::size_t n, double qx, double qy, double qz,
                           double* out);
// phi(r) = r^(2k+1) evaluated from squared distances, k >= 1.
using PhsOddFn = void (*)(const double* r2, std::size_t n, int k, double* out);

namespace scalar {
void sqdist2(const double* xs, const double* ys, std::size_t n, double qx,
             double qy, double* out);
void sqdist3(const double* xs, const double* ys, const double* zs,
             std::size_t n, double qx, double qy, double qz, double* out);
void phs_odd(const double* r2, std::size_t n, int k, double* out);
}  // namespace scalar

namespace avx2 {
void sqdist2(const double* xs, const double* ys, std::size_t n, double qx,
             double qy, double* out);
void sqdist3(const double* xs, const double* ys, const double* zs,
             std::size_t n, double qx, double qy, double qz, double* out);
void phs_odd(const double* r2, std::size_t n, int k, double* out);
}  // namespace avx2

// Active implementation, chosen at startup: AVX2 when the CPU supports it,
// overridable with RBFFD_KERNELS=scalar|avx2|auto.
extern Sqdist2Fn sqdist2;
extern Sqdist3Fn sqdist3;
extern PhsOddFn phs_odd;

std::string backend();
// name: "scalar", "avx2" or "auto"; throws std::invalid_argument otherwise.
void select_backend(const std::string& name);

}  // namespace rbffd::kernels
