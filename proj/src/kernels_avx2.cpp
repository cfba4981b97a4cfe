#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "rbffd/kernels.hpp"

// AVX2 variants of the batch kernels. No FMA: every operation below is a
// separately rounded IEEE mul/add/sqrt, matching the scalar reference bit for
// bit. Tails fall back to the same plain expressions as the reference.

namespace rbffd::kernels::avx2 {

void sqdist2(const double* xs, const double* ys, std::size_t n, double qx,
             double qy, double* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
    const __m256d s =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, s);
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

void sqdist3(const double* xs, const double* ys, const double* zs,
             std::size_t n, double qx, double qy, double qz, double* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  const __m256d vqz = _mm256_set1_pd(qz);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), vqz);
    const __m256d sxy =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_add_pd(sxy, _mm256_mul_pd(dz, dz)));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double dz = zs[i] - qz;
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

void phs_odd(const double* r2, std::size_t n, int k, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(r2 + i);
    __m256d p = v;
    for (int j = 1; j < k; ++j) p = _mm256_mul_pd(p, v);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(p, _mm256_sqrt_pd(v)));
  }
  for (; i < n; ++i) {
    double p = r2[i];
    for (int j = 1; j < k; ++j) p = p * r2[i];
    out[i] = p * std::sqrt(r2[i]);
  }
}

}  // namespace rbffd::kernels::avx2
