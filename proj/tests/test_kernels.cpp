#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "rbffd/kernels.hpp"

namespace k = rbffd::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) !=
        std::bit_cast<std::uint64_t>(b[i]))
      return false;
  return true;
}

std::vector<double> randvec(std::mt19937_64& rng, std::size_t n,
                            double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("avx2 squared distances match scalar bitwise") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937_64 rng(7);
  for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(3),
                        std::size_t(4), std::size_t(5), std::size_t(8),
                        std::size_t(13), std::size_t(64), std::size_t(67),
                        std::size_t(513)}) {
    for (double scale : {1e-8, 1.0, 1e6}) {
      const auto xs = randvec(rng, n, scale);
      const auto ys = randvec(rng, n, scale);
      const auto zs = randvec(rng, n, scale);
      const double qx = scale / 3, qy = -scale / 7, qz = scale / 11;

      std::vector<double> ref(n), simd(n);
      k::scalar::sqdist2(xs.data(), ys.data(), n, qx, qy, ref.data());
      k::avx2::sqdist2(xs.data(), ys.data(), n, qx, qy, simd.data());
      CHECK(same_bits(ref, simd));

      k::scalar::sqdist3(xs.data(), ys.data(), zs.data(), n, qx, qy, qz,
                         ref.data());
      k::avx2::sqdist3(xs.data(), ys.data(), zs.data(), n, qx, qy, qz,
                       simd.data());
      CHECK(same_bits(ref, simd));
    }
  }
}

TEST_CASE("avx2 spline kernel matches scalar bitwise") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  for (std::size_t n :
       {std::size_t(1), std::size_t(6), std::size_t(31), std::size_t(200)}) {
    std::vector<double> r2(n);
    for (double& v : r2) v = dist(rng);
    for (int kk = 1; kk <= 4; ++kk) {
      std::vector<double> ref(n), simd(n);
      k::scalar::phs_odd(r2.data(), n, kk, ref.data());
      k::avx2::phs_odd(r2.data(), n, kk, simd.data());
      CHECK(same_bits(ref, simd));
    }
  }
}

TEST_CASE("scalar kernels compute the advertised quantities") {
  const std::vector<double> xs{0.0, 1.0, -2.0}, ys{0.0, 2.0, 1.5},
      zs{1.0, 0.5, -0.25};
  std::vector<double> out(3);
  k::scalar::sqdist2(xs.data(), ys.data(), 3, 1.0, -1.0, out.data());
  CHECK(out[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(out[2] == doctest::Approx(15.25).epsilon(1e-15));

  k::scalar::sqdist3(xs.data(), ys.data(), zs.data(), 3, 1.0, -1.0, 0.5,
                     out.data());
  CHECK(out[0] == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(out[2] == doctest::Approx(15.8125).epsilon(1e-15));

  std::vector<double> r2{0.0, 0.25, 2.0};
  k::scalar::phs_odd(r2.data(), 3, 1, out.data());
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(0.125).epsilon(1e-15));  // 0.5^3
  CHECK(out[2] == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
  k::scalar::phs_odd(r2.data(), 3, 2, out.data());
  CHECK(out[1] == doctest::Approx(std::pow(0.5, 5.0)).epsilon(1e-14));
  CHECK(out[2] == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-14));
}

TEST_CASE("backend selection switches the dispatch pointers") {
  const std::string initial = k::backend();

  k::select_backend("scalar");
  CHECK(k::backend() == "scalar");
  CHECK(k::sqdist2 == &k::scalar::sqdist2);
  CHECK(k::sqdist3 == &k::scalar::sqdist3);
  CHECK(k::phs_odd == &k::scalar::phs_odd);

  if (__builtin_cpu_supports("avx2")) {
    k::select_backend("avx2");
    CHECK(k::backend() == "avx2");
    CHECK(k::sqdist2 == &k::avx2::sqdist2);

    k::select_backend("auto");
    CHECK(k::backend() == "avx2");
  }

  CHECK_THROWS_AS(k::select_backend("sse9"), std::invalid_argument);
  k::select_backend(initial);
}
