#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "rbffd/errors.hpp"
#include "rbffd/stencil.hpp"
#include "support/oracles.hpp"

using namespace rbffd;

namespace {

struct Points {
  std::vector<double> xs, ys, zs;
};

Points scatter(std::mt19937_64& rng, int n, int d, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Points p;
  for (int i = 0; i < n; ++i) {
    p.xs.push_back(dist(rng));
    p.ys.push_back(dist(rng));
    p.zs.push_back(d == 3 ? dist(rng) : 0.0);
  }
  return p;
}

double monomial_value(const std::array<int, 3>& e, const double* x) {
  double v = 1.0;
  for (int a = 0; a < 3; ++a)
    for (int rep = 0; rep < e[a]; ++rep) v *= x[a];
  return v;
}

double apply_weights(const std::vector<double>& w, const Points& p,
                     const std::function<double(const double*)>& fn) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x[3] = {p.xs[i], p.ys[i], p.zs[i]};
    acc += w[i] * fn(x);
  }
  return acc;
}

}  // namespace

TEST_CASE("monomial counts and exponent sets") {
  CHECK(monomial_count(2, 0) == 1);
  CHECK(monomial_count(2, 1) == 3);
  CHECK(monomial_count(2, 2) == 6);
  CHECK(monomial_count(2, 3) == 10);
  CHECK(monomial_count(3, 2) == 10);
  CHECK(monomial_count(3, 3) == 20);
  CHECK(monomial_count(3, 5) == 56);

  for (int d : {2, 3}) {
    for (int m : {0, 1, 3, 5}) {
      const auto exps = monomial_exponents(d, m);
      CHECK(int(exps.size()) == monomial_count(d, m));
      std::set<std::array<int, 3>> uniq(exps.begin(), exps.end());
      CHECK(uniq.size() == exps.size());
      int prev_deg = 0;
      for (const auto& e : exps) {
        const int deg = e[0] + e[1] + e[2];
        CHECK(deg <= m);
        CHECK(deg >= prev_deg);
        prev_deg = deg;
        if (d == 2) CHECK(e[2] == 0);
      }
    }
  }
}

TEST_CASE("spline operator values match closed forms and differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int d : {2, 3}) {
    for (int k : {1, 2, 3}) {
      const double q = 2.0 * k + 1.0;
      for (int trial = 0; trial < 25; ++trial) {
        double c[3] = {dist(rng), dist(rng), d == 3 ? dist(rng) : 0.0};
        double x[3] = {dist(rng), dist(rng), d == 3 ? dist(rng) : 0.0};
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) r2 += (x[a] - c[a]) * (x[a] - c[a]);
        const double r = std::sqrt(r2);
        if (r < 0.3) continue;

        CHECK(phs_apply(OperatorKind::evaluation(), c, x, k, d) ==
              doctest::Approx(std::pow(r, q)).epsilon(1e-13));
        CHECK(phs_apply(OperatorKind::laplacian(), c, x, k, d) ==
              doctest::Approx(q * (q + d - 2) * std::pow(r, q - 2))
                  .epsilon(1e-13));

        double n[3] = {dist(rng), dist(rng), d == 3 ? dist(rng) : 0.0};
        const auto nder = OperatorKind::normal_derivative(n, d);
        auto phi = [&](const double* p) {
          double rr = 0.0;
          for (int a = 0; a < d; ++a) rr += (p[a] - c[a]) * (p[a] - c[a]);
          return std::pow(std::sqrt(rr), q);
        };
        double grad[3];
        oracle::fd_gradient(phi, x, d, grad);
        double expect = 0.0;
        for (int a = 0; a < d; ++a) expect += grad[a] * nder.normal[a];
        CHECK(phs_apply(nder, c, x, k, d) ==
              doctest::Approx(expect).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("monomial operator values match finite differences") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int d : {2, 3}) {
    for (const auto& e : monomial_exponents(d, 4)) {
      for (int trial = 0; trial < 5; ++trial) {
        double x[3] = {dist(rng), dist(rng), d == 3 ? dist(rng) : 0.0};
        auto fn = [&](const double* p) { return monomial_value(e, p); };
        CHECK(monomial_apply(OperatorKind::evaluation(), e, x, d) ==
              doctest::Approx(fn(x)).epsilon(1e-14));
        CHECK(monomial_apply(OperatorKind::laplacian(), e, x, d) ==
              doctest::Approx(oracle::fd_laplacian(fn, x, d))
                  .epsilon(1e-4)
                  .scale(1.0));
        double n[3] = {dist(rng), dist(rng), d == 3 ? dist(rng) : 0.0};
        const auto nder = OperatorKind::normal_derivative(n, d);
        double grad[3];
        oracle::fd_gradient(fn, x, d, grad);
        double expect = 0.0;
        for (int a = 0; a < d; ++a) expect += grad[a] * nder.normal[a];
        CHECK(monomial_apply(nder, e, x, d) ==
              doctest::Approx(expect).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("zero exponents evaluate to one everywhere, origin included") {
  const std::array<int, 3> constant{0, 0, 0};
  double origin[3] = {0.0, 0.0, 0.0};
  CHECK(monomial_apply(OperatorKind::evaluation(), constant, origin, 2) == 1.0);
  const std::array<int, 3> linear{1, 0, 0};
  CHECK(monomial_apply(OperatorKind::evaluation(), linear, origin, 2) == 0.0);
  // d/dx of x at the origin hits the 0^0 corner of the power rule.
  double n[3] = {1.0, 0.0, 0.0};
  CHECK(monomial_apply(OperatorKind::normal_derivative(n, 2), linear, origin,
                       2) == 1.0);
}

TEST_CASE("normal_derivative normalizes and rejects zero vectors") {
  double n[3] = {3.0, 4.0, 0.0};
  const auto kind = OperatorKind::normal_derivative(n, 2);
  CHECK(kind.normal[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(kind.normal[1] == doctest::Approx(0.8).epsilon(1e-15));
  double z[3] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(OperatorKind::normal_derivative(z, 2),
                  std::invalid_argument);
}

TEST_CASE("six-point stencil recovers the five-point Laplacian value") {
  // n = l = 6 forces pure polynomial reproduction of degree-2 exactness.
  const double h = 0.37;
  std::vector<double> xs{0.0, h, -h, 0.0, 0.0, h};
  std::vector<double> ys{0.0, 0.0, 0.0, h, -h, h};
  StencilConfig cfg{2, 2, 1.0, 1};
  REQUIRE(cfg.ell() == 6);
  REQUIRE(cfg.n() == 6);
  double eval[3] = {0.0, 0.0, 0.0};
  const auto w = stencil_weights(eval, xs.data(), ys.data(), nullptr, 6,
                                 OperatorKind::laplacian(), cfg);
  double acc = 0.0;
  for (int i = 0; i < 6; ++i)
    acc += w[std::size_t(i)] * (xs[std::size_t(i)] * xs[std::size_t(i)] +
                                ys[std::size_t(i)] * ys[std::size_t(i)]);
  CHECK(acc == doctest::Approx(4.0).epsilon(1e-10));
  double wsum = 0.0;
  for (double v : w) wsum += v;
  CHECK(wsum == doctest::Approx(0.0).epsilon(1e-10).scale(1.0 / (h * h)));
}

TEST_CASE("weights reproduce all monomials through degree m") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int d : {2, 3}) {
    for (int m : {1, 2, 3, 4}) {
      StencilConfig cfg{d, m, 2.0, 1};
      const int n = cfg.n();
      for (int trial = 0; trial < 8; ++trial) {
        Points p = scatter(rng, n, d, 0.5);
        double eval[3] = {0.2 * dist(rng), 0.2 * dist(rng),
                          d == 3 ? 0.2 * dist(rng) : 0.0};
        for (const auto& kindcase : {0, 1, 2}) {
          OperatorKind kind = OperatorKind::evaluation();
          if (kindcase == 1) kind = OperatorKind::laplacian();
          if (kindcase == 2) {
            double nv[3] = {dist(rng), dist(rng), d == 3 ? dist(rng) : 0.0};
            if (std::abs(nv[0]) + std::abs(nv[1]) < 0.1) nv[0] = 1.0;
            kind = OperatorKind::normal_derivative(nv, d);
          }
          std::vector<double> w;
          try {
            w = stencil_weights(eval, p.xs.data(), p.ys.data(),
                                d == 3 ? p.zs.data() : nullptr, n, kind, cfg);
          } catch (const SingularStencil&) {
            continue;  // rare ill-placed random draw
          }
          for (const auto& e : monomial_exponents(d, m)) {
            const double got = apply_weights(
                w, p, [&](const double* x) { return monomial_value(e, x); });
            const double expect = monomial_apply(kind, e, eval, d);
            CHECK(got == doctest::Approx(expect).epsilon(1e-7).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("evaluation at a stencil node returns that cardinal vector") {
  std::mt19937_64 rng(41);
  Points p = scatter(rng, 16, 2, 0.5);
  StencilConfig cfg{2, 2, 2.0, 1};
  REQUIRE(cfg.n() <= 16);
  double eval[3] = {p.xs[3], p.ys[3], 0.0};
  const auto w = stencil_weights(eval, p.xs.data(), p.ys.data(), nullptr,
                                 cfg.n(), OperatorKind::evaluation(), cfg);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(w[i] == doctest::Approx(i == 3 ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
}

TEST_CASE("weights are translation covariant and scale like h^-order") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StencilConfig cfg{2, 3, 2.0, 1};
  const int n = cfg.n();
  Points base = scatter(rng, n, 2, 1.0);
  double eval[3] = {0.1, -0.2, 0.0};

  for (const OperatorKind& kind :
       {OperatorKind::evaluation(), OperatorKind::laplacian()}) {
    const auto w0 = stencil_weights(eval, base.xs.data(), base.ys.data(),
                                    nullptr, n, kind, cfg);
    // Shift everything by a constant offset.
    Points moved = base;
    const double off[2] = {dist(rng) * 3, dist(rng) * 3};
    for (int i = 0; i < n; ++i) {
      moved.xs[std::size_t(i)] += off[0];
      moved.ys[std::size_t(i)] += off[1];
    }
    double meval[3] = {eval[0] + off[0], eval[1] + off[1], 0.0};
    const auto w1 = stencil_weights(meval, moved.xs.data(), moved.ys.data(),
                                    nullptr, n, kind, cfg);
    for (int i = 0; i < n; ++i)
      CHECK(w1[std::size_t(i)] ==
            doctest::Approx(w0[std::size_t(i)]).epsilon(1e-9).scale(1.0));

    // Scale everything about the eval point.
    const double s = 0.025;
    Points shrunk = base;
    for (int i = 0; i < n; ++i) {
      shrunk.xs[std::size_t(i)] = eval[0] + s * (base.xs[std::size_t(i)] - eval[0]);
      shrunk.ys[std::size_t(i)] = eval[1] + s * (base.ys[std::size_t(i)] - eval[1]);
    }
    const auto w2 = stencil_weights(eval, shrunk.xs.data(), shrunk.ys.data(),
                                    nullptr, n, kind, cfg);
    const double factor = kind.order() == 0 ? 1.0 : std::pow(s, -kind.order());
    for (int i = 0; i < n; ++i)
      CHECK(w2[std::size_t(i)] ==
            doctest::Approx(w0[std::size_t(i)] * factor)
                .epsilon(1e-8)
                .scale(std::abs(factor)));
  }
}

TEST_CASE("stencil failure modes raise SingularStencil") {
  StencilConfig small{2, 3, 2.0, 1};
  std::mt19937_64 rng(71);
  Points p = scatter(rng, 5, 2, 1.0);
  double eval[3] = {0.0, 0.0, 0.0};
  // n < l.
  CHECK_THROWS_AS(stencil_weights(eval, p.xs.data(), p.ys.data(), nullptr, 5,
                                  OperatorKind::laplacian(), small),
                  SingularStencil);

  // All nodes coincident: zero stencil radius.
  StencilConfig tiny{2, 0, 1.0, 1};
  std::vector<double> xs(tiny.n(), 0.5), ys(tiny.n(), 0.5);
  double at[3] = {0.5, 0.5, 0.0};
  CHECK_THROWS_AS(stencil_weights(at, xs.data(), ys.data(), nullptr, tiny.n(),
                                  OperatorKind::laplacian(), tiny),
                  SingularStencil);

  // Collinear nodes cannot support a full degree-2 basis.
  StencilConfig deg2{2, 2, 2.0, 1};
  std::vector<double> lx, ly;
  for (int i = 0; i < deg2.n(); ++i) {
    lx.push_back(0.1 * i);
    ly.push_back(0.0);
  }
  CHECK_THROWS_AS(stencil_weights(eval, lx.data(), ly.data(), nullptr,
                                  deg2.n(), OperatorKind::laplacian(), deg2),
                  SingularStencil);
}

TEST_CASE("workspace reuse matches the one-shot overload") {
  std::mt19937_64 rng(83);
  StencilConfig cfg{3, 2, 2.0, 2};
  const int n = cfg.n();
  StencilWorkspace ws;
  for (int trial = 0; trial < 4; ++trial) {
    Points p = scatter(rng, n, 3, 1.0);
    double eval[3] = {0.05, -0.1, 0.2};
    const auto& a = stencil_weights(eval, p.xs.data(), p.ys.data(),
                                    p.zs.data(), n, OperatorKind::laplacian(),
                                    cfg, ws);
    const auto b = stencil_weights(eval, p.xs.data(), p.ys.data(), p.zs.data(),
                                   n, OperatorKind::laplacian(), cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(a[i] == b[i]);
  }
}
