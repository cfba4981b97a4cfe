#include "rbffd/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rbffd/errors.hpp"

namespace rbffd {

namespace {

constexpr double kPi = std::numbers::pi;

// One Franke-type exponential bump A exp(-(a s^2 + b t^2)), s = 9x - p,
// t = 9y - q.
struct Bump {
  double A, a, b, p, q;

  double value(double x, double y) const {
    const double s = 9.0 * x - p;
    const double t = 9.0 * y - q;
    return A * std::exp(-(a * s * s + b * t * t));
  }
  double lap(double x, double y) const {
    const double s = 9.0 * x - p;
    const double t = 9.0 * y - q;
    const double T = value(x, y);
    return (324.0 * (a * a * s * s + b * b * t * t) - 162.0 * (a + b)) * T;
  }
  void grad(double x, double y, double* g) const {
    const double s = 9.0 * x - p;
    const double t = 9.0 * y - q;
    const double T = value(x, y);
    g[0] += -18.0 * a * s * T;
    g[1] += -18.0 * b * t * T;
  }
};

constexpr Bump kFranke[4] = {
    {0.75, 0.25, 0.25, 2.0, 2.0},
    {0.75, 1.0 / 49.0, 0.1, -1.0, -1.0},
    {0.5, 0.25, 0.25, 7.0, 3.0},
    {-0.2, 1.0, 1.0, 4.0, 7.0},
};

}  // namespace

ManufacturedProblem tp1() {
  ManufacturedProblem p;
  p.name = "tp1";
  p.shape = Shape::UnitDisk;
  p.split = BoundarySplit::all_dirichlet();
  p.u = [](const double* x) { return std::sin(10.0 * (x[0] + x[1])); };
  p.f = [](const double* x) { return -200.0 * std::sin(10.0 * (x[0] + x[1])); };
  p.grad = [](const double* x, double* g) {
    const double c = 10.0 * std::cos(10.0 * (x[0] + x[1]));
    g[0] = c;
    g[1] = c;
  };
  return p;
}

ManufacturedProblem tp2() {
  ManufacturedProblem p;
  p.name = "tp2";
  p.shape = Shape::Butterfly;
  p.split = BoundarySplit::theta_interval(kPi, 2.0 * kPi);
  p.u = [](const double* x) {
    double v = 0.0;
    for (const Bump& b : kFranke) v += b.value(x[0], x[1]);
    return v;
  };
  p.f = [](const double* x) {
    double v = 0.0;
    for (const Bump& b : kFranke) v += b.lap(x[0], x[1]);
    return v;
  };
  p.grad = [](const double* x, double* g) {
    g[0] = 0.0;
    g[1] = 0.0;
    for (const Bump& b : kFranke) b.grad(x[0], x[1], g);
  };
  return p;
}

namespace {

ManufacturedProblem ball_problem(const char* name, const BoundarySplit& split) {
  ManufacturedProblem p;
  p.name = name;
  p.shape = Shape::UnitBall;
  p.split = split;
  p.u = [](const double* x) {
    return std::sin(kPi * x[0]) + std::cos(kPi * x[1]) + std::sin(kPi * x[2]);
  };
  p.f = [](const double* x) {
    return -kPi * kPi *
           (std::sin(kPi * x[0]) + std::cos(kPi * x[1]) + std::sin(kPi * x[2]));
  };
  p.grad = [](const double* x, double* g) {
    g[0] = kPi * std::cos(kPi * x[0]);
    g[1] = -kPi * std::sin(kPi * x[1]);
    g[2] = kPi * std::cos(kPi * x[2]);
  };
  return p;
}

}  // namespace

ManufacturedProblem tp3() {
  return ball_problem("tp3", BoundarySplit::all_dirichlet());
}

ManufacturedProblem tp4() { return ball_problem("tp4", BoundarySplit::z_split()); }

ManufacturedProblem problem_from_name(const std::string& name) {
  if (name == "tp1") return tp1();
  if (name == "tp2") return tp2();
  if (name == "tp3") return tp3();
  if (name == "tp4") return tp4();
  throw std::invalid_argument("unknown problem: " + name);
}

double relative_l2_error(const Eigen::VectorXd& num,
                         const Eigen::VectorXd& exact) {
  if (num.size() != exact.size())
    throw std::invalid_argument("relative_l2_error: length mismatch");
  const double denom = exact.norm();
  if (!(denom > 0.0))
    throw DegenerateNorm("relative_l2_error: exact solution has zero norm");
  return (num - exact).norm() / denom;
}

}  // namespace rbffd
