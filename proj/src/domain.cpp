#include "rbffd/domain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbffd {

namespace {
constexpr double kPi = std::numbers::pi;
// 1/2 int r(theta)^2 dtheta, high-resolution quadrature, frozen.
constexpr double kButterflyArea = 0.9225483176807276;
}  // namespace

double butterfly_radius(double theta) {
  return 0.25 * (2.0 + std::sin(2.0 * theta) -
                 0.01 * std::cos(5.0 * theta - kPi / 2.0) +
                 0.63 * std::sin(6.0 * theta - 0.1));
}

double butterfly_radius_deriv(double theta) {
  return 0.25 * (2.0 * std::cos(2.0 * theta) +
                 0.05 * std::sin(5.0 * theta - kPi / 2.0) +
                 3.78 * std::cos(6.0 * theta - 0.1));
}

double Domain::diameter() const {
  switch (shape) {
    case Shape::UnitDisk:
    case Shape::UnitBall:
      return 2.0;
    case Shape::Butterfly:
      return 1.6;
  }
  return 2.0;
}

double Domain::measure() const {
  switch (shape) {
    case Shape::UnitDisk:
      return kPi;
    case Shape::Butterfly:
      return kButterflyArea;
    case Shape::UnitBall:
      return 4.0 * kPi / 3.0;
  }
  return 0.0;
}

double Domain::box_halfwidth() const {
  return shape == Shape::Butterfly ? 0.82 : 1.0;
}

double Domain::boundary_residual(const double* x) const {
  switch (shape) {
    case Shape::UnitDisk:
      return std::hypot(x[0], x[1]) - 1.0;
    case Shape::UnitBall:
      return std::hypot(x[0], x[1], x[2]) - 1.0;
    case Shape::Butterfly: {
      const double r = std::hypot(x[0], x[1]);
      return r - butterfly_radius(std::atan2(x[1], x[0]));
    }
  }
  return 0.0;
}

bool Domain::contains(const double* x) const {
  return boundary_residual(x) <= 0.0;
}

bool Domain::contains_strict(const double* x) const {
  return boundary_residual(x) < 0.0;
}

void outward_normal(const Domain& dom, const double* b, double* n) {
  if (std::abs(dom.boundary_residual(b)) > 1e-9 * dom.diameter())
    throw std::invalid_argument("outward_normal: point not on the boundary");
  switch (dom.shape) {
    case Shape::UnitDisk: {
      const double r = std::hypot(b[0], b[1]);
      n[0] = b[0] / r;
      n[1] = b[1] / r;
      return;
    }
    case Shape::UnitBall: {
      const double r = std::hypot(b[0], b[1], b[2]);
      for (int a = 0; a < 3; ++a) n[a] = b[a] / r;
      return;
    }
    case Shape::Butterfly: {
      const double theta = std::atan2(b[1], b[0]);
      const double r = butterfly_radius(theta);
      const double rp = butterfly_radius_deriv(theta);
      const double c = std::cos(theta), s = std::sin(theta);
      const double tx = rp * c - r * s;
      const double ty = rp * s + r * c;
      double nx = ty, ny = -tx;
      // Star-shaped boundary: the outward normal has positive radial part.
      if (nx * b[0] + ny * b[1] < 0.0) {
        nx = -nx;
        ny = -ny;
      }
      const double len = std::hypot(nx, ny);
      n[0] = nx / len;
      n[1] = ny / len;
      return;
    }
  }
}

Domain make_domain(Shape s) { return Domain{s}; }

Shape shape_from_name(const std::string& name) {
  if (name == "disk") return Shape::UnitDisk;
  if (name == "butterfly") return Shape::Butterfly;
  if (name == "ball") return Shape::UnitBall;
  throw std::invalid_argument("unknown domain shape: " + name);
}

}  // namespace rbffd
