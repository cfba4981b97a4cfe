#pragma once

#include <string>

namespace rbffd {

enum class Shape {
  UnitDisk,
  Butterfly,
  UnitBall,
};

// r(theta) of the butterfly curve and its derivative.
double butterfly_radius(double theta);
double butterfly_radius_deriv(double theta);

struct Domain {
  Shape shape = Shape::UnitDisk;

  int dim() const { return shape == Shape::UnitBall ? 3 : 2; }
  double diameter() const;
  // Area in 2-D, volume in 3-D.
  double measure() const;
  // Half-width of the centered covering box used for node generation.
  double box_halfwidth() const;

  // Closed membership x in Omega; strict excludes the boundary.
  bool contains(const double* x) const;
  bool contains_strict(const double* x) const;
  // Signed boundary residual, zero on the boundary (clipped |x|-1 or
  // r - r(theta) form); used for on-boundary checks.
  double boundary_residual(const double* x) const;
};

// Unit outward normal at a boundary point; throws std::invalid_argument if b
// is not on the boundary within tolerance.
void outward_normal(const Domain& dom, const double* b, double* n);

Domain make_domain(Shape s);
Shape shape_from_name(const std::string& name);

}  // namespace rbffd
