#include "rbffd/nodegen.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rbffd/kdtree.hpp"

namespace rbffd {

namespace {

constexpr double kPi = std::numbers::pi;

// Raw-bit mapping keeps the stream identical across standard libraries.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double wrap_2pi(double theta) {
  return theta < 0.0 ? theta + 2.0 * kPi : theta;
}

NodeRole boundary_role(const BoundarySplit& split, const double* p, int dim) {
  switch (split.kind) {
    case BoundarySplit::Kind::AllDirichlet:
      return NodeRole::Dirichlet;
    case BoundarySplit::Kind::ThetaInterval: {
      const double t = wrap_2pi(std::atan2(p[1], p[0]));
      return (t >= split.theta_lo && t < split.theta_hi) ? NodeRole::Neumann
                                                         : NodeRole::Dirichlet;
    }
    case BoundarySplit::Kind::ZSplit:
      return (dim == 3 && p[2] < 0.0) ? NodeRole::Neumann : NodeRole::Dirichlet;
  }
  return NodeRole::Dirichlet;
}

struct CellKey {
  long ix, iy, iz;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.ix) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::size_t>(k.iy) * 0xbf58476d1ce4e5b9ull;
    h ^= static_cast<std::size_t>(k.iz) * 0x94d049bb133111ebull;
    return h;
  }
};

}  // namespace

NodeSet generate_interior_nodes(const Domain& dom, double h,
                                std::uint64_t seed) {
  if (!(h > 0.0)) throw std::invalid_argument("interior nodes: h must be > 0");
  const int d = dom.dim();
  const double w = dom.box_halfwidth();
  const long nc = static_cast<long>(std::ceil(2.0 * w / h));
  std::mt19937_64 rng(seed);

  std::vector<double> cand_x, cand_y, cand_z;
  std::vector<CellKey> cand_cell;
  const long nz = d == 3 ? nc : 1;
  for (long ix = 0; ix < nc; ++ix)
    for (long iy = 0; iy < nc; ++iy)
      for (long iz = 0; iz < nz; ++iz) {
        double p[3] = {0.0, 0.0, 0.0};
        const long idx[3] = {ix, iy, iz};
        for (int a = 0; a < d; ++a) {
          const double jitter = (unit_uniform(rng) * 0.6 - 0.3) * h;
          p[a] = -w + (static_cast<double>(idx[a]) + 0.5) * h + jitter;
        }
        cand_x.push_back(p[0]);
        cand_y.push_back(p[1]);
        cand_z.push_back(p[2]);
        cand_cell.push_back({ix, iy, iz});
      }

  // Thin to a 0.5h minimum separation; jitter keeps each point inside its own
  // cell, so only the 3^d cell neighborhood can violate it.
  const double min_d2 = 0.25 * h * h;
  std::unordered_map<CellKey, int, CellHash> kept_by_cell;
  std::vector<char> keep(cand_x.size(), 0);
  for (std::size_t i = 0; i < cand_x.size(); ++i) {
    const CellKey c = cand_cell[i];
    bool ok = true;
    for (long dx = -1; dx <= 1 && ok; ++dx)
      for (long dy = -1; dy <= 1 && ok; ++dy)
        for (long dz = -(d == 3); dz <= (d == 3) && ok; ++dz) {
          const auto it = kept_by_cell.find({c.ix + dx, c.iy + dy, c.iz + dz});
          if (it == kept_by_cell.end()) continue;
          const int j = it->second;
          const double ddx = cand_x[i] - cand_x[j];
          const double ddy = cand_y[i] - cand_y[j];
          const double ddz = cand_z[i] - cand_z[j];
          if (ddx * ddx + ddy * ddy + ddz * ddz < min_d2) ok = false;
        }
    if (ok) {
      keep[i] = 1;
      kept_by_cell.emplace(c, static_cast<int>(i));
    }
  }

  NodeSet ns;
  ns.dim = d;
  ns.h = h;
  for (std::size_t i = 0; i < cand_x.size(); ++i) {
    if (!keep[i]) continue;
    const double p[3] = {cand_x[i], cand_y[i], cand_z[i]};
    if (dom.contains_strict(p)) ns.push(p, NodeRole::Interior);
  }
  if (ns.size() == 0)
    throw std::invalid_argument("interior nodes: h too large for the domain");
  return ns;
}

NodeSet generate_boundary_nodes(const Domain& dom, double h,
                                const BoundarySplit& split) {
  if (!(h > 0.0)) throw std::invalid_argument("boundary nodes: h must be > 0");
  NodeSet ns;
  ns.dim = dom.dim();
  ns.h = h;
  switch (dom.shape) {
    case Shape::UnitDisk: {
      const long count = std::max<long>(1, std::llround(2.0 * kPi / h));
      for (long j = 0; j < count; ++j) {
        const double t = 2.0 * kPi * static_cast<double>(j) / count;
        const double p[3] = {std::cos(t), std::sin(t), 0.0};
        const double n[3] = {p[0], p[1], 0.0};
        const NodeRole role = boundary_role(split, p, 2);
        ns.push(p, role, role == NodeRole::Neumann ? n : nullptr);
      }
      break;
    }
    case Shape::Butterfly: {
      // Arclength table, then uniform-in-arclength samples of theta.
      constexpr int kPanels = 10000;
      std::vector<double> cum(kPanels + 1, 0.0);
      const double dt = 2.0 * kPi / kPanels;
      double g_prev = std::hypot(butterfly_radius(0.0),
                                 butterfly_radius_deriv(0.0));
      for (int i = 1; i <= kPanels; ++i) {
        const double t = dt * i;
        const double g = std::hypot(butterfly_radius(t),
                                    butterfly_radius_deriv(t));
        cum[i] = cum[i - 1] + 0.5 * (g_prev + g) * dt;
        g_prev = g;
      }
      const double arclen = cum[kPanels];
      const long count = std::max<long>(1, std::llround(arclen / h));
      int panel = 0;
      for (long j = 0; j < count; ++j) {
        const double s = arclen * static_cast<double>(j) / count;
        while (panel < kPanels - 1 && cum[panel + 1] < s) ++panel;
        const double frac = (s - cum[panel]) / (cum[panel + 1] - cum[panel]);
        const double t = dt * (panel + frac);
        const double r = butterfly_radius(t);
        const double p[3] = {r * std::cos(t), r * std::sin(t), 0.0};
        const NodeRole role = boundary_role(split, p, 2);
        double n[3] = {0.0, 0.0, 0.0};
        if (role == NodeRole::Neumann) outward_normal(dom, p, n);
        ns.push(p, role, role == NodeRole::Neumann ? n : nullptr);
      }
      break;
    }
    case Shape::UnitBall: {
      const long count =
          std::max<long>(1, std::llround(4.0 * kPi / (h * h)));
      const double golden = kPi * (3.0 - std::sqrt(5.0));
      for (long i = 0; i < count; ++i) {
        const double z =
            1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        const double p[3] = {rho * std::cos(phi), rho * std::sin(phi), z};
        const NodeRole role = boundary_role(split, p, 3);
        ns.push(p, role, role == NodeRole::Neumann ? p : nullptr);
      }
      break;
    }
  }
  return ns;
}

FitResult fit_nodes(const Domain& dom, const NodeSet& interior,
                    const NodeSet& boundary, int iterations) {
  const double h = interior.h > 0.0 ? interior.h : boundary.h;
  FitResult res;
  res.nodes = interior;
  if (boundary.size() == 0 || interior.size() == 0) return res;

  KdTree tree(boundary.dim, boundary.xs, boundary.ys, boundary.zs);
  const int d = interior.dim;
  const double trigger2 = 0.75 * h * 0.75 * h;
  const double support2 = 4.0 * h * h;
  const double step = 0.2 * h;
  const double clear2 = 0.25 * h * h;

  int it = 0;
  for (; it < iterations; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < res.nodes.size(); ++i) {
      double p[3];
      res.nodes.coords(i, p);
      if (tree.nearest_dist2(p) >= trigger2) continue;
      double dir[3] = {0.0, 0.0, 0.0};
      for (int b : tree.radius(p, support2)) {
        double q[3];
        boundary.coords(b, q);
        double diff[3];
        double d2 = 0.0;
        for (int a = 0; a < d; ++a) {
          diff[a] = p[a] - q[a];
          d2 += diff[a] * diff[a];
        }
        if (d2 == 0.0) continue;
        for (int a = 0; a < d; ++a) dir[a] += diff[a] / d2;
      }
      double len = 0.0;
      for (int a = 0; a < d; ++a) len += dir[a] * dir[a];
      len = std::sqrt(len);
      // A node between two boundary nodes and the boundary arc they span
      // gets an outward repulsion sum; push such nodes along the inward
      // normal of the nearest boundary node instead.
      double inward[3] = {0.0, 0.0, 0.0};
      double q[3];
      boundary.coords(static_cast<std::size_t>(tree.knn(p, 1)[0]), q);
      outward_normal(dom, q, inward);
      for (int a = 0; a < d; ++a) inward[a] = -inward[a];
      double along = 0.0;
      for (int a = 0; a < d; ++a) along += dir[a] * inward[a];
      if (len == 0.0 || along <= 0.0) {
        for (int a = 0; a < d; ++a) dir[a] = inward[a];
        len = 1.0;
      }
      double cand[3] = {p[0], p[1], p[2]};
      for (int a = 0; a < d; ++a) cand[a] += step * dir[a] / len;
      if (!dom.contains_strict(cand)) {
        for (int a = 0; a < d; ++a) cand[a] = p[a] + step * inward[a];
        if (!dom.contains_strict(cand)) continue;
      }
      res.nodes.xs[i] = cand[0];
      res.nodes.ys[i] = cand[1];
      if (d == 3) res.nodes.zs[i] = cand[2];
      moved = true;
    }
    if (!moved) break;
  }
  res.iterations_used = it;

  res.converged = true;
  for (std::size_t i = 0; i < res.nodes.size() && res.converged; ++i) {
    double p[3];
    res.nodes.coords(i, p);
    if (tree.nearest_dist2(p) < clear2 * (1.0 - 1e-12)) res.converged = false;
  }
  return res;
}

double representative_spacing(const Domain& dom, int n_interior) {
  if (n_interior <= 0)
    throw std::invalid_argument("representative spacing needs n > 0");
  return std::pow(dom.measure() / static_cast<double>(n_interior),
                  1.0 / static_cast<double>(dom.dim()));
}

}  // namespace rbffd
