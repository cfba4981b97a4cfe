#include "rbffd/nodeset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rbffd/errors.hpp"

namespace rbffd {

std::size_t NodeSet::count(NodeRole r) const {
  return static_cast<std::size_t>(std::count(roles.begin(), roles.end(), r));
}

void NodeSet::push(const double* x, NodeRole role, const double* normal) {
  xs.push_back(x[0]);
  ys.push_back(x[1]);
  if (dim == 3) zs.push_back(x[2]);
  roles.push_back(role);
  for (int a = 0; a < dim; ++a) normals.push_back(normal ? normal[a] : 0.0);
}

std::vector<int> NodeSet::indices(NodeRole r) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == r) out.push_back(static_cast<int>(i));
  return out;
}

NodeSet merge(const NodeSet& a, const NodeSet& b) {
  if (a.dim != b.dim) throw std::invalid_argument("merge: dimension mismatch");
  NodeSet out = a;
  out.xs.insert(out.xs.end(), b.xs.begin(), b.xs.end());
  out.ys.insert(out.ys.end(), b.ys.begin(), b.ys.end());
  out.zs.insert(out.zs.end(), b.zs.begin(), b.zs.end());
  out.roles.insert(out.roles.end(), b.roles.begin(), b.roles.end());
  out.normals.insert(out.normals.end(), b.normals.begin(), b.normals.end());
  if (out.h == 0.0) out.h = b.h;
  return out;
}

namespace {

void format_double(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_nodeset_csv(const NodeSet& ns, std::ostream& os) {
  os << (ns.dim == 3 ? "x,y,z,role,nx,ny,nz\n" : "x,y,role,nx,ny\n");
  double x[3], n[3];
  for (std::size_t i = 0; i < ns.size(); ++i) {
    ns.coords(i, x);
    for (int a = 0; a < ns.dim; ++a) {
      format_double(os, x[a]);
      os << ',';
    }
    os << static_cast<char>(ns.roles[i]);
    const bool has_normal = ns.roles[i] == NodeRole::Neumann;
    for (int a = 0; a < ns.dim; ++a) n[a] = ns.normals[i * ns.dim + a];
    for (int a = 0; a < ns.dim; ++a) {
      os << ',';
      if (has_normal) format_double(os, n[a]);
    }
    os << '\n';
  }
}

void write_nodeset_csv(const NodeSet& ns, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_nodeset_csv(ns, os);
}

NodeSet read_nodeset_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty node CSV");
  NodeSet ns;
  if (line == "x,y,z,role,nx,ny,nz")
    ns.dim = 3;
  else if (line == "x,y,role,nx,ny")
    ns.dim = 2;
  else
    throw std::runtime_error("unrecognized node CSV header: " + line);

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    while (fields.size() < static_cast<std::size_t>(2 * ns.dim + 1))
      fields.push_back("");
    double x[3] = {0, 0, 0}, n[3] = {0, 0, 0};
    for (int a = 0; a < ns.dim; ++a) x[a] = std::stod(fields[a]);
    const std::string& role_s = fields[ns.dim];
    if (role_s.size() != 1 ||
        (role_s[0] != 'I' && role_s[0] != 'D' && role_s[0] != 'N'))
      throw std::runtime_error("bad role in node CSV: " + role_s);
    const NodeRole role = static_cast<NodeRole>(role_s[0]);
    if (role == NodeRole::Neumann)
      for (int a = 0; a < ns.dim; ++a) n[a] = std::stod(fields[ns.dim + 1 + a]);
    ns.push(x, role, role == NodeRole::Neumann ? n : nullptr);
  }
  return ns;
}

NodeSet read_nodeset_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for read: " + path);
  return read_nodeset_csv(is);
}

}  // namespace rbffd
