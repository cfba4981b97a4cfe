#pragma once

#include <stdexcept>
#include <string>

namespace rbffd {

// Local stencil saddle system numerically singular (n < l, duplicate nodes,
// degenerate geometry). node_index is the offending evaluation node when the
// failure surfaces during operator assembly, -1 otherwise.
struct SingularStencil : std::runtime_error {
  explicit SingularStencil(const std::string& what, long node = -1)
      : std::runtime_error(what), node_index(node) {}
  long node_index;
};

// Global factorization failed or the solved system's residual exceeded the
// acceptance threshold.
struct SingularGlobalSystem : std::runtime_error {
  explicit SingularGlobalSystem(const std::string& what, double residual = -1)
      : std::runtime_error(what), linear_residual(residual) {}
  double linear_residual;
};

struct MissingNormal : std::runtime_error {
  explicit MissingNormal(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateNorm : std::runtime_error {
  explicit DegenerateNorm(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidConfig : std::runtime_error {
  explicit InvalidConfig(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rbffd
