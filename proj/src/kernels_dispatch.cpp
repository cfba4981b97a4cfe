#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rbffd/kernels.hpp"

namespace rbffd::kernels {

Sqdist2Fn sqdist2 = &scalar::sqdist2;
Sqdist3Fn sqdist3 = &scalar::sqdist3;
PhsOddFn phs_odd = &scalar::phs_odd;

namespace {

std::string active = "scalar";

void use_scalar() {
  sqdist2 = &scalar::sqdist2;
  sqdist3 = &scalar::sqdist3;
  phs_odd = &scalar::phs_odd;
  active = "scalar";
}

void use_avx2() {
  sqdist2 = &avx2::sqdist2;
  sqdist3 = &avx2::sqdist3;
  phs_odd = &avx2::phs_odd;
  active = "avx2";
}

struct Startup {
  Startup() {
    const char* env = std::getenv("RBFFD_KERNELS");
    select_backend(env ? env : "auto");
  }
};
const Startup startup;

}  // namespace

std::string backend() { return active; }

void select_backend(const std::string& name) {
  if (name == "scalar") {
    use_scalar();
  } else if (name == "avx2") {
    if (!__builtin_cpu_supports("avx2"))
      throw std::invalid_argument("avx2 kernels requested but not supported");
    use_avx2();
  } else if (name == "auto" || name.empty()) {
    if (__builtin_cpu_supports("avx2"))
      use_avx2();
    else
      use_scalar();
  } else {
    throw std::invalid_argument("unknown kernel backend: " + name);
  }
}

}  // namespace rbffd::kernels
