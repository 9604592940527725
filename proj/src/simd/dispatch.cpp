#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "trisg/simd/kernels.hpp"

namespace trisg::simd {
namespace {

bool cpu_has_avx2() {
#if defined(TRISG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("TRISG_SIMD")) {
    if (std::string(env) == "scalar") return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool backend_available(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("SIMD backend not available on this CPU: " +
                                std::string(backend_name(b)));
  }
  current().store(b, std::memory_order_relaxed);
}

const Kernels& kernels_for(Backend b) {
#if defined(TRISG_HAVE_AVX2)
  if (b == Backend::avx2 && cpu_has_avx2()) return avx2_kernels();
#endif
  (void)b;
  return scalar_kernels();
}

const Kernels& kernels() { return kernels_for(active_backend()); }

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace trisg::simd
