#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version; the active one is chosen at runtime from CPU
// features (override with TRISG_SIMD=scalar in the environment or
// set_backend()). The two must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace trisg::simd {

enum class Backend { scalar, avx2 };

/// Lags of the eight subset sums of three generators, in the order
/// 0, d1, d2, d3, d1+d2, d1+d3, d2+d3, d1+d2+d3. Subsets of even size carry
/// sign +1, odd size -1.
struct SubsetLags {
  std::size_t lag[8];
};

/// Parameters of the representability scan used by the relation search.
///
/// For w = 1, 2, ... the scan tracks r(w) = (w * step) mod modulus and
/// thr(w) = floor(w * numer / denom); w is a hit when r(w) <= thr(w).
/// All inputs must be below 2^59.
struct ScanParams {
  std::uint64_t modulus;  // A > 0
  std::uint64_t step;     // c < A
  std::uint64_t numer;    // the multiplied generator
  std::uint64_t denom;    // B > 0
};

inline constexpr std::uint64_t kScanInputLimit = std::uint64_t{1} << 59;

struct Kernels {
  /// out[i] = a[i] | b[i] | c[i].
  void (*or3)(std::uint8_t* out, const std::uint8_t* a, const std::uint8_t* b,
              const std::uint8_t* c, std::size_t len);

  /// Coefficients of indicator * (1 - z^d1)(1 - z^d2)(1 - z^d3) for positions
  /// [0, len) relative to `cur`; `cur[-lag]` must be readable for every lag.
  /// Appends (position, coefficient) for every nonzero coefficient.
  void (*numerator_scan)(const std::uint8_t* cur, std::size_t len, const SubsetLags& lags,
                         std::vector<std::pair<std::size_t, int>>& hits);

  /// Smallest w in [w_begin, w_end) that is a hit, or 0 if none.
  std::uint64_t (*first_hit)(const ScanParams& p, std::uint64_t w_begin, std::uint64_t w_end);
};

const Kernels& scalar_kernels();
#if defined(TRISG_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif

bool backend_available(Backend b);
Backend active_backend();
/// Throws std::invalid_argument when the backend is unavailable on this CPU.
void set_backend(Backend b);
const Kernels& kernels();
const Kernels& kernels_for(Backend b);
std::string_view backend_name(Backend b);

}  // namespace trisg::simd
