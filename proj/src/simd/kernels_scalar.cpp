// Scalar reference kernels. This translation unit is compiled with
// auto-vectorization disabled so it stays a faithful reference.

#include "trisg/simd/kernels.hpp"

namespace trisg::simd {
namespace {

void or3_scalar(std::uint8_t* out, const std::uint8_t* a, const std::uint8_t* b,
                const std::uint8_t* c, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>(a[i] | b[i] | c[i]);
}

void numerator_scan_scalar(const std::uint8_t* cur, std::size_t len, const SubsetLags& lags,
                           std::vector<std::pair<std::size_t, int>>& hits) {
  const std::size_t* l = lags.lag;
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t* p = cur + i;
    int c = int(p[0]) - int(*(p - l[1])) - int(*(p - l[2])) - int(*(p - l[3])) +
            int(*(p - l[4])) + int(*(p - l[5])) + int(*(p - l[6])) - int(*(p - l[7]));
    if (c != 0) hits.emplace_back(i, c);
  }
}

std::uint64_t first_hit_scalar(const ScanParams& p, std::uint64_t w_begin, std::uint64_t w_end) {
  if (w_begin >= w_end) return 0;
  using u128 = unsigned __int128;
  const std::uint64_t A = p.modulus;
  std::uint64_t r = static_cast<std::uint64_t>((u128(w_begin) * p.step) % A);
  const u128 prod = u128(w_begin) * p.numer;
  const u128 thr0 = prod / p.denom;
  if (thr0 >= A) return w_begin;
  std::uint64_t thr = static_cast<std::uint64_t>(thr0);
  std::uint64_t acc = static_cast<std::uint64_t>(prod % p.denom);
  const std::uint64_t qstep = p.numer / p.denom;
  const std::uint64_t rstep = p.numer % p.denom;
  for (std::uint64_t w = w_begin; w < w_end; ++w) {
    if (r <= thr) return w;
    r += p.step;
    if (r >= A) r -= A;
    acc += rstep;
    thr += qstep;
    if (acc >= p.denom) {
      acc -= p.denom;
      ++thr;
    }
  }
  return 0;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{or3_scalar, numerator_scan_scalar, first_hit_scalar};
  return k;
}

}  // namespace trisg::simd
