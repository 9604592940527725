// AVX2 kernels. Compiled with -mavx2; only called after a runtime CPU check.

#include <immintrin.h>

#include "trisg/simd/kernels.hpp"

namespace trisg::simd {
namespace {

void or3_avx2(std::uint8_t* out, const std::uint8_t* a, const std::uint8_t* b,
              const std::uint8_t* c, std::size_t len) {
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_or_si256(_mm256_or_si256(va, vb), vc));
  }
  for (; i < len; ++i) out[i] = static_cast<std::uint8_t>(a[i] | b[i] | c[i]);
}

inline __m256i load_back(const std::uint8_t* p, std::size_t lag) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p - lag));
}

void numerator_scan_avx2(const std::uint8_t* cur, std::size_t len, const SubsetLags& lags,
                         std::vector<std::pair<std::size_t, int>>& hits) {
  const std::size_t* l = lags.lag;
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    const std::uint8_t* p = cur + i;
    __m256i pos = _mm256_add_epi8(_mm256_add_epi8(load_back(p, 0), load_back(p, l[4])),
                                  _mm256_add_epi8(load_back(p, l[5]), load_back(p, l[6])));
    __m256i neg = _mm256_add_epi8(_mm256_add_epi8(load_back(p, l[1]), load_back(p, l[2])),
                                  _mm256_add_epi8(load_back(p, l[3]), load_back(p, l[7])));
    __m256i c = _mm256_sub_epi8(pos, neg);
    auto mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(c, zero)));
    if (mask != 0xFFFFFFFFu) {
      alignas(32) std::int8_t vals[32];
      _mm256_store_si256(reinterpret_cast<__m256i*>(vals), c);
      unsigned nz = ~mask;
      while (nz) {
        int bit = __builtin_ctz(nz);
        hits.emplace_back(i + static_cast<std::size_t>(bit), int(vals[bit]));
        nz &= nz - 1;
      }
    }
  }
  for (; i < len; ++i) {
    const std::uint8_t* p = cur + i;
    int c = int(p[0]) - int(*(p - l[1])) - int(*(p - l[2])) - int(*(p - l[3])) +
            int(*(p - l[4])) + int(*(p - l[5])) + int(*(p - l[6])) - int(*(p - l[7]));
    if (c != 0) hits.emplace_back(i, c);
  }
}

// Eight lanes in two registers; lane l of block b tracks w = w0 + 4b + l.
std::uint64_t first_hit_avx2(const ScanParams& p, std::uint64_t w_begin, std::uint64_t w_end) {
  if (w_begin >= w_end) return 0;
  using u128 = unsigned __int128;
  constexpr std::uint64_t kLanes = 8;
  const std::uint64_t A = p.modulus;

  alignas(32) std::uint64_t r[kLanes], thr[kLanes], acc[kLanes];
  for (std::uint64_t l = 0; l < kLanes; ++l) {
    const std::uint64_t w = w_begin + l;
    r[l] = static_cast<std::uint64_t>((u128(w) * p.step) % A);
    const u128 prod = u128(w) * p.numer;
    const u128 t = prod / p.denom;
    if (t >= A) {
      // Every lane at or beyond this w hits; the earlier lanes were checked
      // by the caller-visible order below.
      for (std::uint64_t e = 0; e < l; ++e) {
        if (r[e] <= thr[e] && w_begin + e < w_end) return w_begin + e;
      }
      return w < w_end ? w : 0;
    }
    thr[l] = static_cast<std::uint64_t>(t);
    acc[l] = static_cast<std::uint64_t>(prod % p.denom);
  }

  const std::uint64_t c_step = static_cast<std::uint64_t>((u128(kLanes) * p.step) % A);
  const u128 lprod = u128(kLanes) * p.numer;
  const std::uint64_t q_step = static_cast<std::uint64_t>(lprod / p.denom);
  const std::uint64_t r_step = static_cast<std::uint64_t>(lprod % p.denom);

  __m256i r0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(r));
  __m256i r1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(r + 4));
  __m256i t0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(thr));
  __m256i t1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(thr + 4));
  __m256i a0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(acc));
  __m256i a1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(acc + 4));

  const __m256i vA = _mm256_set1_epi64x(static_cast<long long>(A));
  const __m256i vAm1 = _mm256_set1_epi64x(static_cast<long long>(A - 1));
  const __m256i vD = _mm256_set1_epi64x(static_cast<long long>(p.denom));
  const __m256i vDm1 = _mm256_set1_epi64x(static_cast<long long>(p.denom - 1));
  const __m256i vC = _mm256_set1_epi64x(static_cast<long long>(c_step));
  const __m256i vQ = _mm256_set1_epi64x(static_cast<long long>(q_step));
  const __m256i vR = _mm256_set1_epi64x(static_cast<long long>(r_step));

  std::uint64_t w = w_begin;
  for (; w + kLanes <= w_end; w += kLanes) {
    // miss where r > thr
    const __m256i m0 = _mm256_cmpgt_epi64(r0, t0);
    const __m256i m1 = _mm256_cmpgt_epi64(r1, t1);
    const unsigned miss = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(m0))) |
                          (static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(m1))) << 4);
    if (miss != 0xFFu) return w + static_cast<std::uint64_t>(__builtin_ctz(~miss & 0xFFu));

    r0 = _mm256_add_epi64(r0, vC);
    r1 = _mm256_add_epi64(r1, vC);
    r0 = _mm256_sub_epi64(r0, _mm256_and_si256(_mm256_cmpgt_epi64(r0, vAm1), vA));
    r1 = _mm256_sub_epi64(r1, _mm256_and_si256(_mm256_cmpgt_epi64(r1, vAm1), vA));

    a0 = _mm256_add_epi64(a0, vR);
    a1 = _mm256_add_epi64(a1, vR);
    const __m256i c0 = _mm256_cmpgt_epi64(a0, vDm1);
    const __m256i c1 = _mm256_cmpgt_epi64(a1, vDm1);
    a0 = _mm256_sub_epi64(a0, _mm256_and_si256(c0, vD));
    a1 = _mm256_sub_epi64(a1, _mm256_and_si256(c1, vD));
    // carry mask is all ones (-1), so subtracting it adds one
    t0 = _mm256_sub_epi64(_mm256_add_epi64(t0, vQ), c0);
    t1 = _mm256_sub_epi64(_mm256_add_epi64(t1, vQ), c1);
  }

  _mm256_store_si256(reinterpret_cast<__m256i*>(r), r0);
  _mm256_store_si256(reinterpret_cast<__m256i*>(r + 4), r1);
  _mm256_store_si256(reinterpret_cast<__m256i*>(thr), t0);
  _mm256_store_si256(reinterpret_cast<__m256i*>(thr + 4), t1);
  for (std::uint64_t l = 0; w + l < w_end; ++l) {
    if (r[l] <= thr[l]) return w + l;
  }
  return 0;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{or3_avx2, numerator_scan_avx2, first_hit_avx2};
  return k;
}

}  // namespace trisg::simd
