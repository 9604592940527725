#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "trisg/core.hpp"
#include "trisg/simd/kernels.hpp"

using namespace trisg;
using simd::Backend;

namespace {

bool have_avx2() { return simd::backend_available(Backend::avx2); }

struct BackendGuard {
  Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

// Plain restatement of the scan definition.
std::uint64_t first_hit_naive(const simd::ScanParams& p, std::uint64_t b, std::uint64_t e) {
  using u128 = unsigned __int128;
  for (std::uint64_t w = b; w < e; ++w) {
    const u128 r = u128(w) * p.step % p.modulus;
    const u128 thr = u128(w) * p.numer / p.denom;
    if (r <= thr) return w;
  }
  return 0;
}

}  // namespace

TEST_CASE("backend selection") {
  BackendGuard guard;
  simd::set_backend(Backend::scalar);
  CHECK(simd::active_backend() == Backend::scalar);
  CHECK(simd::backend_name(Backend::avx2) == "avx2");
  if (!have_avx2()) CHECK_THROWS(simd::set_backend(Backend::avx2));
}

TEST_CASE("or3 equivalence") {
  if (!have_avx2()) return;
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.1);
  for (std::size_t len : {0u, 1u, 31u, 32u, 33u, 100u, 1000u}) {
    std::vector<std::uint8_t> a(len), b(len), c(len), o1(len), o2(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = coin(rng);
      b[i] = coin(rng);
      c[i] = coin(rng);
    }
    simd::kernels_for(Backend::scalar).or3(o1.data(), a.data(), b.data(), c.data(), len);
    simd::kernels_for(Backend::avx2).or3(o2.data(), a.data(), b.data(), c.data(), len);
    CHECK(o1 == o2);
  }
}

TEST_CASE("numerator scan equivalence") {
  if (!have_avx2()) return;
  std::mt19937_64 rng(2);
  std::bernoulli_distribution coin(0.5);
  const std::size_t l1 = 7, l2 = 11, l3 = 13;
  simd::SubsetLags lags{{0, l1, l2, l3, l1 + l2, l1 + l3, l2 + l3, l1 + l2 + l3}};
  const std::size_t pad = l1 + l2 + l3;
  for (std::size_t len : {1u, 32u, 65u, 500u, 4096u}) {
    std::vector<std::uint8_t> buf(pad + len);
    for (auto& v : buf) v = coin(rng);
    std::vector<std::pair<std::size_t, int>> h1, h2;
    simd::kernels_for(Backend::scalar).numerator_scan(buf.data() + pad, len, lags, h1);
    simd::kernels_for(Backend::avx2).numerator_scan(buf.data() + pad, len, lags, h2);
    CHECK(h1 == h2);
    CHECK_FALSE(h1.empty());
  }
}

TEST_CASE("first hit scan") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 3000; ++iter) {
    const std::uint64_t cap = iter < 1500 ? 200 : (std::uint64_t{1} << 40);
    std::uniform_int_distribution<std::uint64_t> dist(1, cap);
    simd::ScanParams p{};
    p.modulus = dist(rng);
    p.step = dist(rng) % p.modulus;
    p.denom = dist(rng);
    p.numer = dist(rng) / (iter % 3 + 1);
    const std::uint64_t begin = 1 + dist(rng) % 50;
    const std::uint64_t end = begin + dist(rng) % 300;
    const std::uint64_t want = first_hit_naive(p, begin, end);
    CHECK(simd::kernels_for(Backend::scalar).first_hit(p, begin, end) == want);
    if (have_avx2()) CHECK(simd::kernels_for(Backend::avx2).first_hit(p, begin, end) == want);
  }
}

TEST_CASE("streamed series across block boundaries") {
  // R_5^4 is symmetric; the product has four terms and spans many blocks.
  Semigroup s = Semigroup::power_family(4, 5);
  const std::uint64_t N = 2'500'000;
  auto table = testoracle::member_table(256, 625, 1296, N);
  const long sub[8][2] = {{0, 1},      {256, -1},   {625, -1},   {1296, -1},
                          {881, 1},    {1552, 1},   {1921, 1},   {2177, -1}};
  std::vector<SeriesTerm> expect;
  for (std::uint64_t i = 0; i <= N; ++i) {
    long c = 0;
    for (auto& t : sub) {
      if (static_cast<long>(i) >= t[0]) c += t[1] * table[i - static_cast<std::uint64_t>(t[0])];
    }
    if (c != 0) expect.push_back({i, static_cast<int>(c)});
  }
  BackendGuard guard;
  simd::set_backend(Backend::scalar);
  CHECK(series_times_denominator(s, N) == expect);
  if (have_avx2()) {
    simd::set_backend(Backend::avx2);
    CHECK(series_times_denominator(s, N) == expect);
  }
}
