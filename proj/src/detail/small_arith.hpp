#pragma once

// Fixed-width helpers shared by the oracle and the relation search. Callers
// guarantee every argument is below 2^62.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>

namespace trisg::detail {

using u128 = unsigned __int128;

/// Inverse of a modulo m for coprime a, m with m > 1.
inline std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t inv = old_s % static_cast<std::int64_t>(m);
  if (inv < 0) inv += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(inv);
}

/// (x, y) with x*a + y*b = M, x, y >= 0 and y minimal.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> representable_by_pair_u64(
    std::uint64_t M, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  if (M % g != 0) return std::nullopt;
  const std::uint64_t A = a / g, B = b / g, Mg = M / g;
  std::uint64_t y = 0;
  if (A != 1) y = static_cast<std::uint64_t>(u128(Mg % A) * mod_inverse_u64(B % A, A) % A);
  if (u128(y) * B > Mg) return std::nullopt;
  return std::make_pair((Mg - y * B) / A, y);
}

}  // namespace trisg::detail
