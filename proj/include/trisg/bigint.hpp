#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace trisg {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline BigInt big_signed(std::int64_t v) {
  if (v >= 0) return big(static_cast<std::uint64_t>(v));
  BigInt r = big(static_cast<std::uint64_t>(-(v + 1)));
  r += 1;
  return -r;
}

/// Value as uint64 if it is nonnegative and fits.
inline std::optional<std::uint64_t> to_u64(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return count == 0 ? 0 : out;
}

inline std::optional<std::int64_t> to_i64(const BigInt& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 62) return std::nullopt;
  auto mag = to_u64(abs(v));
  if (!mag) return std::nullopt;
  auto s = static_cast<std::int64_t>(*mag);
  return sgn(v) < 0 ? -s : s;
}

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// Floor division and nonnegative remainder (b > 0).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt floor_mod(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Inverse of a modulo m; m > 1 and gcd(a, m) = 1 required.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) r = 0;
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace trisg
