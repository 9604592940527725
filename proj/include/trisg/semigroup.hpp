#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "trisg/bigint.hpp"

namespace trisg {

/// Records that a semigroup was built as <(n-1)^k, n^k, (n+1)^k>.
struct Provenance {
  unsigned k;
  std::uint64_t n;
};

/// A numerical semigroup given by three generators.
///
/// Generators are sorted ascending on construction. gcd must be 1 and the
/// smallest generator at least 3. Repeated or non-minimal generators are
/// accepted; has_repeated_generator() reports the former, and
/// structural_symmetry() detects the latter.
class Semigroup {
 public:
  Semigroup(BigInt a, BigInt b, BigInt c);

  /// R_n^k = <(n-1)^k, n^k, (n+1)^k>; requires n >= 3, k >= 1.
  static Semigroup power_family(unsigned k, std::uint64_t n);

  const BigInt& gen(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  const std::array<BigInt, 3>& gens() const { return gens_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  bool has_repeated_generator() const { return gens_[0] == gens_[1] || gens_[1] == gens_[2]; }

  /// Generators as uint64 when every one is below `limit`.
  std::optional<std::array<std::uint64_t, 3>> small_gens(std::uint64_t limit) const;

  BigInt generator_sum() const { return gens_[0] + gens_[1] + gens_[2]; }

  std::string to_string() const;

  friend bool operator==(const Semigroup& a, const Semigroup& b) { return a.gens_ == b.gens_; }

 private:
  std::array<BigInt, 3> gens_;
  std::optional<Provenance> provenance_;
};

}  // namespace trisg
