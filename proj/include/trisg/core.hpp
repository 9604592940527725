#pragma once

// Brute-force oracle for three-generated numerical semigroups: membership,
// Apery sets, gaps, Frobenius number, genus, symmetry and the indicator
// power series. Everything here is independent of the relation-matrix
// machinery and serves as its cross-check.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "trisg/bigint.hpp"
#include "trisg/semigroup.hpp"

namespace trisg {

enum class AperyMethod {
  round_robin,  // cycle relaxation per generator, O(d) time, no heap
  dijkstra,     // binary-heap shortest paths, O(d log d)
};

struct OracleConfig {
  std::uint64_t max_apery = 100'000'000;  // residues
  AperyMethod method = AperyMethod::round_robin;
};

/// Least semigroup element in each residue class modulo `base`.
class AperyTable {
 public:
  AperyTable(std::uint64_t base, std::vector<std::uint64_t> elements)
      : base_(base), elements_(std::move(elements)) {}

  std::uint64_t base() const { return base_; }
  const std::vector<std::uint64_t>& elements() const { return elements_; }
  std::uint64_t max_element() const;

  BigInt frobenius() const;
  /// Sum over residues of (w_r - r) / base, i.e. the number of gaps.
  BigInt genus() const;
  bool contains(std::uint64_t x) const { return x >= elements_[x % base_]; }

 private:
  std::uint64_t base_;
  std::vector<std::uint64_t> elements_;
};

struct GapSet {
  std::vector<std::uint64_t> gaps;  // ascending
};

/// (x, y) with x*da + y*db = M, x, y >= 0 and y minimal; nullopt if none.
/// Requires M >= 0 and da, db >= 1.
std::optional<std::pair<BigInt, BigInt>> representable_by_pair(const BigInt& M, const BigInt& da,
                                                               const BigInt& db);

/// Throws DomainError for negative x.
bool membership(const Semigroup& s, const BigInt& x);

/// `d` must be one of the generators. Throws ResourceError when d exceeds
/// cfg.max_apery or element values would not fit in 63 bits.
AperyTable apery_set(const Semigroup& s, const BigInt& d, const OracleConfig& cfg = {});

BigInt frobenius_oracle(const Semigroup& s, const OracleConfig& cfg = {});
BigInt genus_oracle(const Semigroup& s, const OracleConfig& cfg = {});
/// Throws ResourceError when there are more than max_count gaps.
GapSet gaps(const Semigroup& s, const OracleConfig& cfg = {},
            std::uint64_t max_count = 100'000'000);
bool is_symmetric_oracle(const Semigroup& s, const OracleConfig& cfg = {});

/// Coefficients 0..N of sum_{x in S} z^x. Throws ResourceError above
/// max_len coefficients.
std::vector<std::uint8_t> hilbert_series_truncated(const Semigroup& s, std::uint64_t N,
                                                   std::uint64_t max_len = std::uint64_t{1} << 32);

struct SeriesTerm {
  std::uint64_t exponent;
  int coefficient;
  friend bool operator==(const SeriesTerm&, const SeriesTerm&) = default;
};

/// Nonzero coefficients, up to degree N, of the indicator series times
/// (1 - z^d1)(1 - z^d2)(1 - z^d3). The series is regenerated block by block
/// from the additive recurrence, so memory stays O(d1 + d2 + d3).
std::vector<SeriesTerm> series_times_denominator(const Semigroup& s, std::uint64_t N);

}  // namespace trisg
