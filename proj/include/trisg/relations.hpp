#pragma once

// Minimal relations of a nonsymmetric three-generated semigroup and the
// invariants they determine: syzygy degrees, Frobenius number, genus and the
// Hilbert series numerator.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trisg/bigint.hpp"
#include "trisg/error.hpp"
#include "trisg/semigroup.hpp"

namespace trisg {

/// The 3x3 minimal relation matrix, stored as magnitudes. The signed matrix
/// has a_jj on the diagonal and -a_ij off it, so that it annihilates
/// (d1, d2, d3)^T.
class RelationMatrix {
 public:
  using Entries = std::array<std::array<BigInt, 3>, 3>;

  RelationMatrix() = default;
  explicit RelationMatrix(Entries magnitudes);

  /// Zero-based indices.
  const BigInt& at(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  BigInt signed_at(int i, int j) const { return i == j ? at(i, j) : BigInt(-at(i, j)); }
  const Entries& magnitudes() const { return a_; }

  /// "[[7,-1,-1],[-1,18,-9],[-6,-17,10]]"
  std::string to_string() const;

  friend bool operator==(const RelationMatrix& x, const RelationMatrix& y) { return x.a_ == y.a_; }

 private:
  Entries a_;
};

/// Failure modes of the minimal relation search.
class RelationError : public DomainError {
 public:
  enum class Kind { symmetric_or_degenerate, ambiguous };
  RelationError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct RelationConfig {
  /// Candidate multipliers examined per diagonal entry before giving up.
  std::uint64_t max_iterations = 1'000'000'000;
  /// Representations of a_jj * d_j enumerated per row.
  std::size_t max_representations = 1'000'000;
  /// Inputs below this bound take the fixed-width scan; larger ones (or all,
  /// with 0) go through multiprecision arithmetic.
  std::uint64_t fixed_width_limit = std::uint64_t{1} << 59;
};

/// Least a_jj >= 2 with a_jj * d_j in the semigroup generated by the other
/// two generators, together with the off-diagonal entries. Throws
/// RelationError when no choice of representations satisfies the column
/// identities (symmetric or degenerate input) or more than one does, and
/// ResourceError when the iteration budget runs out.
RelationMatrix minimal_relation_matrix(const Semigroup& s, const RelationConfig& cfg = {});

/// Least v >= 2 with v * d_j representable by the other generators.
/// `j` is zero-based.
BigInt minimal_diagonal(const Semigroup& s, int j, const RelationConfig& cfg = {});

struct SyzygyData {
  BigInt D0, D1, D2, D3;
  BigInt b11, b22;
  BigInt F1, F2, F;
  BigInt G;
};

SyzygyData syzygy_data(const RelationMatrix& a, const Semigroup& s);

struct SignedExponent {
  int sign;
  BigInt exponent;
  friend bool operator==(const SignedExponent&, const SignedExponent&) = default;
};

/// 1 - z^{a11 d1} - z^{a22 d2} - z^{a33 d3} + z^{b11} + z^{b22}, in that
/// order. Throws InternalError when a11 d1 + a22 d2 + a33 d3 != b11 + b22.
std::vector<SignedExponent> hilbert_numerator(const RelationMatrix& a, const Semigroup& s);

struct MatrixReport {
  std::array<bool, 3> row_relation{};       // a_ii d_i = sum of the other two terms
  std::array<bool, 3> column_identity{};    // a11 = a21 + a31, ...
  std::array<bool, 3> generator_recovery{}; // d1 = a22 a33 - a23 a32, ...
  std::array<bool, 3> row_gcd{};            // gcd of each row is 1
  bool diagonal_at_least_two = false;
  /// Every off-diagonal entry is at least 1. Degenerate matrices (zero
  /// entries) fail only this flag and possibly the identities.
  bool strictly_positive = false;

  bool rows_ok() const { return row_relation[0] && row_relation[1] && row_relation[2]; }
  /// Everything except strict positivity.
  bool identities_ok() const;
  bool all_ok() const { return identities_ok() && strictly_positive && diagonal_at_least_two; }
  std::vector<std::string> failures() const;
};

MatrixReport validate_matrix(const RelationMatrix& a, const Semigroup& s);

}  // namespace trisg
