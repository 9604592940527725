#pragma once

// Structural symmetry of three-generated semigroups: one generator in the
// semigroup of the other two, or the gluing criterion d1 = a*delta1,
// d2 = a*delta2 with the third generator in <delta1, delta2>. Also the
// Diophantine instances behind the classification of symmetric R_n^k for
// k = 2, 3, 4, with sign certificates and finite scans, and the scan of
// symmetric R_{2p+1}^k for larger k.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trisg/bigint.hpp"
#include "trisg/core.hpp"
#include "trisg/semigroup.hpp"

namespace trisg {

struct SymmetryWitness {
  enum class Kind {
    none,
    membership,  // gen(target) = x*gen(first) + y*gen(second)
    gluing,      // gen(first) = a*delta1, gen(second) = a*delta2, gen(target) = x*delta1 + y*delta2
  };
  Kind kind = Kind::none;
  int target = -1, first = -1, second = -1;  // generator indices
  BigInt x, y;
  BigInt a, delta1, delta2;  // gluing only
  /// F of the semigroup: first*second - first - second for membership, and
  /// a*(delta1*delta2 - delta1 - delta2) + (a - 1)*gen(target) for gluing.
  std::optional<BigInt> F;

  bool symmetric() const { return kind != Kind::none; }
  /// Re-checks the witness against s by direct arithmetic.
  bool verify(const Semigroup& s) const;
  /// "256 = 16*16 + 0*81", "625 = 34*16 + 1*81 with a = 16"
  std::string describe(const Semigroup& s) const;
};

std::string_view kind_name(SymmetryWitness::Kind k);

/// Tries each generator against the other two, then each pair with a common
/// factor. kind=none is an ordinary result.
SymmetryWitness structural_symmetry(const Semigroup& s);

struct DescartesCertificate {
  int sign = 0;            // +1 or -1: the sign every nonzero coefficient has
  std::vector<int> signs;  // per coefficient, ascending degree
};

/// Certificate iff the nonzero coefficients (ascending degree) all have one
/// sign, so the polynomial has no positive real root. Throws DomainError for
/// the zero polynomial.
std::optional<DescartesCertificate> descartes_positive_root_certificate(const std::vector<BigInt>& coeffs);

/// Positive integer roots in ascending order (ascending-degree coefficients).
/// A zero root is factored out first. Throws DomainError for the zero
/// polynomial.
std::vector<BigInt> integer_root_scan(const std::vector<BigInt>& coeffs);

/// c0 + c1*x1 + c2*x2 in the two lattice parameters.
struct LinearForm {
  BigInt c0, c1, c2;
  BigInt eval(const BigInt& x1, const BigInt& x2) const { return c0 + c1 * x1 + c2 * x2; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// A box or shifted orthant: lo[i] <= x_i <= hi[i], hi absent for a half-line.
struct LatticeBox {
  std::array<long long, 2> lo{1, 1};
  std::array<std::optional<long long>, 2> hi;

  bool contains(long long x1, long long x2) const;
  bool bounded() const { return hi[0] && hi[1]; }
  std::string to_string() const;
};

struct LatticeRegion {
  enum class Tag { certificate, finite };
  std::string name;  // "E3", "Hbar7"
  Tag tag = Tag::certificate;
  std::vector<LatticeBox> boxes;  // the region is their union
  std::string note;

  bool contains(long long x1, long long x2) const;
  /// Lattice points of a finite region. Throws DomainError for an unbounded one.
  std::vector<std::array<long long, 2>> points() const;
};

/// sum_i x_i * (alpha_i*z + beta_i)^k = (alpha_0*z + beta_0)^k with x_1, x_2
/// positive integers and z >= z_min, shifted to y = z - offset.
struct DiophantineInstance {
  std::string name;           // "x4a, k=3"
  unsigned k = 0;
  std::string params;         // "e1,e2"
  std::string variable;       // original variable, "n" or "q"
  std::string shifted;        // "t"
  long long offset = 0;       // shifted = variable - offset
  long long z_min = 0;        // least admissible value of the original variable
  std::array<std::array<long long, 2>, 3> base{};  // {alpha, beta}: lhs, term of x1, term of x2
  /// n of the semigroup at a value z of the original variable: n = n_scale*z + n_shift.
  long long n_scale = 1, n_shift = 0;
  std::vector<LinearForm> forms;  // coefficient of shifted^d, ascending d
  std::vector<LatticeRegion> regions;

  /// Coefficients in the original variable at (x1, x2), ascending degree.
  std::vector<BigInt> original_poly(const BigInt& x1, const BigInt& x2) const;
  std::vector<BigInt> shifted_poly(const BigInt& x1, const BigInt& x2) const;
};

/// Builds the instance and its coefficient forms from the equation data.
DiophantineInstance make_instance(std::string name, unsigned k, std::array<std::array<long long, 2>, 3> base,
                                  long long offset, long long z_min);

/// True iff the region is a certificate region and one sign makes every
/// coefficient form nonnegative over it, with some form strictly signed
/// throughout. Forms are linear, so this is decided at box vertices plus the
/// parameter coefficients along unbounded directions. Throws DomainError
/// for a box unbounded below or a finite-tagged region.
bool region_sign_certificate(const DiophantineInstance& inst, const LatticeRegion& region);

struct DiophantineSolution {
  long long x1 = 0, x2 = 0;
  BigInt z;  // original variable
  BigInt n;  // the semigroup index
  friend bool operator==(const DiophantineSolution&, const DiophantineSolution&) = default;
};

struct RegionCheck {
  std::string region;
  bool passed = false;
  std::string detail;
};

struct FiniteScan {
  std::string region;
  std::size_t equations = 0;
  std::vector<DiophantineSolution> solutions;
};

struct InstanceReport {
  std::string name;
  bool partition_ok = false;
  std::vector<std::string> partition_issues;  // first few offending points
  std::vector<RegionCheck> certificates;
  std::vector<FiniteScan> finite;
  /// Values z_min <= z <= offset not covered by the shifted polynomial's
  /// positive roots, solved directly as linear equations in x1, x2.
  std::vector<DiophantineSolution> boundary;
  std::vector<DiophantineSolution> solutions;  // finite and boundary together

  bool certificates_ok() const;
};

struct PropositionReport {
  int which = 0;
  unsigned k = 0;
  std::vector<long long> claimed;
  std::vector<InstanceReport> instances;
  /// n below the instances' ranges, classified directly.
  std::vector<long long> direct;
  /// direct plus the n of every solution.
  std::vector<long long> derived;
  long long scan_max = 0;
  std::vector<long long> scan_symmetric;  // structural_symmetry over 3 <= n <= scan_max
  std::size_t oracle_checked = 0;
  std::vector<long long> oracle_disagreements;
  bool verdict = false;
};

struct ProveOptions {
  long long scan_max = 2000;
  long long partition_window = 200;
  /// The oracle confirms the structural scan where d1 is at most this.
  std::uint64_t oracle_max_d1 = 1'000'000;
};

/// The instances of proposition 1, 2 or 3 (k = 2, 3, 4): the membership
/// instance first, then the gluing one. Throws DomainError for other values.
std::vector<DiophantineInstance> proposition_instances(int which);
std::vector<long long> proposition_claim(int which);

InstanceReport check_instance(const DiophantineInstance& inst, long long window = 200);
PropositionReport verify_proposition(int which, const ProveOptions& opt = {});

struct PowerHit {
  long long p = 0;
  unsigned k = 0;
  SymmetryWitness witness;
};

/// R_{2p+1}^k symmetric by structural_symmetry, ordered by (k, p).
std::vector<PowerHit> symmetric_power_scan(long long p_lo, long long p_hi, unsigned k_lo, unsigned k_hi);

}  // namespace trisg
