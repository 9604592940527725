#pragma once

// Residue-class structure of R_n^k: exact polynomial fits of the minimal
// relation matrix over n = T*m + j, the +-j duality of the k=4 families,
// detection of the period T_k and the degree pattern of the fitted entries.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trisg/bigint.hpp"
#include "trisg/polyq.hpp"
#include "trisg/relations.hpp"

namespace trisg {

/// The polynomial of least degree through the points, returned only when
/// that degree is at most #points - 3, so the data over-determines it.
/// With max_degree, only polynomials up to that degree are tried. Throws
/// DomainError for repeated abscissae or fewer than 2 points.
std::optional<PolyQ> fit_polynomial_exact(const std::vector<std::pair<long long, Rational>>& points,
                                          std::optional<int> max_degree = std::nullopt);

/// j reduced into (-T/2, T/2].
long long canonical_residue(long long T, long long j);

/// Degree bound for entry (i, j), zero-based: q for k = 2q; for k = 2q+1,
/// q+1 on the upper-left 2x2 block and q elsewhere.
int entry_degree_bound(unsigned k, int i, int j);
/// 3q for k = 2q, 3q+2 for k = 2q+1.
int invariant_degree(unsigned k);

/// Minimal relation matrices of R_n^k, computed once per n.
class MatrixCache {
 public:
  explicit MatrixCache(unsigned k, RelationConfig cfg = {}) : k_(k), cfg_(cfg) {}

  struct Entry {
    std::optional<RelationMatrix> matrix;
    std::string reason;  // why there is no matrix: "symmetric", an error message
    BigInt F, G;         // from the matrix
  };
  const Entry& at(long long n);
  unsigned k() const { return k_; }

 private:
  unsigned k_;
  RelationConfig cfg_;
  std::map<long long, Entry> cache_;
};

struct FitOptions {
  /// Points beyond the range checked against the fitted polynomials.
  int extrapolate = 2;
  /// Leading points that may be dropped as exceptional have n below this;
  /// 0 means T * (largest entry degree bound + 2).
  long long exception_quota_n = 0;
  /// Cap each entry at its degree bound; an entry above it stays unfitted.
  bool enforce_bounds = false;
  /// Cap on entry degrees otherwise; none means as many as the points allow.
  std::optional<int> max_degree;
  /// Also fit F and G (up to invariant_degree(k) + 3).
  bool fit_invariants = true;
  /// Used by the overloads that build their own MatrixCache.
  RelationConfig relation;
};

struct SkippedPoint {
  long long m = 0, n = 0;
  std::string reason;
};

struct FittedFamily {
  unsigned k = 0;
  long long T = 0, j = 0;
  long long m_lo = 0, m_hi = 0;
  long long fit_from_m = 0;  // first m the fit uses; earlier ones are skipped or exceptional
  std::array<std::array<PolyQ, 3>, 3> matrix_polys;
  /// Entries whose degree exceeds entry_degree_bound: "E13 degree 2 > 1".
  std::vector<std::string> bound_violations;
  /// Entries with no over-determined fit: "E13". Their polynomials are zero.
  std::vector<std::string> unfitted;
  /// F and G over the longest suffix of the range they fit on (F switches
  /// branch at a max), with the first m of that suffix.
  std::optional<PolyQ> F, G;
  long long F_from_m = 0, G_from_m = 0;
  std::vector<SkippedPoint> skipped;      // no matrix (symmetric, n < 3, relation error)
  std::vector<SkippedPoint> exceptional;  // matrix differs from the polynomials
  int extrapolation_hits = 0;
  std::vector<SkippedPoint> extrapolation_misses;

  long long n_of(long long m) const { return T * m + j; }
  RelationMatrix matrix_at(long long m) const;
  bool complete() const { return unfitted.empty(); }
  bool within_bounds() const { return complete() && bound_violations.empty(); }
};

/// Fits every entry over n = T*m + j, m in [m_lo, m_hi]; j need not be
/// canonical. Leading points may be dropped as exceptional within the
/// quota. Throws InsufficientDataError when fewer than 3 usable points
/// remain.
FittedFamily fit_family(unsigned k, long long T, long long j, long long m_lo, long long m_hi,
                        const FitOptions& opt = {});
FittedFamily fit_family(MatrixCache& cache, long long T, long long j, long long m_lo, long long m_hi,
                        const FitOptions& opt = {});

struct DualityReport {
  unsigned k = 0;
  long long T = 0, j = 0;
  /// E+_ij(m) = E-_{4-i,4-j}(-m), one flag per entry of the + family.
  std::array<std::array<bool, 3>, 3> entry_map_ok{};
  std::array<PolyQ, 2> genus_polys;  // G of n = T*m - j, then of T*m + j
  bool parity_ok = false;            // G-(m) = G+(-m)
  FittedFamily minus, plus;

  bool entries_ok() const;
  bool ok() const { return entries_ok() && parity_ok; }
};

DualityReport duality_check(unsigned k, long long T, long long j, long long m_lo, long long m_hi,
                            const FitOptions& opt = {});
DualityReport duality_check(MatrixCache& cache, long long T, long long j, long long m_lo, long long m_hi,
                            const FitOptions& opt = {});

struct ResidueEvidence {
  long long j = 0;
  bool ok = false;
  int points = 0;
  int exceptional = 0;
  int extrapolation_hits = 0;
  std::string failure;
};

struct PeriodReport {
  unsigned k = 0;
  long long t_max = 0, n_max = 0;
  std::optional<long long> T;
  std::vector<ResidueEvidence> evidence;  // for T, one per canonical residue
  std::vector<std::string> rejected;      // first failure of each smaller candidate
  std::vector<long long> exceptional_n;   // dropped across the residues of T
};

struct PeriodOptions {
  int extrapolate = 2;
  RelationConfig relation;  // for the overload without a cache
};

/// Least T <= t_max for which every canonical residue fits within the degree
/// bounds on all but its last `extrapolate` points and predicts those. Throws
/// InsufficientDataError when n_max cannot give every residue of t_max
/// enough points.
PeriodReport period_scan(unsigned k, long long t_max, long long n_max, const PeriodOptions& opt = {});
/// n_max period_scan needs for t_max.
long long period_scan_min_n(unsigned k, long long t_max, int extrapolate = 2);
PeriodReport period_scan(MatrixCache& cache, long long t_max, long long n_max, const PeriodOptions& opt = {});

struct ResidueDegrees {
  long long j = 0;
  std::array<std::array<int, 3>, 3> degree{};
  int F_degree = -1, G_degree = -1;
  bool entries_ok = false;  // every entry within its bound
  bool growth_ok = false;   // F and G of degree invariant_degree(k)
};

struct DegreeReport {
  unsigned k = 0;
  long long T = 0;
  int expected_growth = 0;
  std::vector<ResidueDegrees> residues;
  /// Observed maximum degree per entry across residues.
  std::array<std::array<int, 3>, 3> max_degree{};

  bool entries_ok() const;
  bool growth_ok() const;
};

/// Fits every canonical residue over n <= n_max.
DegreeReport conjecture_degree_report(unsigned k, long long T, long long n_max, const FitOptions& opt = {});
DegreeReport conjecture_degree_report(MatrixCache& cache, long long T, long long n_max, const FitOptions& opt = {});

}  // namespace trisg
