#pragma once

// Residue-class family tables for R_n^k, k = 2, 3, 4: the minimal relation
// matrices as polynomials in m with n = T*m + offset, closed-form F and G
// where they were printed, and the exceptional and symmetric members. The
// tables live in data/families.txt and are checked when loaded.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trisg/bigint.hpp"
#include "trisg/core.hpp"
#include "trisg/polyq.hpp"
#include "trisg/relations.hpp"

namespace trisg {

enum class FormulaStatus {
  verified,      // no annotation; validation decides
  suspect_typo,  // known to disagree, no correction recorded
  corrected,     // verbatim text kept, corrected polynomial used
};

std::string_view status_name(FormulaStatus s);

/// Range of m a printed formula applies to.
struct Guard {
  enum class Kind { all, at_most, at_least, one_of };
  Kind kind = Kind::all;
  long long bound = 0;
  std::vector<long long> values;  // for one_of

  bool contains(long long m) const;
  /// "all", "m<=15", "m>=16", "m=0,1"
  std::string to_string() const;
  static Guard parse(std::string_view text);
  friend bool operator==(const Guard&, const Guard&) = default;
};

struct FormulaPiece {
  Guard guard;
  std::string text;                // as printed
  std::optional<PolyQ> printed;    // nullopt when the printed text does not parse
  FormulaStatus status = FormulaStatus::verified;
  std::string corrected_text;
  std::optional<PolyQ> corrected;
  std::string note;

  /// The corrected polynomial when there is one, else the printed one.
  const std::optional<PolyQ>& effective() const { return corrected ? corrected : printed; }
};

using TextRows = std::array<std::array<std::string, 3>, 3>;

/// Matrix rows as printed, signs included, with any row replaced by a
/// correction.
struct PrintedMatrix {
  TextRows text;
  TextRows corrected_text;  // empty strings when the row is as printed
  std::array<std::string, 3> note;

  bool row_corrected(int i) const { return !corrected_text[static_cast<std::size_t>(i)][0].empty(); }
  TextRows effective() const;
};

struct FamilyCase {
  unsigned k = 0;
  std::string parity;  // "any", "even" or "odd"
  int number = 0;      // case number as printed
  std::string label;   // e.g. "n=18m+4"
  long long modulus = 0;
  long long offset = 0;
  long long m_min = 0;
  std::vector<long long> excluded_n;
  PrintedMatrix printed;
  std::array<std::array<PolyQ, 3>, 3> matrix;  // magnitudes, corrections applied
  std::vector<FormulaPiece> F, G;

  long long n_of(long long m) const { return modulus * m + offset; }
  /// m with n_of(m) == n, if any.
  std::optional<long long> m_of(long long n) const;
  bool in_domain(long long m) const;
  /// Formula piece whose guard contains m, if printed.
  const FormulaPiece* formula(const std::vector<FormulaPiece>& pieces, long long m) const;
  /// "k=4 case 12 (n=40m-18)"
  std::string name() const;
};

struct PrintedValue {
  BigInt value;
  FormulaStatus status = FormulaStatus::verified;
  std::optional<BigInt> corrected;
  std::string note;

  const BigInt& effective() const { return corrected ? *corrected : value; }
};

struct ExceptionalEntry {
  unsigned k = 0;
  long long n = 0;
  bool symmetric = false;
  std::optional<PrintedMatrix> printed;
  std::optional<RelationMatrix> matrix;  // corrections applied
  std::optional<PrintedValue> F, G;
  std::string note;

  std::string name() const;
};

struct SymmetricEntry {
  unsigned k = 0;
  long long n = 0;
  std::string note;
};

/// A printed genus polynomial for one residue class.
struct GenusFamily {
  unsigned k = 0;
  std::string label;
  long long modulus = 0;
  long long offset = 0;
  std::string text;
  PolyQ G;
};

struct FamilyTables {
  std::vector<FamilyCase> cases;
  std::vector<ExceptionalEntry> exceptional;
  std::vector<SymmetricEntry> symmetric;
  std::vector<GenusFamily> genus;
};

/// Parses and checks table text. Throws TableError naming the record and
/// line on malformed input, an identity that fails as a polynomial identity
/// in m, or a gap or overlap in the coverage of 3 <= n <= 1000.
FamilyTables parse_family_tables(std::string_view text);
/// Writes tables back in the same format; parse(format(t)) reproduces t.
std::string format_family_tables(const FamilyTables& t);
/// The tables compiled into the library, loaded on first use.
const FamilyTables& family_tables();

struct CaseLookup {
  std::variant<const FamilyCase*, const ExceptionalEntry*, const SymmetricEntry*> entry;
  long long m = 0;  // meaningful for a FamilyCase

  const FamilyCase* family() const;
  const ExceptionalEntry* exceptional() const;
  const SymmetricEntry* symmetric() const;
};

/// Exceptional and symmetric entries take precedence over polynomial cases.
/// Throws DomainError for k outside {2, 3, 4} or n < 3.
CaseLookup lookup_case(unsigned k, long long n, const FamilyTables& t = family_tables());

/// The tabulated matrix at n. Throws DomainError for symmetric entries and
/// exceptional entries without a matrix, TableError when the evaluated
/// matrix is not integral or fails its identities.
RelationMatrix family_matrix(unsigned k, long long n, const FamilyTables& t = family_tables());

struct FamilyInvariants {
  enum class Source { formula, matrix, exceptional };
  BigInt F, G;
  Source source = Source::matrix;
  /// A printed value at this n disagrees with the matrix or is annotated as
  /// a typo; printed_F / printed_G then hold what was printed.
  bool typo = false;
  std::optional<BigInt> printed_F, printed_G;
  std::vector<std::string> notes;
};

std::string_view source_name(FamilyInvariants::Source s);

/// F and G at n. Printed formulas are used where they agree with the matrix;
/// otherwise the matrix-derived value is returned with the typo flag set.
FamilyInvariants family_invariants(unsigned k, long long n, const FamilyTables& t = family_tables());

struct ValidateOptions {
  /// Also probe each printed formula at its first degree+2 in-domain points,
  /// so guards beyond the probe range get checked.
  bool probe_guards = true;
  /// Oracle cross-check when d1 is at most this.
  std::uint64_t oracle_max_d1 = 20'000'000;
  bool check_exceptional = true;
  RelationConfig relation;
  OracleConfig oracle;
};

struct CaseCheck {
  std::string name;
  long long m = 0, n = 0;
  bool matrix_identities = false;  // validate_matrix(...).all_ok()
  bool matches_computed = false;   // equals minimal_relation_matrix
  std::optional<bool> oracle_agrees;  // matrix F, G vs oracle, when run
  std::string detail;
};

struct TypoRecord {
  std::string where;      // case or entry name
  std::string quantity;   // "F", "G" or "row1".."row3"
  std::string guard;
  std::string printed;
  FormulaStatus status = FormulaStatus::verified;
  std::string corrected;  // corrected text, if any
  long long n = 0;
  std::optional<BigInt> printed_value;
  BigInt true_value;
  /// "oracle" or "matrix": what the true value was confirmed by.
  std::string adjudicated_by;
  /// Whether a recorded correction reproduces the true values (over at
  /// least degree+2 points across the report).
  std::optional<bool> correction_holds;
};

struct TableReport {
  unsigned k = 0;
  std::vector<CaseCheck> checks;
  std::vector<TypoRecord> typos;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  /// Typos whose status in the table is still `verified`.
  std::vector<const TypoRecord*> unflagged_typos() const;
};

/// Checks every case at m in [m_lo, m_hi] within its domain: matrix
/// identities, equality with minimal_relation_matrix, printed F/G against the
/// matrix, and the oracle where d1 allows. Guards outside a case's domain
/// (a printed value for a single small m) are checked against the oracle at
/// the n they name. A failure is a matrix mismatch or a disagreement between
/// matrix and oracle; printed-formula mismatches go to the typo ledger.
TableReport validate_tables(unsigned k, long long m_lo, long long m_hi, const ValidateOptions& opt = {},
                            const FamilyTables& t = family_tables());

}  // namespace trisg
