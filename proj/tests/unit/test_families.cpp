#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "trisg/core.hpp"
#include "trisg/families.hpp"

using namespace trisg;

namespace {

RelationMatrix signed_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  RelationMatrix::Entries e;
  std::size_t i = 0;
  for (auto row : rows) {
    std::size_t j = 0;
    for (long v : row) e[i][j++] = BigInt(v < 0 ? -v : v);
    ++i;
  }
  return RelationMatrix(e);
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

// Removes the block starting at `first_lines` through the next blank line.
std::string drop_block(std::string s, const std::string& first_lines) {
  const auto pos = s.find(first_lines);
  REQUIRE(pos != std::string::npos);
  const auto end = s.find("\n\n", pos);
  return s.erase(pos, end + 2 - pos);
}

const TypoRecord* find_typo(const TableReport& r, const std::string& where_part, const std::string& q) {
  for (const auto& t : r.typos) {
    if (t.where.find(where_part) != std::string::npos && t.quantity == q) return &t;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("table shape") {
  const auto& t = family_tables();
  auto count = [&](unsigned k) {
    return std::count_if(t.cases.begin(), t.cases.end(), [&](const FamilyCase& c) { return c.k == k; });
  };
  CHECK(count(2) == 4);
  CHECK(count(3) == 18);
  CHECK(count(4) == 30);
  CHECK(t.exceptional.size() == 21);
  CHECK(t.symmetric.size() == 3);
  CHECK(t.genus.size() == 2);
  // Even k=4 cases are numbered 1..16 and 18..21.
  for (const auto& c : t.cases) {
    if (c.k == 4 && c.parity == "even") CHECK(c.number != 17);
  }
}

TEST_CASE("lookup_case examples") {
  auto a = lookup_case(3, 22);
  REQUIRE(a.family());
  CHECK(a.family()->label == "n=18m+4");
  CHECK(a.m == 1);

  auto b = lookup_case(4, 5);
  REQUIRE(b.exceptional());
  CHECK(b.exceptional()->symmetric);
  CHECK(b.exceptional()->G->value == 14280);
  CHECK(b.exceptional()->F->value == 28559);

  auto c = lookup_case(2, 4);
  REQUIRE(c.symmetric());
  CHECK(c.symmetric()->n == 4);

  CHECK_THROWS_AS(lookup_case(5, 10), DomainError);
  CHECK_THROWS_AS(lookup_case(1, 10), DomainError);
  CHECK_THROWS_AS(lookup_case(3, 2), DomainError);
}

TEST_CASE("every n maps to exactly one entry") {
  const auto& t = family_tables();
  for (unsigned k = 2; k <= 4; ++k) {
    for (long long n = 3; n <= 1000; ++n) {
      int special = 0, poly = 0;
      for (const auto& e : t.exceptional) special += e.k == k && e.n == n;
      for (const auto& s : t.symmetric) special += s.k == k && s.n == n;
      for (const auto& c : t.cases) {
        if (c.k != k || (n - c.offset) % c.modulus != 0) continue;
        const long long m = (n - c.offset) / c.modulus;
        poly += m >= c.m_min && std::find(c.excluded_n.begin(), c.excluded_n.end(), n) == c.excluded_n.end();
      }
      CHECK_MESSAGE((special == 1 || (special == 0 && poly == 1)), "k=", k, " n=", n);
      CHECK_NOTHROW(lookup_case(k, n));
    }
  }
}

TEST_CASE("family_matrix examples") {
  CHECK(family_matrix(2, 6) == signed_matrix({{14, -7, -2}, {-11, 9, -1}, {-3, -2, 3}}));
  CHECK(family_matrix(2, 7) == signed_matrix({{9, -4, -2}, {-2, 8, -5}, {-7, -4, 7}}));
  CHECK(family_matrix(3, 4) == signed_matrix({{7, -1, -1}, {-1, 18, -9}, {-6, -17, 10}}));
  CHECK(family_matrix(4, 5) == signed_matrix({{81, 0, -16}, {-34, 16, -1}, {-81, 0, 16}}));
  CHECK_THROWS_AS(family_matrix(2, 4), DomainError);
  CHECK_THROWS_AS(family_matrix(4, 3), DomainError);
}

TEST_CASE("family matrices agree with the relation search") {
  for (unsigned k = 2; k <= 4; ++k) {
    const long long top = k == 4 ? 60 : 200;
    for (long long n = 3; n <= top; ++n) {
      const auto l = lookup_case(k, n);
      if (!l.family()) continue;
      const Semigroup s = Semigroup::power_family(k, static_cast<std::uint64_t>(n));
      CHECK_MESSAGE(family_matrix(k, n) == minimal_relation_matrix(s), "k=", k, " n=", n);
    }
  }
}

TEST_CASE("family invariants agree with the oracle") {
  for (unsigned k = 2; k <= 4; ++k) {
    const long long top = k == 4 ? 40 : (k == 3 ? 120 : 200);
    for (long long n = 3; n <= top; ++n) {
      const auto l = lookup_case(k, n);
      if (l.symmetric() || (l.exceptional() && !l.exceptional()->matrix)) continue;
      const Semigroup s = Semigroup::power_family(k, static_cast<std::uint64_t>(n));
      const auto inv = family_invariants(k, n);
      if (*to_u64(s.gen(0)) <= 3000) {
        const auto fg = testoracle::frobenius_genus(*to_u64(s.gen(0)), *to_u64(s.gen(1)), *to_u64(s.gen(2)));
        CHECK_MESSAGE(inv.F == big(fg.frobenius), "k=", k, " n=", n);
        CHECK_MESSAGE(inv.G == big(fg.genus), "k=", k, " n=", n);
      } else {
        const AperyTable a = apery_set(s, s.gen(0));
        CHECK_MESSAGE(inv.F == a.frobenius(), "k=", k, " n=", n);
        CHECK_MESSAGE(inv.G == a.genus(), "k=", k, " n=", n);
      }
    }
  }
}

TEST_CASE("family_invariants examples") {
  SUBCASE("misprinted closed forms at n=7, k=2") {
    const auto fg = testoracle::frobenius_genus(36, 49, 64);
    const auto inv = family_invariants(2, 7);
    CHECK(inv.F == big(fg.frobenius));
    CHECK(inv.G == big(fg.genus));
    CHECK(inv.F == 495);
    CHECK(inv.G == 256);
    CHECK(inv.typo);
    CHECK(inv.source == FamilyInvariants::Source::matrix);
    REQUIRE(inv.printed_F);
    CHECK(*inv.printed_F == 2513);  // "2242" read as a constant
    CHECK_FALSE(inv.printed_G);     // the stray N does not parse
  }
  SUBCASE("exceptional entries") {
    const auto a = family_invariants(3, 6);
    CHECK(a.F == 5249);
    CHECK(a.G == 2670);
    CHECK(a.source == FamilyInvariants::Source::exceptional);
    CHECK_FALSE(a.typo);
    const auto b = family_invariants(4, 13);
    CHECK(b.F == 12005295);
    CHECK(b.G == 6071192);
    CHECK_FALSE(b.typo);
  }
  SUBCASE("printed formula used where it holds") {
    const auto inv = family_invariants(3, 22);
    CHECK(inv.source == FamilyInvariants::Source::formula);
    CHECK_FALSE(inv.typo);
  }
  SUBCASE("symmetric entry with a misprinted genus") {
    const auto inv = family_invariants(4, 3);
    const auto fg = testoracle::frobenius_genus(16, 81, 256);
    CHECK(inv.F == big(fg.frobenius));
    CHECK(inv.G == big(fg.genus));
    CHECK(inv.typo);
    REQUIRE(inv.printed_G);
    CHECK(*inv.printed_G == 560);
  }
  SUBCASE("misprinted exceptional matrix") {
    const Semigroup s = Semigroup::power_family(4, 27);
    const auto inv = family_invariants(4, 27);
    const AperyTable a = apery_set(s, s.gen(0));
    CHECK(inv.F == a.frobenius());
    CHECK(inv.G == a.genus());
    CHECK(inv.typo);
    CHECK(family_matrix(4, 27) == minimal_relation_matrix(s));
  }
  CHECK_THROWS_AS(family_invariants(2, 5), DomainError);
}

TEST_CASE("validate_tables k=2") {
  const TableReport r = validate_tables(2, 1, 10);
  CHECK(r.ok());
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.unflagged_typos().empty());
  const auto* f4 = find_typo(r, "case 4", "F");
  REQUIRE(f4);
  CHECK(f4->status == FormulaStatus::corrected);
  CHECK(f4->correction_holds == std::optional<bool>(true));
  CHECK(f4->adjudicated_by == "oracle");
  const auto* g4 = find_typo(r, "case 4", "G");
  REQUIRE(g4);
  CHECK(g4->correction_holds == std::optional<bool>(true));
  const auto* f1 = find_typo(r, "case 1", "F");
  REQUIRE(f1);
  CHECK(f1->status == FormulaStatus::suspect_typo);
  CHECK(f1->n == 4);
  CHECK(f1->true_value == 119);
  for (const auto& c : r.checks) {
    CHECK(c.matrix_identities);
    CHECK(c.matches_computed);
  }
}

TEST_CASE("validate_tables k=3 covers both sides of a guard split") {
  const TableReport r = validate_tables(3, 1, 5);
  CHECK(r.ok());
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.unflagged_typos().empty());
  bool low = false, high = false;
  for (const auto& c : r.checks) {
    if (c.name.find("even case 1 ") != std::string::npos) {
      low = low || c.m <= 15;
      high = high || c.m >= 16;
    }
  }
  CHECK(low);
  CHECK(high);
  const auto* row = find_typo(r, "odd case 7", "row1");
  REQUIRE(row);
  CHECK(row->correction_holds == std::optional<bool>(true));
}

TEST_CASE("validate_tables k=4 matrices, no oracle") {
  ValidateOptions opt;
  opt.oracle_max_d1 = 0;
  opt.check_exceptional = false;
  const TableReport r = validate_tables(4, 1, 1, opt);
  CHECK(r.ok());
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.checks.size() == 23);  // seven cases start at m >= 2
}

TEST_CASE("printed genus pair") {
  const auto& t = family_tables();
  REQUIRE(t.genus.size() == 2);
  const PolyQ& plus = t.genus[0].G;
  const PolyQ& minus = t.genus[1].G;
  const int printed[] = {67446, 889781, 4895936, 14385560, 23809780, 21049600, 7766000};
  for (int r = 0; r <= 6; ++r) {
    CHECK(plus.coeff(r) == 8 * printed[r]);
    CHECK(minus.coeff(r) == (r % 2 ? -8 : 8) * printed[r]);
  }
  CHECK(minus == plus.reflect());
}

TEST_CASE("table text round-trips") {
  const std::string once = format_family_tables(family_tables());
  const FamilyTables again = parse_family_tables(once);
  CHECK(format_family_tables(again) == once);
  CHECK(again.cases.size() == family_tables().cases.size());
  CHECK(again.exceptional.size() == family_tables().exceptional.size());
}

TEST_CASE("malformed tables are rejected") {
  const std::string good = format_family_tables(family_tables());
  SUBCASE("a wrong coefficient breaks an identity") {
    const auto bad = replace_once(good, "row1: 9m+5 ; -(8m-1) ; -(m+1)", "row1: 9m+5 ; -(8m-1) ; -(m+2)");
    CHECK_THROWS_AS(parse_family_tables(bad), TableError);
  }
  SUBCASE("a missing case leaves a gap") {
    const auto bad = drop_block(good, "[case]\nk: 2\nparity: any\nnumber: 2\n");
    CHECK_THROWS_WITH_AS(parse_family_tables(bad), doctest::Contains("no case covers"), TableError);
  }
  SUBCASE("a duplicated case overlaps") {
    const auto start = good.find("[case]\nk: 2\nparity: any\nnumber: 2\n");
    const auto end = good.find("\n\n", start);
    const std::string bad = good + good.substr(start, end + 2 - start);
    CHECK_THROWS_WITH_AS(parse_family_tables(bad), doctest::Contains("overlapping"), TableError);
  }
  SUBCASE("unknown key") {
    CHECK_THROWS_AS(parse_family_tables(replace_once(good, "modulus: 4\n", "modulus: 4\ncolour: red\n")), TableError);
  }
  SUBCASE("bad guard") {
    CHECK_THROWS_AS(parse_family_tables(replace_once(good, "F: m>=4 |", "F: m>4 |")), TableError);
  }
  SUBCASE("corrected status needs a correction") {
    CHECK_THROWS_AS(parse_family_tables(replace_once(good, "F.corrected: 128m^3+224m^2+124m+19\n", "")),
                    TableError);
  }
  SUBCASE("unparseable printed formula needs a correction") {
    auto bad = replace_once(good, "G.status: corrected\nG.corrected: 2(32m^3+57m^2+33m+6)\n", "");
    CHECK_THROWS_AS(parse_family_tables(bad), TableError);
  }
  SUBCASE("rows need three entries") {
    CHECK_THROWS_AS(parse_family_tables(replace_once(good, "row3: -(2m+1) ; -2 ; 2m+1", "row3: -(2m+1) ; -2")),
                    TableError);
  }
  SUBCASE("field outside a block") {
    CHECK_THROWS_AS(parse_family_tables("k: 2\n" + good), TableError);
  }
}
