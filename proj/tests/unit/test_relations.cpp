#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "trisg/core.hpp"
#include "trisg/relations.hpp"
#include "trisg/simd/kernels.hpp"

using namespace trisg;

namespace {

Semigroup sg(unsigned long a, unsigned long b, unsigned long c) {
  return Semigroup(BigInt(a), BigInt(b), BigInt(c));
}

RelationMatrix signed_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  RelationMatrix::Entries e;
  int i = 0;
  for (auto row : rows) {
    int j = 0;
    for (long v : row) e[i][j++] = BigInt(v < 0 ? -v : v);
    ++i;
  }
  return RelationMatrix(e);
}

// Least v >= 2 with v*dj a nonnegative combination of da, db, by direct search.
unsigned long brute_diagonal(unsigned long dj, unsigned long da, unsigned long db) {
  for (unsigned long v = 2;; ++v) {
    const unsigned long M = v * dj;
    for (unsigned long x = 0; x * da <= M; ++x) {
      if ((M - x * da) % db == 0) return v;
    }
  }
}

}  // namespace

TEST_CASE("minimal relation matrices from the tables") {
  CHECK(minimal_relation_matrix(sg(27, 64, 125)) ==
        signed_matrix({{7, -1, -1}, {-1, 18, -9}, {-6, -17, 10}}));
  CHECK(minimal_relation_matrix(sg(125, 216, 343)) ==
        signed_matrix({{31, -10, -5}, {-6, 13, -6}, {-25, -3, 11}}));
  CHECK(minimal_relation_matrix(sg(25, 36, 49)) ==
        signed_matrix({{14, -7, -2}, {-11, 9, -1}, {-3, -2, 3}}));
  CHECK(minimal_relation_matrix(sg(27, 64, 125)).to_string() == "[[7,-1,-1],[-1,18,-9],[-6,-17,10]]");
}

TEST_CASE("generator order does not matter") {
  CHECK(minimal_relation_matrix(sg(125, 27, 64)) == minimal_relation_matrix(sg(27, 64, 125)));
}

TEST_CASE("symmetric and degenerate inputs are rejected") {
  for (auto s : {sg(9, 16, 25), sg(16, 81, 256), sg(256, 625, 1296), sg(6, 6, 7)}) {
    CHECK_THROWS_AS(minimal_relation_matrix(s), RelationError);
  }
  try {
    minimal_relation_matrix(sg(256, 625, 1296));
    FAIL("expected an error");
  } catch (const RelationError& e) {
    CHECK(e.kind() == RelationError::Kind::symmetric_or_degenerate);
    CHECK(std::string(e.what()).find("symmetric-or-degenerate") != std::string::npos);
  }
}

TEST_CASE("syzygy data") {
  Semigroup r43 = sg(27, 64, 125);
  SyzygyData z = syzygy_data(signed_matrix({{7, -1, -1}, {-1, 18, -9}, {-6, -17, 10}}), r43);
  // 7*18*10, 1*9*6, 1*17*1 and 27+64+125.
  CHECK(z.D0 == 1260);
  CHECK(z.D1 == 54);
  CHECK(z.D2 == 17);
  CHECK(z.D3 == 216);
  CHECK(z.b11 == 1314);
  CHECK(z.b22 == 1277);
  CHECK(z.F == 1098);
  CHECK(z.G == 558);

  Semigroup r63 = sg(125, 216, 343);
  SyzygyData z6 = syzygy_data(minimal_relation_matrix(r63), r63);
  CHECK(z6.F == 5249);
  CHECK(z6.G == 2670);

  Semigroup r62 = sg(25, 36, 49);
  SyzygyData z2 = syzygy_data(minimal_relation_matrix(r62), r62);
  CHECK(z2.F == 312);
  CHECK(z2.G == 167);
}

TEST_CASE("hilbert numerator") {
  Semigroup r43 = sg(27, 64, 125);
  auto num = hilbert_numerator(minimal_relation_matrix(r43), r43);
  REQUIRE(num.size() == 6);
  CHECK(num[0] == SignedExponent{1, BigInt(0)});
  CHECK(num[1] == SignedExponent{-1, BigInt(189)});
  CHECK(num[2] == SignedExponent{-1, BigInt(1152)});
  CHECK(num[3] == SignedExponent{-1, BigInt(1250)});
  CHECK(num[4] == SignedExponent{1, BigInt(1314)});
  CHECK(num[5] == SignedExponent{1, BigInt(1277)});

  Semigroup r62 = sg(25, 36, 49);
  auto n2 = hilbert_numerator(minimal_relation_matrix(r62), r62);
  CHECK(n2[1].exponent == 350);
  CHECK(n2[2].exponent == 324);
  CHECK(n2[3].exponent == 147);
  CHECK(n2[4].exponent == 399);
  CHECK(n2[5].exponent == 422);

  // A matrix that breaks the degree identity.
  CHECK_THROWS_AS(hilbert_numerator(signed_matrix({{7, -1, -1}, {-1, 18, -10}, {-6, -17, 10}}), r43),
                  InternalError);
}

TEST_CASE("validate_matrix") {
  Semigroup r43 = sg(27, 64, 125);
  auto good = validate_matrix(signed_matrix({{7, -1, -1}, {-1, 18, -9}, {-6, -17, 10}}), r43);
  CHECK(good.all_ok());
  CHECK(good.failures().empty());

  auto bad = validate_matrix(signed_matrix({{7, -1, -1}, {-1, 18, -10}, {-6, -17, 10}}), r43);
  CHECK_FALSE(bad.row_relation[1]);
  CHECK(bad.row_relation[0]);
  CHECK(bad.row_relation[2]);
  CHECK_FALSE(bad.all_ok());

  auto r74 = validate_matrix(signed_matrix({{256, 0, -81}, {-17, 16, -4}, {-256, 0, 81}}),
                             sg(1296, 2401, 4096));
  CHECK(r74.rows_ok());
  CHECK_FALSE(r74.strictly_positive);
}

TEST_CASE("diagonal search matches direct search") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto g = testoracle::random_gens(rng, 300);
    Semigroup s = sg(g.d1, g.d2, g.d3);
    const unsigned long d[3] = {g.d1, g.d2, g.d3};
    CHECK(minimal_diagonal(s, 0) == brute_diagonal(d[0], d[1], d[2]));
    CHECK(minimal_diagonal(s, 1) == brute_diagonal(d[1], d[0], d[2]));
    CHECK(minimal_diagonal(s, 2) == brute_diagonal(d[2], d[0], d[1]));
  }
}

TEST_CASE("relation matrices agree with the oracle and across backends") {
  std::mt19937_64 rng(12);
  const auto saved = simd::active_backend();
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = testoracle::random_gens(rng, 400);
    Semigroup s = sg(g.d1, g.d2, g.d3);
    if (is_symmetric_oracle(s)) {
      CHECK_THROWS_AS(minimal_relation_matrix(s), RelationError);
      continue;
    }
    simd::set_backend(simd::Backend::scalar);
    RelationMatrix a = minimal_relation_matrix(s);
    if (simd::backend_available(simd::Backend::avx2)) {
      simd::set_backend(simd::Backend::avx2);
      CHECK(minimal_relation_matrix(s) == a);
    }
    auto ref = testoracle::frobenius_genus(g.d1, g.d2, g.d3);
    SyzygyData z = syzygy_data(a, s);
    CHECK(z.F == ref.frobenius);
    CHECK(z.G == ref.genus);
    ++checked;
  }
  simd::set_backend(saved);
  CHECK(checked > 200);
}

TEST_CASE("multiprecision path agrees with the fixed-width scan") {
  RelationConfig slow;
  slow.fixed_width_limit = 0;
  for (unsigned k = 2; k <= 4; ++k) {
    for (std::uint64_t n = 6; n <= 14; ++n) {
      Semigroup s = Semigroup::power_family(k, n);
      if (is_symmetric_oracle(s)) continue;
      CHECK(minimal_relation_matrix(s, slow) == minimal_relation_matrix(s));
    }
  }
}

TEST_CASE("iteration budget") {
  RelationConfig tight;
  tight.max_iterations = 3;
  CHECK_THROWS_AS(minimal_relation_matrix(Semigroup::power_family(4, 60), tight), ResourceError);
}
