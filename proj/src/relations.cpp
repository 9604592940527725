#include "trisg/relations.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "trisg/core.hpp"
#include "trisg/simd/kernels.hpp"

namespace trisg {
namespace {

struct OtherPair {
  int p, q;  // ascending, both != j
};

OtherPair others(int j) {
  switch (j) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

std::optional<std::uint64_t> below(const BigInt& v, std::uint64_t limit) {
  auto u = to_u64(v);
  if (u && *u < limit) return u;
  return std::nullopt;
}

// Smallest w >= w_min with w * dj = x*A + y*B solvable in nonnegative
// integers, where gcd(A, B) = 1. A hit always exists at w = A.
BigInt first_representable_multiple(const BigInt& dj, const BigInt& A, const BigInt& B,
                                    std::uint64_t w_min, const RelationConfig& cfg) {
  const std::uint64_t limit = std::min(cfg.fixed_width_limit, simd::kScanInputLimit);
  const auto a64 = below(A, limit);
  const auto b64 = below(B, limit);
  const auto d64 = below(dj, limit);
  if (A == 1) return big(w_min);
  if (a64 && b64 && d64) {
    simd::ScanParams p{};
    p.modulus = *a64;
    p.step = *to_u64(floor_mod(dj * mod_inverse(floor_mod(B, A), A), A));
    p.numer = *d64;
    p.denom = *b64;
    const auto& kern = simd::kernels();
    const std::uint64_t last = std::min(*a64, w_min + cfg.max_iterations);
    constexpr std::uint64_t kChunk = 1 << 16;
    for (std::uint64_t w = w_min; w <= last; w += kChunk) {
      const std::uint64_t hit = kern.first_hit(p, w, std::min(last + 1, w + kChunk));
      if (hit != 0) return big(hit);
    }
    if (*a64 >= w_min && last == *a64) {
      throw InternalError("minimal relation scan missed the guaranteed hit at w = A");
    }
    throw ResourceError("minimal relation search exceeded max_iterations=" +
                        std::to_string(cfg.max_iterations));
  }
  std::uint64_t iterations = 0;
  for (BigInt w = w_min;; ++w) {
    if (++iterations > cfg.max_iterations) {
      throw ResourceError("minimal relation search exceeded max_iterations=" +
                          std::to_string(cfg.max_iterations));
    }
    if (representable_by_pair(w * dj, A, B)) return w;
  }
}

using Rep = std::pair<BigInt, BigInt>;

// All (x, y) >= 0 with x*da + y*db = M.
std::vector<Rep> all_representations(const BigInt& M, const BigInt& da, const BigInt& db,
                                     std::size_t cap) {
  std::vector<Rep> out;
  auto first = representable_by_pair(M, da, db);
  if (!first) return out;
  const BigInt g = gcd(da, db);
  const BigInt xstep = db / g, ystep = da / g;
  BigInt x = first->first, y = first->second;
  while (sgn(x) >= 0) {
    if (out.size() >= cap) {
      throw ResourceError("more than max_representations=" + std::to_string(cap) +
                          " representations of " + M.get_str());
    }
    out.emplace_back(x, y);
    x -= xstep;
    y += ystep;
  }
  return out;
}

}  // namespace

RelationMatrix::RelationMatrix(Entries magnitudes) : a_(std::move(magnitudes)) {
  for (const auto& row : a_) {
    for (const auto& v : row) {
      if (sgn(v) < 0) throw DomainError("relation matrix magnitudes must be nonnegative");
    }
  }
}

std::string RelationMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < 3; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < 3; ++j) os << (j ? "," : "") << signed_at(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

BigInt minimal_diagonal(const Semigroup& s, int j, const RelationConfig& cfg) {
  const auto [p, q] = others(j);
  const BigInt& dj = s.gen(j);
  const BigInt& da = s.gen(p);
  const BigInt& db = s.gen(q);
  // v * dj must be divisible by g = gcd(da, db), and gcd(g, dj) = 1.
  const BigInt g = gcd(da, db);
  const std::uint64_t w_min = g >= 2 ? 1 : 2;
  return g * first_representable_multiple(dj, da / g, db / g, w_min, cfg);
}

RelationMatrix minimal_relation_matrix(const Semigroup& s, const RelationConfig& cfg) {
  if (s.has_repeated_generator()) {
    throw RelationError(RelationError::Kind::symmetric_or_degenerate,
                        "symmetric-or-degenerate: repeated generator in " + s.to_string());
  }
  std::array<BigInt, 3> diag;
  std::array<std::vector<Rep>, 3> reps;
  for (int j = 0; j < 3; ++j) {
    const auto [p, q] = others(j);
    diag[j] = minimal_diagonal(s, j, cfg);
    reps[j] = all_representations(diag[j] * s.gen(j), s.gen(p), s.gen(q), cfg.max_representations);
  }
  // Row 0 gives (a01, a02), row 1 gives (a10, a12), row 2 gives (a20, a21).
  std::vector<RelationMatrix> found;
  for (const auto& r0 : reps[0]) {
    for (const auto& r1 : reps[1]) {
      const BigInt a20 = diag[0] - r1.first;
      const BigInt a21 = diag[1] - r0.first;
      if (sgn(a20) < 0 || sgn(a21) < 0) continue;
      if (r0.second + r1.second != diag[2]) continue;
      const bool in_row2 = std::any_of(reps[2].begin(), reps[2].end(), [&](const Rep& r) {
        return r.first == a20 && r.second == a21;
      });
      if (!in_row2) continue;
      RelationMatrix m(RelationMatrix::Entries{{{diag[0], r0.first, r0.second},
                                                {r1.first, diag[1], r1.second},
                                                {a20, a21, diag[2]}}});
      if (validate_matrix(m, s).identities_ok()) found.push_back(std::move(m));
    }
  }
  if (found.empty()) {
    throw RelationError(RelationError::Kind::symmetric_or_degenerate,
                        "symmetric-or-degenerate: no minimal relations satisfy the column identities for " +
                            s.to_string());
  }
  if (found.size() > 1) {
    throw RelationError(RelationError::Kind::ambiguous,
                        "ambiguous: " + std::to_string(found.size()) +
                            " relation matrices satisfy every identity for " + s.to_string());
  }
  if (!validate_matrix(found.front(), s).strictly_positive) {
    throw RelationError(RelationError::Kind::symmetric_or_degenerate,
                        "symmetric-or-degenerate: zero off-diagonal entry in " +
                            found.front().to_string() + " for " + s.to_string());
  }
  return found.front();
}

SyzygyData syzygy_data(const RelationMatrix& a, const Semigroup& s) {
  auto e = [&](int i, int j) -> const BigInt& { return a.at(i - 1, j - 1); };
  SyzygyData out;
  out.D0 = e(1, 1) * e(2, 2) * e(3, 3);
  out.D1 = e(1, 2) * e(2, 3) * e(3, 1);
  out.D2 = e(1, 3) * e(3, 2) * e(2, 1);
  out.D3 = s.generator_sum();
  out.b11 = out.D0 + out.D1;
  out.b22 = out.D0 + out.D2;
  out.F1 = out.b11 - out.D3;
  out.F2 = out.b22 - out.D3;
  out.F = std::max(out.F1, out.F2);
  const BigInt twice_g = 1 + out.D0 + out.D1 + out.D2 - out.D3;
  if (floor_mod(twice_g, 2) != 0) {
    throw InternalError("odd value of 2G for " + a.to_string() + " and " + s.to_string());
  }
  out.G = twice_g / 2;
  return out;
}

std::vector<SignedExponent> hilbert_numerator(const RelationMatrix& a, const Semigroup& s) {
  const SyzygyData z = syzygy_data(a, s);
  std::vector<SignedExponent> out{{+1, BigInt(0)},
                                  {-1, a.at(0, 0) * s.gen(0)},
                                  {-1, a.at(1, 1) * s.gen(1)},
                                  {-1, a.at(2, 2) * s.gen(2)},
                                  {+1, z.b11},
                                  {+1, z.b22}};
  if (out[1].exponent + out[2].exponent + out[3].exponent != z.b11 + z.b22) {
    throw InternalError("numerator degree identity fails for " + a.to_string() + " and " +
                        s.to_string());
  }
  return out;
}

bool MatrixReport::identities_ok() const {
  for (int i = 0; i < 3; ++i) {
    if (!row_relation[i] || !column_identity[i] || !generator_recovery[i] || !row_gcd[i]) return false;
  }
  return true;
}

std::vector<std::string> MatrixReport::failures() const {
  std::vector<std::string> out;
  for (int i = 0; i < 3; ++i) {
    const std::string k = std::to_string(i + 1);
    if (!row_relation[i]) out.push_back("row " + k + " relation");
    if (!column_identity[i]) out.push_back("column " + k + " identity");
    if (!generator_recovery[i]) out.push_back("generator d" + k + " recovery");
    if (!row_gcd[i]) out.push_back("row " + k + " gcd");
  }
  if (!diagonal_at_least_two) out.push_back("diagonal entry below 2");
  if (!strictly_positive) out.push_back("zero off-diagonal entry");
  return out;
}

MatrixReport validate_matrix(const RelationMatrix& a, const Semigroup& s) {
  auto e = [&](int i, int j) -> const BigInt& { return a.at(i - 1, j - 1); };
  auto d = [&](int i) -> const BigInt& { return s.gen(i - 1); };
  MatrixReport r;
  r.row_relation = {e(1, 1) * d(1) == e(1, 2) * d(2) + e(1, 3) * d(3),
                    e(2, 2) * d(2) == e(2, 1) * d(1) + e(2, 3) * d(3),
                    e(3, 3) * d(3) == e(3, 1) * d(1) + e(3, 2) * d(2)};
  r.column_identity = {e(1, 1) == e(2, 1) + e(3, 1), e(2, 2) == e(1, 2) + e(3, 2),
                       e(3, 3) == e(1, 3) + e(2, 3)};
  r.generator_recovery = {d(1) == e(2, 2) * e(3, 3) - e(2, 3) * e(3, 2),
                          d(2) == e(3, 3) * e(1, 1) - e(3, 1) * e(1, 3),
                          d(3) == e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)};
  for (int i = 1; i <= 3; ++i) {
    r.row_gcd[i - 1] = gcd(gcd(e(i, 1), e(i, 2)), e(i, 3)) == 1;
  }
  r.diagonal_at_least_two = e(1, 1) >= 2 && e(2, 2) >= 2 && e(3, 3) >= 2;
  r.strictly_positive = true;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i != j && sgn(e(i, j)) == 0) r.strictly_positive = false;
    }
  }
  return r;
}

}  // namespace trisg
