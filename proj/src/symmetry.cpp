#include "trisg/symmetry.hpp"

#include <algorithm>
#include <tuple>

#include "trisg/error.hpp"

namespace trisg {

namespace {

BigInt horner(const std::vector<BigInt>& c, const BigInt& x) {
  BigInt v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<BigInt> trimmed(const std::vector<BigInt>& coeffs) {
  std::vector<BigInt> c = coeffs;
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  if (c.empty()) throw DomainError("polynomial is identically zero");
  return c;
}

constexpr std::uint64_t kTrialDivisionLimit = 1'000'000'000'000ULL;

}  // namespace

std::string_view kind_name(SymmetryWitness::Kind k) {
  switch (k) {
    case SymmetryWitness::Kind::none: return "none";
    case SymmetryWitness::Kind::membership: return "membership";
    case SymmetryWitness::Kind::gluing: return "gluing";
  }
  return "?";
}

bool SymmetryWitness::verify(const Semigroup& s) const {
  if (kind == Kind::none) return true;
  if (target < 0 || first < 0 || second < 0 || target > 2 || first > 2 || second > 2) return false;
  if (target == first || target == second || first == second) return false;
  if (sgn(x) < 0 || sgn(y) < 0) return false;
  const BigInt &dt = s.gen(target), &df = s.gen(first), &ds = s.gen(second);
  if (kind == Kind::membership) {
    if (dt != x * df + y * ds || gcd(df, ds) != 1) return false;
    return !F || *F == df * ds - df - ds;
  }
  if (a <= 1 || df != a * delta1 || ds != a * delta2) return false;
  if (gcd(delta1, delta2) != 1 || gcd(a, dt) != 1) return false;
  if (dt != x * delta1 + y * delta2) return false;
  return !F || *F == a * (delta1 * delta2 - delta1 - delta2) + (a - 1) * dt;
}

std::string SymmetryWitness::describe(const Semigroup& s) const {
  switch (kind) {
    case Kind::none: return "no structural witness";
    case Kind::membership:
      return s.gen(target).get_str() + " = " + x.get_str() + "*" + s.gen(first).get_str() + " + " + y.get_str() +
             "*" + s.gen(second).get_str();
    case Kind::gluing:
      return s.gen(target).get_str() + " = " + x.get_str() + "*" + delta1.get_str() + " + " + y.get_str() + "*" +
             delta2.get_str() + " with a = " + a.get_str();
  }
  return {};
}

SymmetryWitness structural_symmetry(const Semigroup& s) {
  SymmetryWitness w;
  for (int t = 2; t >= 0; --t) {
    const int i = t == 0 ? 1 : 0, j = t == 2 ? 1 : 2;
    if (gcd(s.gen(i), s.gen(j)) != 1) continue;
    if (auto r = representable_by_pair(s.gen(t), s.gen(i), s.gen(j))) {
      w.kind = SymmetryWitness::Kind::membership;
      w.target = t, w.first = i, w.second = j;
      w.x = r->first, w.y = r->second;
      w.F = s.gen(i) * s.gen(j) - s.gen(i) - s.gen(j);
      return w;
    }
  }
  for (int t = 2; t >= 0; --t) {
    const int i = t == 0 ? 1 : 0, j = t == 2 ? 1 : 2;
    const BigInt a = gcd(s.gen(i), s.gen(j));
    if (a <= 1 || gcd(a, s.gen(t)) != 1) continue;
    const BigInt d1 = s.gen(i) / a, d2 = s.gen(j) / a;
    if (auto r = representable_by_pair(s.gen(t), d1, d2)) {
      w.kind = SymmetryWitness::Kind::gluing;
      w.target = t, w.first = i, w.second = j;
      w.x = r->first, w.y = r->second;
      w.a = a, w.delta1 = d1, w.delta2 = d2;
      w.F = a * (d1 * d2 - d1 - d2) + (a - 1) * s.gen(t);
      return w;
    }
  }
  return w;
}

std::optional<DescartesCertificate> descartes_positive_root_certificate(const std::vector<BigInt>& coeffs) {
  const auto c = trimmed(coeffs);
  DescartesCertificate cert;
  for (const auto& v : c) {
    const int sg = sgn(v);
    cert.signs.push_back(sg);
    if (sg == 0) continue;
    if (cert.sign == 0) cert.sign = sg;
    if (sg != cert.sign) return std::nullopt;
  }
  return cert;
}

std::vector<BigInt> integer_root_scan(const std::vector<BigInt>& coeffs) {
  auto c = trimmed(coeffs);
  std::size_t low = 0;
  while (sgn(c[low]) == 0) ++low;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  std::vector<BigInt> roots;
  if (c.size() == 1) return roots;
  // Cauchy bound on the absolute value of every root.
  BigInt bound = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max<BigInt>(bound, abs(c[i]));
  bound = bound / abs(c.back()) + 1;
  const BigInt c0 = abs(c[0]);
  auto test = [&](const BigInt& r) {
    if (r <= bound && sgn(horner(c, r)) == 0) roots.push_back(r);
  };
  auto c64 = to_u64(c0);
  if (c64 && *c64 <= kTrialDivisionLimit) {
    for (std::uint64_t d = 1; d * d <= *c64; ++d) {
      if (*c64 % d != 0) continue;
      test(big(d));
      if (d * d != *c64) test(big(*c64 / d));
    }
  } else if (auto b64 = to_u64(bound); b64 && *b64 <= kTrialDivisionLimit) {
    for (std::uint64_t r = 1; r <= *b64; ++r) {
      if (floor_mod(c0, big(r)) == 0) test(big(r));
    }
  } else {
    throw ResourceError("integer_root_scan: constant term and root bound both exceed the trial division limit");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<PowerHit> symmetric_power_scan(long long p_lo, long long p_hi, unsigned k_lo, unsigned k_hi) {
  if (p_lo < 1) throw DomainError("symmetric_power_scan: p must be at least 1");
  if (k_lo < 1) throw DomainError("symmetric_power_scan: k must be at least 1");
  std::vector<PowerHit> hits;
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    for (long long p = p_lo; p <= p_hi; ++p) {
      const auto s = Semigroup::power_family(k, static_cast<std::uint64_t>(2 * p + 1));
      auto w = structural_symmetry(s);
      if (w.symmetric()) hits.push_back({p, k, std::move(w)});
    }
  }
  return hits;
}

}  // namespace trisg
