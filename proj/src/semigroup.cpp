#include "trisg/semigroup.hpp"

#include <algorithm>

#include "trisg/error.hpp"

namespace trisg {

Semigroup::Semigroup(BigInt a, BigInt b, BigInt c) : gens_{std::move(a), std::move(b), std::move(c)} {
  std::sort(gens_.begin(), gens_.end());
  if (gens_[0] < 3) {
    throw DomainError("smallest generator must be at least 3, got " + gens_[0].get_str());
  }
  BigInt g = gcd(gcd(gens_[0], gens_[1]), gens_[2]);
  if (g != 1) throw DomainError("generators " + to_string() + " have gcd " + g.get_str());
}

Semigroup Semigroup::power_family(unsigned k, std::uint64_t n) {
  if (n < 3) throw DomainError("R_n^k requires n >= 3");
  if (k < 1) throw DomainError("R_n^k requires k >= 1");
  BigInt bn = big(n);
  Semigroup s(ipow(bn - 1, k), ipow(bn, k), ipow(bn + 1, k));
  s.provenance_ = Provenance{k, n};
  return s;
}

std::optional<std::array<std::uint64_t, 3>> Semigroup::small_gens(std::uint64_t limit) const {
  std::array<std::uint64_t, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto v = to_u64(gens_[i]);
    if (!v || *v >= limit) return std::nullopt;
    out[i] = *v;
  }
  return out;
}

std::string Semigroup::to_string() const {
  return "<" + gens_[0].get_str() + "," + gens_[1].get_str() + "," + gens_[2].get_str() + ">";
}

}  // namespace trisg
