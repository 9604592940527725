#include "trisg/core.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <numeric>
#include <queue>

#include "detail/small_arith.hpp"
#include "trisg/error.hpp"
#include "trisg/simd/kernels.hpp"

namespace trisg {
namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kValueLimit = std::uint64_t{1} << 62;

void relax_round_robin(std::vector<std::uint64_t>& w, std::uint64_t base, std::uint64_t gen) {
  const std::uint64_t step = gen % base;
  if (step == 0) return;
  const std::uint64_t g = std::gcd(base, step);
  const std::uint64_t cycle = base / g;
  for (std::uint64_t p = 0; p < g; ++p) {
    std::uint64_t best = p;
    std::uint64_t pos = p;
    for (std::uint64_t i = 1; i < cycle; ++i) {
      pos += step;
      if (pos >= base) pos -= base;
      if (w[pos] < w[best]) best = pos;
    }
    if (w[best] == kInf) continue;
    pos = best;
    for (std::uint64_t i = 1; i < cycle; ++i) {
      std::uint64_t next = pos + step;
      if (next >= base) next -= base;
      const std::uint64_t cand = w[pos] + gen;
      if (cand < w[next]) w[next] = cand;
      pos = next;
    }
  }
}

std::vector<std::uint64_t> apery_dijkstra(std::uint64_t base, std::uint64_t e1, std::uint64_t e2) {
  std::vector<std::uint64_t> w(base, kInf);
  using Item = std::pair<std::uint64_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  w[0] = 0;
  heap.emplace(0, 0);
  while (!heap.empty()) {
    auto [dist, r] = heap.top();
    heap.pop();
    if (dist != w[r]) continue;
    for (std::uint64_t e : {e1, e2}) {
      const std::uint64_t next = (r + e) % base;
      const std::uint64_t cand = dist + e;
      if (cand < w[next]) {
        w[next] = cand;
        heap.emplace(cand, next);
      }
    }
  }
  return w;
}

// Fills cur[0, len) with the indicator of S at positions base_pos + i, given
// that cur[-d3 .. -1] already hold the preceding values (zero before 0).
void fill_indicator(std::uint8_t* cur, std::size_t len, std::uint64_t base_pos,
                    const std::array<std::uint64_t, 3>& g, const simd::Kernels& kern) {
  const std::size_t chunk = static_cast<std::size_t>(g[0]);
  for (std::size_t s = 0; s < len; s += chunk) {
    const std::size_t n = std::min(chunk, len - s);
    kern.or3(cur + s, cur + s - g[0], cur + s - g[1], cur + s - g[2], n);
    if (base_pos == 0 && s == 0) cur[0] = 1;
  }
}

}  // namespace

std::uint64_t AperyTable::max_element() const {
  return *std::max_element(elements_.begin(), elements_.end());
}

BigInt AperyTable::frobenius() const { return big(max_element()) - big(base_); }

BigInt AperyTable::genus() const {
  BigInt total = 0;
  std::uint64_t acc = 0;
  for (std::uint64_t r = 0; r < base_; ++r) {
    const std::uint64_t q = (elements_[r] - r) / base_;
    if (acc > kValueLimit) {
      total += big(acc);
      acc = 0;
    }
    acc += q;
  }
  total += big(acc);
  return total;
}

std::optional<std::pair<BigInt, BigInt>> representable_by_pair(const BigInt& M, const BigInt& da,
                                                               const BigInt& db) {
  if (sgn(M) < 0) throw DomainError("representable_by_pair: negative target");
  if (da < 1 || db < 1) throw DomainError("representable_by_pair: generators must be positive");
  auto m64 = to_u64(M), a64 = to_u64(da), b64 = to_u64(db);
  if (m64 && a64 && b64 && *m64 < kValueLimit && *a64 < kValueLimit && *b64 < kValueLimit) {
    auto r = detail::representable_by_pair_u64(*m64, *a64, *b64);
    if (!r) return std::nullopt;
    return std::make_pair(big(r->first), big(r->second));
  }
  const BigInt g = gcd(da, db);
  if (floor_mod(M, g) != 0) return std::nullopt;
  const BigInt A = da / g, B = db / g, Mg = M / g;
  BigInt y = 0;
  if (A != 1) y = floor_mod(Mg * mod_inverse(floor_mod(B, A), A), A);
  if (y * B > Mg) return std::nullopt;
  return std::make_pair(BigInt((Mg - y * B) / A), y);
}

bool membership(const Semigroup& s, const BigInt& x) {
  if (sgn(x) < 0) throw DomainError("membership: negative argument " + x.get_str());
  const auto& d = s.gens();
  auto small = s.small_gens(kValueLimit);
  auto x64 = to_u64(x);
  if (small && x64 && *x64 < kValueLimit) {
    const auto [d1, d2, d3] = *small;
    const std::uint64_t top = std::min(d1 - 1, *x64 / d3);
    for (std::uint64_t v3 = 0; v3 <= top; ++v3) {
      if (detail::representable_by_pair_u64(*x64 - v3 * d3, d1, d2)) return true;
    }
    return false;
  }
  BigInt top = x / d[2];
  if (top > d[0] - 1) top = d[0] - 1;
  for (BigInt v3 = 0; v3 <= top; ++v3) {
    if (representable_by_pair(x - v3 * d[2], d[0], d[1])) return true;
  }
  return false;
}

AperyTable apery_set(const Semigroup& s, const BigInt& d, const OracleConfig& cfg) {
  const auto& g = s.gens();
  int idx = -1;
  for (int i = 0; i < 3; ++i) {
    if (g[static_cast<std::size_t>(i)] == d) idx = i;
  }
  if (idx < 0) throw DomainError("apery_set: " + d.get_str() + " is not a generator of " + s.to_string());
  if (d > big(cfg.max_apery)) {
    throw ResourceError("apery_set: base " + d.get_str() + " exceeds the sieve cap max_apery=" +
                        std::to_string(cfg.max_apery));
  }
  auto small = s.small_gens(kValueLimit);
  const std::uint64_t base = *to_u64(d);
  std::uint64_t e[2];
  int j = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != idx) {
      auto v = to_u64(g[static_cast<std::size_t>(i)]);
      if (!small || !v) throw ResourceError("apery_set: generators exceed 62-bit range");
      e[j++] = *v;
    }
  }
  // Elements are bounded by (base - 1) * max(e).
  if (static_cast<unsigned __int128>(base) * std::max(e[0], e[1]) >= kValueLimit) {
    throw ResourceError("apery_set: element values would exceed 62 bits for " + s.to_string());
  }
  std::vector<std::uint64_t> w;
  if (cfg.method == AperyMethod::dijkstra) {
    w = apery_dijkstra(base, e[0], e[1]);
  } else {
    w.assign(base, kInf);
    w[0] = 0;
    relax_round_robin(w, base, e[0]);
    relax_round_robin(w, base, e[1]);
  }
  if (std::find(w.begin(), w.end(), kInf) != w.end()) {
    throw InternalError("apery_set: unreachable residue for " + s.to_string());
  }
  return AperyTable(base, std::move(w));
}

BigInt frobenius_oracle(const Semigroup& s, const OracleConfig& cfg) {
  return apery_set(s, s.gen(0), cfg).frobenius();
}

BigInt genus_oracle(const Semigroup& s, const OracleConfig& cfg) {
  return apery_set(s, s.gen(0), cfg).genus();
}

GapSet gaps(const Semigroup& s, const OracleConfig& cfg, std::uint64_t max_count) {
  const AperyTable t = apery_set(s, s.gen(0), cfg);
  const BigInt genus = t.genus();
  if (genus > big(max_count)) {
    throw ResourceError("gaps: genus " + genus.get_str() + " exceeds the gap-list cap " +
                        std::to_string(max_count));
  }
  GapSet out;
  out.gaps.reserve(*to_u64(genus));
  const std::uint64_t base = t.base();
  for (std::uint64_t r = 0; r < base; ++r) {
    for (std::uint64_t x = r; x < t.elements()[r]; x += base) out.gaps.push_back(x);
  }
  std::sort(out.gaps.begin(), out.gaps.end());
  return out;
}

bool is_symmetric_oracle(const Semigroup& s, const OracleConfig& cfg) {
  const AperyTable t = apery_set(s, s.gen(0), cfg);
  return 2 * t.genus() == t.frobenius() + 1;
}

std::vector<std::uint8_t> hilbert_series_truncated(const Semigroup& s, std::uint64_t N,
                                                   std::uint64_t max_len) {
  if (N >= max_len) {
    throw ResourceError("hilbert_series_truncated: N=" + std::to_string(N) +
                        " exceeds the coefficient cap " + std::to_string(max_len));
  }
  auto small = s.small_gens(kValueLimit);
  const std::uint64_t len = N + 1;
  if (!small || (*small)[2] >= max_len) {
    // Every generator beyond N: only the constant term survives.
    std::vector<std::uint8_t> out(len, 0);
    out[0] = 1;
    for (int i = 0; i < 3; ++i) {
      auto v = to_u64(s.gen(i));
      if (v && *v <= N) throw ResourceError("hilbert_series_truncated: generators too large");
    }
    return out;
  }
  const std::uint64_t pad = (*small)[2];
  std::vector<std::uint8_t> buf(pad + len, 0);
  fill_indicator(buf.data() + pad, len, 0, *small, simd::kernels());
  return std::vector<std::uint8_t>(buf.begin() + static_cast<std::ptrdiff_t>(pad), buf.end());
}

std::vector<SeriesTerm> series_times_denominator(const Semigroup& s, std::uint64_t N) {
  auto small = s.small_gens(std::uint64_t{1} << 40);
  if (!small) throw ResourceError("series_times_denominator: generators exceed 2^40");
  const auto [d1, d2, d3] = *small;
  const std::uint64_t pad = d1 + d2 + d3;
  const simd::SubsetLags lags{{0, d1, d2, d3, d1 + d2, d1 + d3, d2 + d3, d1 + d2 + d3}};
  const std::size_t block = std::max<std::size_t>(std::size_t{1} << 20, static_cast<std::size_t>(pad));
  std::vector<std::uint8_t> buf(pad + block, 0);
  std::vector<std::pair<std::size_t, int>> hits;
  std::vector<SeriesTerm> out;
  const auto& kern = simd::kernels();
  for (std::uint64_t base = 0; base <= N;) {
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(block, N + 1 - base));
    std::uint8_t* cur = buf.data() + pad;
    fill_indicator(cur, len, base, *small, kern);
    hits.clear();
    kern.numerator_scan(cur, len, lags, hits);
    for (auto [pos, c] : hits) out.push_back({base + pos, c});
    std::memmove(buf.data(), buf.data() + len, pad);
    base += len;
  }
  return out;
}

}  // namespace trisg
