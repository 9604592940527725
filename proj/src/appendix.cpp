// Diophantine instances for symmetric R_n^k, k = 2, 3, 4, their lattice
// regions, and the checks run over them.

#include <algorithm>
#include <set>

#include "trisg/error.hpp"
#include "trisg/symmetry.hpp"

namespace trisg {

namespace {

constexpr std::size_t kIssueLimit = 8;

BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// (alpha*y + beta)^k, ascending degree.
std::vector<BigInt> linear_power(const BigInt& alpha, const BigInt& beta, unsigned k) {
  std::vector<BigInt> c(k + 1);
  for (unsigned d = 0; d <= k; ++d) c[d] = binomial(k, d) * ipow(alpha, d) * ipow(beta, k - d);
  return c;
}

std::vector<BigInt> combine(const std::array<std::array<long long, 2>, 3>& base, unsigned k, long long offset,
                            const BigInt& x1, const BigInt& x2) {
  auto term = [&](int i) {
    const BigInt alpha = big_signed(base[static_cast<std::size_t>(i)][0]);
    const BigInt beta = big_signed(base[static_cast<std::size_t>(i)][1]);
    return linear_power(alpha, alpha * big_signed(offset) + beta, k);
  };
  const auto c0 = term(0), c1 = term(1), c2 = term(2);
  std::vector<BigInt> out(k + 1);
  for (unsigned d = 0; d <= k; ++d) out[d] = x1 * c1[d] + x2 * c2[d] - c0[d];
  return out;
}

LatticeBox box(long long lo1, std::optional<long long> hi1, long long lo2, std::optional<long long> hi2) {
  LatticeBox b;
  b.lo = {lo1, lo2};
  b.hi = {hi1, hi2};
  return b;
}

LatticeBox point(long long x1, long long x2) { return box(x1, x1, x2, x2); }
LatticeBox row_from(long long lo1, long long x2) { return box(lo1, std::nullopt, x2, x2); }
LatticeBox row_range(long long lo1, long long hi1, long long x2) { return box(lo1, hi1, x2, x2); }

LatticeRegion cert(std::string name, std::vector<LatticeBox> boxes) {
  return {std::move(name), LatticeRegion::Tag::certificate, std::move(boxes), {}};
}

LatticeRegion finite(std::string name, std::vector<LatticeBox> boxes, std::string note = {}) {
  return {std::move(name), LatticeRegion::Tag::finite, std::move(boxes), std::move(note)};
}

// The membership instance: (n+1)^k = x1*(n-1)^k + x2*n^k.
DiophantineInstance membership_instance(unsigned k, long long offset, long long n_min) {
  auto inst = make_instance("membership, k=" + std::to_string(k), k, {{{1, 1}, {1, -1}, {1, 0}}}, offset, n_min);
  inst.variable = "n";
  return inst;
}

// The gluing instance, odd n = 2q+1: (2q+1)^k = x1*q^k + x2*(q+1)^k.
DiophantineInstance gluing_instance(unsigned k, long long offset, long long q_min) {
  auto inst = make_instance("gluing, k=" + std::to_string(k), k, {{{2, 1}, {1, 0}, {1, 1}}}, offset, q_min);
  inst.variable = "q";
  inst.n_scale = 2;
  inst.n_shift = 1;
  return inst;
}

std::vector<DiophantineInstance> proposition1() {
  auto a = membership_instance(2, 4, 5);
  a.params = "a1,a2";
  a.shifted = "s";
  a.regions = {cert("A1", {box(1, std::nullopt, 1, std::nullopt)})};

  auto b = gluing_instance(2, 1, 2);
  b.params = "b1,b2";
  b.variable = "p";
  b.shifted = "s";
  b.regions = {
      cert("B1", {row_from(5, 1)}),
      cert("B2", {row_range(1, 3, 1)}),
      cert("B3", {row_from(2, 2)}),
      cert("B4", {point(1, 2)}),
      cert("B5", {box(1, std::nullopt, 3, std::nullopt)}),
      finite("Bbar1", {point(4, 1)}),
  };
  return {a, b};
}

std::vector<DiophantineInstance> proposition2() {
  auto a = membership_instance(3, 3, 4);
  a.params = "e1,e2";
  a.shifted = "t";
  a.regions = {
      cert("E1", {row_from(5, 1)}),
      cert("E2", {row_from(2, 2)}),
      cert("E3", {box(1, std::nullopt, 3, std::nullopt)}),
      finite("E4", {row_range(1, 4, 1)}),
      finite("E5", {point(1, 2)}, "printed as e1=e2=1, a point of E4; (1,2) is otherwise uncovered"),
  };

  auto b = gluing_instance(3, 1, 2);
  b.params = "c1,c2";
  b.shifted = "p";
  b.regions = {
      cert("C1", {row_range(1, 7, 1), row_from(19, 1)}),
      cert("C2", {row_range(1, 6, 2), row_from(11, 2)}),
      cert("C3", {row_range(1, 3, 3), row_from(6, 3)}),
      cert("C4", {row_from(4, 4)}),
      cert("C5", {row_from(3, 5)}),
      cert("C6", {row_from(2, 6)}),
      cert("C7", {box(1, std::nullopt, 7, std::nullopt)}),
      finite("Cbar1", {row_range(8, 18, 1)}),
      finite("Cbar2", {row_range(7, 10, 2)}),
      finite("Cbar3", {row_range(4, 5, 3)}),
      finite("Cbar4", {row_range(1, 3, 4)}),
      finite("Cbar5", {row_range(1, 2, 5)}),
      finite("Cbar6", {point(1, 6)}),
  };
  return {a, b};
}

std::vector<DiophantineInstance> proposition3() {
  auto a = membership_instance(4, 3, 5);
  a.params = "f1,f2";
  a.shifted = "u";
  a.regions = {
      cert("F1", {row_from(11, 1)}),
      cert("F2", {row_from(6, 2)}),
      cert("F3", {box(1, std::nullopt, 3, std::nullopt)}),
      finite("F4", {row_range(1, 10, 1)}),
      finite("F5", {row_range(1, 5, 2)}),
  };

  auto b = gluing_instance(4, 2, 2);
  b.params = "h1,h2";
  b.shifted = "v";
  const std::array<std::array<long long, 2>, 7> split{{{15, 34}, {14, 29}, {13, 24}, {12, 19}, {11, 15}, {8, 12}, {3, 10}}};
  for (long long j = 1; j <= 7; ++j) {
    const auto [hi, from] = split[static_cast<std::size_t>(j - 1)];
    b.regions.push_back(cert("H" + std::to_string(j), {row_range(1, hi, j), row_from(from, j)}));
  }
  for (long long j = 8; j <= 14; ++j) b.regions.push_back(cert("H" + std::to_string(j), {row_from(16 - j, j)}));
  b.regions.push_back(cert("H15", {box(1, std::nullopt, 15, std::nullopt)}));
  const std::array<std::array<long long, 2>, 7> bar{{{16, 33}, {15, 28}, {14, 23}, {13, 18}, {12, 14}, {9, 11}, {4, 9}}};
  for (long long j = 1; j <= 7; ++j) {
    const auto [lo, hi] = bar[static_cast<std::size_t>(j - 1)];
    b.regions.push_back(finite("Hbar" + std::to_string(j), {row_range(lo, hi, j)}));
  }
  for (long long j = 8; j <= 14; ++j) b.regions.push_back(finite("Hbar" + std::to_string(j), {row_range(1, 15 - j, j)}));
  return {a, b};
}

BigInt n_of(const DiophantineInstance& inst, const BigInt& z) {
  return big_signed(inst.n_scale) * z + big_signed(inst.n_shift);
}

}  // namespace

bool LatticeBox::contains(long long x1, long long x2) const {
  const long long x[2] = {x1, x2};
  for (int i = 0; i < 2; ++i) {
    if (x[i] < lo[static_cast<std::size_t>(i)]) return false;
    if (hi[static_cast<std::size_t>(i)] && x[i] > *hi[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

std::string LatticeBox::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < 2; ++i) {
    if (i) out += ", ";
    const std::string var = "x" + std::to_string(i + 1);
    if (hi[i] && *hi[i] == lo[i]) {
      out += var + "=" + std::to_string(lo[i]);
    } else if (hi[i]) {
      out += std::to_string(lo[i]) + "<=" + var + "<=" + std::to_string(*hi[i]);
    } else {
      out += var + ">=" + std::to_string(lo[i]);
    }
  }
  return "{" + out + "}";
}

bool LatticeRegion::contains(long long x1, long long x2) const {
  return std::any_of(boxes.begin(), boxes.end(), [&](const LatticeBox& b) { return b.contains(x1, x2); });
}

std::vector<std::array<long long, 2>> LatticeRegion::points() const {
  std::set<std::array<long long, 2>> out;
  for (const auto& b : boxes) {
    if (!b.bounded()) throw DomainError("region " + name + " is unbounded");
    for (long long x1 = b.lo[0]; x1 <= *b.hi[0]; ++x1) {
      for (long long x2 = b.lo[1]; x2 <= *b.hi[1]; ++x2) out.insert({x1, x2});
    }
  }
  return {out.begin(), out.end()};
}

std::vector<BigInt> DiophantineInstance::original_poly(const BigInt& x1, const BigInt& x2) const {
  return combine(base, k, 0, x1, x2);
}

std::vector<BigInt> DiophantineInstance::shifted_poly(const BigInt& x1, const BigInt& x2) const {
  std::vector<BigInt> out;
  for (const auto& f : forms) out.push_back(f.eval(x1, x2));
  return out;
}

DiophantineInstance make_instance(std::string name, unsigned k, std::array<std::array<long long, 2>, 3> base,
                                  long long offset, long long z_min) {
  DiophantineInstance inst;
  inst.name = std::move(name);
  inst.k = k;
  inst.base = base;
  inst.offset = offset;
  inst.z_min = z_min;
  const auto c0 = combine(base, k, offset, 0, 0);
  const auto c1 = combine(base, k, offset, 1, 0);
  const auto c2 = combine(base, k, offset, 0, 1);
  for (unsigned d = 0; d <= k; ++d) inst.forms.push_back({c0[d], c1[d] - c0[d], c2[d] - c0[d]});
  return inst;
}

bool region_sign_certificate(const DiophantineInstance& inst, const LatticeRegion& region) {
  if (region.tag != LatticeRegion::Tag::certificate) {
    throw DomainError("region " + region.name + " is a finite-scan region");
  }
  if (region.boxes.empty()) throw DomainError("region " + region.name + " is empty");
  for (const auto& b : region.boxes) {
    if (b.lo[0] < 1 || b.lo[1] < 1) throw DomainError("region " + region.name + " reaches outside x1, x2 >= 1");
  }
  // Each box gets its own sign: Descartes needs one sign per point only.
  auto box_signed = [&](const LatticeBox& b, int sign) {
    std::vector<std::array<BigInt, 2>> vertices;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        vertices.push_back({big_signed(i && b.hi[0] ? *b.hi[0] : b.lo[0]), big_signed(j && b.hi[1] ? *b.hi[1] : b.lo[1])});
      }
    }
    bool strict = false;
    for (const auto& f : inst.forms) {
      if (!b.hi[0] && sign * sgn(f.c1) < 0) return false;
      if (!b.hi[1] && sign * sgn(f.c2) < 0) return false;
      bool all_positive = true;
      for (const auto& v : vertices) {
        const int s = sign * sgn(f.eval(v[0], v[1]));
        if (s < 0) return false;
        if (s == 0) all_positive = false;
      }
      strict = strict || all_positive;
    }
    return strict;
  };
  return std::all_of(region.boxes.begin(), region.boxes.end(),
                     [&](const LatticeBox& b) { return box_signed(b, 1) || box_signed(b, -1); });
}

bool InstanceReport::certificates_ok() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const RegionCheck& c) { return c.passed; });
}

InstanceReport check_instance(const DiophantineInstance& inst, long long window) {
  InstanceReport rep;
  rep.name = inst.name;
  rep.partition_ok = true;
  for (long long x1 = 1; x1 <= window; ++x1) {
    for (long long x2 = 1; x2 <= window; ++x2) {
      std::string owners;
      int count = 0;
      for (const auto& r : inst.regions) {
        if (!r.contains(x1, x2)) continue;
        ++count;
        owners += (owners.empty() ? "" : ",") + r.name;
      }
      if (count == 1) continue;
      rep.partition_ok = false;
      if (rep.partition_issues.size() < kIssueLimit) {
        rep.partition_issues.push_back("(" + std::to_string(x1) + "," + std::to_string(x2) + ") in " +
                                       (count ? owners : std::string("no region")));
      }
    }
  }

  std::set<std::tuple<long long, long long, BigInt>> seen;
  auto record = [&](DiophantineSolution s) {
    if (seen.insert({s.x1, s.x2, s.z}).second) rep.solutions.push_back(std::move(s));
  };
  for (const auto& r : inst.regions) {
    if (r.tag == LatticeRegion::Tag::certificate) {
      RegionCheck c{r.name, region_sign_certificate(inst, r), {}};
      for (const auto& b : r.boxes) c.detail += (c.detail.empty() ? "" : " u ") + b.to_string();
      rep.certificates.push_back(std::move(c));
      continue;
    }
    FiniteScan scan{r.name, 0, {}};
    for (const auto& [x1, x2] : r.points()) {
      ++scan.equations;
      for (const auto& z : integer_root_scan(inst.original_poly(big_signed(x1), big_signed(x2)))) {
        if (z < big_signed(inst.z_min)) continue;
        DiophantineSolution s{x1, x2, z, n_of(inst, z)};
        scan.solutions.push_back(s);
        record(s);
      }
    }
    rep.finite.push_back(std::move(scan));
  }

  // Values of the original variable at or below the shift: the certificates
  // say nothing there, so solve x1*A + x2*B = C directly.
  for (long long z = inst.z_min; z <= inst.offset; ++z) {
    const auto c0 = inst.original_poly(0, 0), c1 = inst.original_poly(1, 0), c2 = inst.original_poly(0, 1);
    const BigInt Z = big_signed(z);
    BigInt C = 0, A = 0, B = 0;
    for (std::size_t d = c0.size(); d-- > 0;) {
      C = C * Z - c0[d];
      A = A * Z + c1[d] - c0[d];
      B = B * Z + c2[d] - c0[d];
    }
    if (A <= 0 || B <= 0) throw InternalError("boundary equation with nonpositive coefficient in " + inst.name);
    for (BigInt x2 = 1; A + x2 * B <= C; ++x2) {
      const BigInt rest = C - x2 * B;
      if (floor_mod(rest, A) != 0) continue;
      DiophantineSolution s{*to_i64(rest / A), *to_i64(x2), Z, n_of(inst, Z)};
      rep.boundary.push_back(s);
      record(s);
    }
  }
  std::sort(rep.solutions.begin(), rep.solutions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.z, a.x1, a.x2) < std::tie(b.z, b.x1, b.x2);
  });
  return rep;
}

std::vector<DiophantineInstance> proposition_instances(int which) {
  switch (which) {
    case 1: return proposition1();
    case 2: return proposition2();
    case 3: return proposition3();
    default: throw DomainError("proposition must be 1, 2 or 3, got " + std::to_string(which));
  }
}

std::vector<long long> proposition_claim(int which) {
  switch (which) {
    case 1: return {3, 4, 5};
    case 2: return {3};
    case 3: return {3, 5, 7};
    default: throw DomainError("proposition must be 1, 2 or 3, got " + std::to_string(which));
  }
}

PropositionReport verify_proposition(int which, const ProveOptions& opt) {
  PropositionReport rep;
  rep.which = which;
  rep.k = static_cast<unsigned>(which + 1);
  rep.claimed = proposition_claim(which);
  const auto instances = proposition_instances(which);

  std::set<long long> derived;
  // Below these bounds n is classified directly. Even n admit no gluing:
  // the three generators are then pairwise coprime.
  long long direct_max = 2;
  for (const auto& inst : instances) direct_max = std::max(direct_max, inst.n_scale * inst.z_min + inst.n_shift - 1);
  for (long long n = 3; n <= direct_max; ++n) {
    if (structural_symmetry(Semigroup::power_family(rep.k, static_cast<std::uint64_t>(n))).symmetric()) {
      rep.direct.push_back(n);
      derived.insert(n);
    }
  }
  for (const auto& inst : instances) {
    rep.instances.push_back(check_instance(inst, opt.partition_window));
    for (const auto& s : rep.instances.back().solutions) derived.insert(*to_i64(s.n));
  }
  rep.derived.assign(derived.begin(), derived.end());

  rep.scan_max = opt.scan_max;
  OracleConfig oc;
  oc.max_apery = opt.oracle_max_d1;
  for (long long n = 3; n <= opt.scan_max; ++n) {
    const auto s = Semigroup::power_family(rep.k, static_cast<std::uint64_t>(n));
    const bool structural = structural_symmetry(s).symmetric();
    if (structural) rep.scan_symmetric.push_back(n);
    if (s.gen(0) <= big(opt.oracle_max_d1)) {
      ++rep.oracle_checked;
      if (is_symmetric_oracle(s, oc) != structural) rep.oracle_disagreements.push_back(n);
    }
  }

  rep.verdict = rep.derived == rep.claimed && rep.scan_symmetric == rep.claimed && rep.oracle_disagreements.empty();
  for (const auto& i : rep.instances) rep.verdict = rep.verdict && i.partition_ok && i.certificates_ok();
  return rep;
}

}  // namespace trisg
