#include "trisg/explorer.hpp"

#include <algorithm>
#include <set>

#include "trisg/error.hpp"
#include "trisg/semigroup.hpp"
#include "trisg/symmetry.hpp"

namespace trisg {

namespace {

using Points = std::vector<std::pair<long long, Rational>>;

std::string entry_name(int i, int j) { return "E" + std::to_string(i + 1) + std::to_string(j + 1); }

int max_entry_bound(unsigned k) {
  int b = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) b = std::max(b, entry_degree_bound(k, i, j));
  }
  return b;
}

bool matrix_matches(const FittedFamily& f, long long m, const RelationMatrix& a) {
  const Rational x(big_signed(m));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (f.matrix_polys[i][j].eval(x) != Rational(a.at(i, j))) return false;
    }
  }
  return true;
}

/// Fit over the longest suffix of the points, at least 3 long.
std::optional<std::pair<PolyQ, std::size_t>> fit_suffix(const Points& pts, std::optional<int> max_degree) {
  for (std::size_t s = 0; s + 3 <= pts.size(); ++s) {
    const Points tail(pts.begin() + static_cast<std::ptrdiff_t>(s), pts.end());
    if (auto p = fit_polynomial_exact(tail, max_degree)) return std::make_pair(*p, s);
  }
  return std::nullopt;
}

long long first_m(long long T, long long j) {
  long long m = 1;
  while (T * m + j < 3) ++m;
  return m;
}

}  // namespace

std::optional<PolyQ> fit_polynomial_exact(const Points& points, std::optional<int> max_degree) {
  const auto N = static_cast<long long>(points.size());
  if (N < 2) throw DomainError("fit_polynomial_exact: at least 2 points required");
  std::set<long long> xs;
  for (const auto& [x, y] : points) {
    if (!xs.insert(x).second) throw DomainError("fit_polynomial_exact: repeated abscissa " + std::to_string(x));
  }
  long long D = N - 3;
  if (max_degree) D = std::min<long long>(D, *max_degree);
  // Newton form through the first D+1 points, then every point is checked.
  PolyQ p;
  if (D >= 0) {
    const auto M = static_cast<std::size_t>(D + 1);
    std::vector<Rational> dd(M);
    for (std::size_t i = 0; i < M; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < M; ++level) {
      for (std::size_t i = M - 1; i >= level; --i) {
        dd[i] = (dd[i] - dd[i - 1]) / Rational(big_signed(points[i].first - points[i - level].first));
        dd[i].canonicalize();
      }
    }
    p = PolyQ::constant(dd[M - 1]);
    for (std::size_t i = M - 1; i-- > 0;) {
      p = p * PolyQ({Rational(-big_signed(points[i].first)), Rational(1)}) + PolyQ::constant(dd[i]);
    }
  }
  for (const auto& [x, y] : points) {
    if (p.eval(big_signed(x)) != y) return std::nullopt;
  }
  return p;
}

long long canonical_residue(long long T, long long j) {
  if (T < 1) throw DomainError("canonical_residue: period must be positive");
  long long r = ((j % T) + T) % T;
  if (2 * r > T) r -= T;
  return r;
}

int entry_degree_bound(unsigned k, int i, int j) {
  if (k < 2) throw DomainError("entry_degree_bound: k must be at least 2");
  const int q = static_cast<int>(k / 2);
  if (k % 2 == 0) return q;
  return i < 2 && j < 2 ? q + 1 : q;
}

int invariant_degree(unsigned k) {
  if (k < 2) throw DomainError("invariant_degree: k must be at least 2");
  const int q = static_cast<int>(k / 2);
  return k % 2 == 0 ? 3 * q : 3 * q + 2;
}

const MatrixCache::Entry& MatrixCache::at(long long n) {
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  Entry e;
  if (n < 3) {
    e.reason = "n < 3";
  } else {
    const auto s = Semigroup::power_family(k_, static_cast<std::uint64_t>(n));
    if (structural_symmetry(s).symmetric()) {
      e.reason = "symmetric";
    } else {
      try {
        e.matrix = minimal_relation_matrix(s, cfg_);
        const auto z = syzygy_data(*e.matrix, s);
        e.F = z.F;
        e.G = z.G;
      } catch (const Error& err) {
        e.reason = err.what();
      }
    }
  }
  return cache_.emplace(n, std::move(e)).first->second;
}

RelationMatrix FittedFamily::matrix_at(long long m) const {
  RelationMatrix::Entries e;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) e[i][j] = matrix_polys[i][j].eval_integer(big_signed(m));
  }
  return RelationMatrix(e);
}

FittedFamily fit_family(unsigned k, long long T, long long j, long long m_lo, long long m_hi, const FitOptions& opt) {
  MatrixCache cache(k, opt.relation);
  return fit_family(cache, T, j, m_lo, m_hi, opt);
}

FittedFamily fit_family(MatrixCache& cache, long long T, long long j, long long m_lo, long long m_hi,
                        const FitOptions& opt) {
  if (T < 1) throw DomainError("fit_family: period must be positive");
  FittedFamily f;
  f.k = cache.k();
  f.T = T, f.j = j, f.m_lo = m_lo, f.m_hi = m_hi;
  const long long quota = opt.exception_quota_n ? opt.exception_quota_n : T * (max_entry_bound(f.k) + 2);

  std::vector<std::pair<long long, const MatrixCache::Entry*>> usable;
  for (long long m = m_lo; m <= m_hi; ++m) {
    const auto& e = cache.at(f.n_of(m));
    if (e.matrix) {
      usable.emplace_back(m, &e);
    } else {
      f.skipped.push_back({m, f.n_of(m), e.reason});
    }
  }
  if (usable.size() < 3) {
    throw InsufficientDataError("fit_family: k=" + std::to_string(f.k) + " n=" + std::to_string(T) + "m" +
                                    (j < 0 ? "" : "+") + std::to_string(j) + " has " +
                                    std::to_string(usable.size()) + " usable points in m=" + std::to_string(m_lo) +
                                    ".." + std::to_string(m_hi) + ", need 3",
                                3);
  }

  auto fit_from = [&](std::size_t s, bool record) {
    bool all = true;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        Points pts;
        for (std::size_t i = s; i < usable.size(); ++i) {
          pts.emplace_back(usable[i].first, Rational(usable[i].second->matrix->at(a, b)));
        }
        auto cap = opt.enforce_bounds ? std::optional<int>(entry_degree_bound(f.k, a, b)) : opt.max_degree;
        auto p = fit_polynomial_exact(pts, cap);
        if (p) {
          f.matrix_polys[a][b] = *p;
        } else {
          all = false;
          f.matrix_polys[a][b] = PolyQ();
          if (!record) return false;
          f.unfitted.push_back(entry_name(a, b));
        }
      }
    }
    return all;
  };
  std::size_t start = 0;
  bool found = false;
  for (std::size_t s = 0; s + 3 <= usable.size(); ++s) {
    if (s > 0 && f.n_of(usable[s - 1].first) >= quota) break;
    if (fit_from(s, false)) {
      start = s;
      found = true;
      break;
    }
  }
  if (!found) fit_from(0, true);
  f.fit_from_m = usable[start].first;
  for (std::size_t i = 0; i < start; ++i) {
    if (!matrix_matches(f, usable[i].first, *usable[i].second->matrix)) {
      f.exceptional.push_back({usable[i].first, f.n_of(usable[i].first), "differs from the fitted polynomials"});
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const int d = f.matrix_polys[a][b].degree(), bound = entry_degree_bound(f.k, a, b);
      if (d > bound) {
        f.bound_violations.push_back(entry_name(a, b) + " degree " + std::to_string(d) + " > " + std::to_string(bound));
      }
    }
  }

  if (opt.fit_invariants) {
    Points Fp, Gp;
    for (const auto& [m, e] : usable) {
      Fp.emplace_back(m, Rational(e->F));
      Gp.emplace_back(m, Rational(e->G));
    }
    const int cap = invariant_degree(f.k) + 3;
    if (auto r = fit_suffix(Fp, cap)) f.F = r->first, f.F_from_m = Fp[r->second].first;
    if (auto r = fit_suffix(Gp, cap)) f.G = r->first, f.G_from_m = Gp[r->second].first;
  }

  for (long long m = m_hi + 1; m <= m_hi + opt.extrapolate; ++m) {
    const auto& e = cache.at(f.n_of(m));
    if (!e.matrix) {
      f.extrapolation_misses.push_back({m, f.n_of(m), e.reason});
    } else if (found && matrix_matches(f, m, *e.matrix)) {
      ++f.extrapolation_hits;
    } else {
      f.extrapolation_misses.push_back({m, f.n_of(m), "prediction differs from the computed matrix"});
    }
  }
  return f;
}

bool DualityReport::entries_ok() const {
  for (const auto& row : entry_map_ok) {
    for (bool b : row) {
      if (!b) return false;
    }
  }
  return true;
}

DualityReport duality_check(unsigned k, long long T, long long j, long long m_lo, long long m_hi,
                            const FitOptions& opt) {
  MatrixCache cache(k, opt.relation);
  return duality_check(cache, T, j, m_lo, m_hi, opt);
}

DualityReport duality_check(MatrixCache& cache, long long T, long long j, long long m_lo, long long m_hi,
                            const FitOptions& opt) {
  DualityReport r;
  r.k = cache.k();
  r.T = T, r.j = j;
  FitOptions o = opt;
  o.fit_invariants = true;
  r.minus = fit_family(cache, T, -j, m_lo, m_hi, o);
  r.plus = fit_family(cache, T, j, m_lo, m_hi, o);
  const bool complete = r.minus.complete() && r.plus.complete();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      r.entry_map_ok[a][b] = complete && r.plus.matrix_polys[a][b] == r.minus.matrix_polys[2 - a][2 - b].reflect();
    }
  }
  if (r.minus.G) r.genus_polys[0] = *r.minus.G;
  if (r.plus.G) r.genus_polys[1] = *r.plus.G;
  r.parity_ok = r.minus.G && r.plus.G && *r.minus.G == r.plus.G->reflect();
  return r;
}

long long period_scan_min_n(unsigned k, long long t_max, int extrapolate) {
  return t_max * (max_entry_bound(k) + 4 + extrapolate) + t_max / 2;
}

PeriodReport period_scan(unsigned k, long long t_max, long long n_max, const PeriodOptions& opt) {
  MatrixCache cache(k, opt.relation);
  return period_scan(cache, t_max, n_max, opt);
}

PeriodReport period_scan(MatrixCache& cache, long long t_max, long long n_max, const PeriodOptions& opt) {
  PeriodReport rep;
  rep.k = cache.k();
  rep.t_max = t_max;
  rep.n_max = n_max;
  if (t_max < 1) throw DomainError("period_scan: t_max must be positive");
  const long long need = period_scan_min_n(rep.k, t_max, opt.extrapolate);
  if (n_max < need) {
    throw InsufficientDataError("period_scan: n_max=" + std::to_string(n_max) + " is too small for t_max=" +
                                    std::to_string(t_max) + ", need at least " + std::to_string(need),
                                need);
  }
  FitOptions fo;
  fo.extrapolate = opt.extrapolate;
  fo.enforce_bounds = true;
  fo.fit_invariants = false;
  for (long long T = 1; T <= t_max; ++T) {
    std::vector<ResidueEvidence> evidence;
    std::set<long long> exceptional;
    std::string failure;
    for (long long j = -((T - 1) / 2); j <= T / 2 && failure.empty(); ++j) {
      ResidueEvidence ev;
      ev.j = j;
      const long long m_lo = first_m(T, j), m_hi = (n_max - j) / T - opt.extrapolate;
      try {
        const auto f = fit_family(cache, T, j, m_lo, m_hi, fo);
        ev.points = static_cast<int>(m_hi - m_lo + 1);
        ev.exceptional = static_cast<int>(f.exceptional.size() + f.skipped.size());
        ev.extrapolation_hits = f.extrapolation_hits;
        for (const auto& p : f.exceptional) exceptional.insert(p.n);
        for (const auto& p : f.skipped) {
          if (p.n >= 3) exceptional.insert(p.n);
        }
        if (!f.complete()) {
          ev.failure = "no fit within the degree bounds for " + f.unfitted.front();
        } else if (f.extrapolation_hits < opt.extrapolate) {
          ev.failure = "extrapolation missed at n=" + std::to_string(f.extrapolation_misses.front().n);
        }
      } catch (const InsufficientDataError& e) {
        ev.failure = e.what();
      }
      ev.ok = ev.failure.empty();
      if (!ev.ok) failure = "T=" + std::to_string(T) + ": j=" + std::to_string(j) + " " + ev.failure;
      evidence.push_back(std::move(ev));
    }
    if (!failure.empty()) {
      rep.rejected.push_back(failure);
      continue;
    }
    rep.T = T;
    rep.evidence = std::move(evidence);
    rep.exceptional_n.assign(exceptional.begin(), exceptional.end());
    break;
  }
  return rep;
}

bool DegreeReport::entries_ok() const {
  return !residues.empty() &&
         std::all_of(residues.begin(), residues.end(), [](const ResidueDegrees& r) { return r.entries_ok; });
}

bool DegreeReport::growth_ok() const {
  return !residues.empty() &&
         std::all_of(residues.begin(), residues.end(), [](const ResidueDegrees& r) { return r.growth_ok; });
}

DegreeReport conjecture_degree_report(unsigned k, long long T, long long n_max, const FitOptions& opt) {
  MatrixCache cache(k, opt.relation);
  return conjecture_degree_report(cache, T, n_max, opt);
}

DegreeReport conjecture_degree_report(MatrixCache& cache, long long T, long long n_max, const FitOptions& opt) {
  DegreeReport rep;
  rep.k = cache.k();
  rep.T = T;
  rep.expected_growth = invariant_degree(rep.k);
  for (auto& row : rep.max_degree) row.fill(-1);
  FitOptions o = opt;
  o.fit_invariants = true;
  o.extrapolate = 0;
  if (!o.enforce_bounds && !o.max_degree) o.max_degree = 2 * max_entry_bound(rep.k) + 2;
  for (long long j = -((T - 1) / 2); j <= T / 2; ++j) {
    const auto f = fit_family(cache, T, j, first_m(T, j), (n_max - j) / T, o);
    ResidueDegrees r;
    r.j = j;
    r.entries_ok = f.within_bounds();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        r.degree[a][b] = f.matrix_polys[a][b].degree();
        rep.max_degree[a][b] = std::max(rep.max_degree[a][b], r.degree[a][b]);
      }
    }
    if (f.F) r.F_degree = f.F->degree();
    if (f.G) r.G_degree = f.G->degree();
    r.growth_ok = r.F_degree == rep.expected_growth && r.G_degree == rep.expected_growth;
    rep.residues.push_back(r);
  }
  return rep;
}

}  // namespace trisg
