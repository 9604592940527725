#include "trisg/families.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "trisg/error.hpp"

namespace trisg {

std::string_view status_name(FormulaStatus s) {
  switch (s) {
    case FormulaStatus::verified: return "verified";
    case FormulaStatus::suspect_typo: return "suspect_typo";
    case FormulaStatus::corrected: return "corrected";
  }
  return "?";
}

std::string_view source_name(FamilyInvariants::Source s) {
  switch (s) {
    case FamilyInvariants::Source::formula: return "formula";
    case FamilyInvariants::Source::matrix: return "matrix";
    case FamilyInvariants::Source::exceptional: return "exceptional";
  }
  return "?";
}

bool Guard::contains(long long m) const {
  switch (kind) {
    case Kind::all: return true;
    case Kind::at_most: return m <= bound;
    case Kind::at_least: return m >= bound;
    case Kind::one_of: return std::find(values.begin(), values.end(), m) != values.end();
  }
  return false;
}

std::string Guard::to_string() const {
  switch (kind) {
    case Kind::all: return "all";
    case Kind::at_most: return "m<=" + std::to_string(bound);
    case Kind::at_least: return "m>=" + std::to_string(bound);
    case Kind::one_of: {
      std::string s = "m=";
      for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
      return s;
    }
  }
  return "?";
}

Guard Guard::parse(std::string_view text) {
  auto number = [&](std::string_view s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw ParseError("bad guard \"" + std::string(text) + "\"");
    }
    return v;
  };
  Guard g;
  if (text == "all") return g;
  if (text.substr(0, 3) == "m<=") {
    g.kind = Kind::at_most;
    g.bound = number(text.substr(3));
  } else if (text.substr(0, 3) == "m>=") {
    g.kind = Kind::at_least;
    g.bound = number(text.substr(3));
  } else if (text.substr(0, 2) == "m=") {
    g.kind = Kind::one_of;
    std::string_view rest = text.substr(2);
    for (;;) {
      const auto comma = rest.find(',');
      g.values.push_back(number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } else {
    throw ParseError("bad guard \"" + std::string(text) + "\"");
  }
  return g;
}

std::optional<long long> FamilyCase::m_of(long long n) const {
  const long long diff = n - offset;
  if (diff % modulus != 0) return std::nullopt;
  return diff / modulus;
}

bool FamilyCase::in_domain(long long m) const {
  if (m < m_min) return false;
  const long long n = n_of(m);
  if (n < 3) return false;
  return std::find(excluded_n.begin(), excluded_n.end(), n) == excluded_n.end();
}

const FormulaPiece* FamilyCase::formula(const std::vector<FormulaPiece>& pieces, long long m) const {
  for (const auto& p : pieces) {
    if (p.guard.contains(m)) return &p;
  }
  return nullptr;
}

std::string FamilyCase::name() const {
  return "k=" + std::to_string(k) + " " + parity + " case " + std::to_string(number) + " (" + label + ")";
}

std::string ExceptionalEntry::name() const {
  return "R_" + std::to_string(n) + "^" + std::to_string(k);
}

const FamilyCase* CaseLookup::family() const {
  auto p = std::get_if<const FamilyCase*>(&entry);
  return p ? *p : nullptr;
}
const ExceptionalEntry* CaseLookup::exceptional() const {
  auto p = std::get_if<const ExceptionalEntry*>(&entry);
  return p ? *p : nullptr;
}
const SymmetricEntry* CaseLookup::symmetric() const {
  auto p = std::get_if<const SymmetricEntry*>(&entry);
  return p ? *p : nullptr;
}

CaseLookup lookup_case(unsigned k, long long n, const FamilyTables& t) {
  if (k < 2 || k > 4) throw DomainError("family tables cover k = 2, 3, 4 only; got k=" + std::to_string(k));
  if (n < 3) throw DomainError("R_n^k requires n >= 3; got n=" + std::to_string(n));
  for (const auto& e : t.exceptional) {
    if (e.k == k && e.n == n) return {&e, 0};
  }
  for (const auto& s : t.symmetric) {
    if (s.k == k && s.n == n) return {&s, 0};
  }
  const FamilyCase* found = nullptr;
  long long found_m = 0;
  for (const auto& c : t.cases) {
    if (c.k != k) continue;
    auto m = c.m_of(n);
    if (!m || !c.in_domain(*m)) continue;
    if (found) throw TableError("cases overlap at k=" + std::to_string(k) + ", n=" + std::to_string(n));
    found = &c;
    found_m = *m;
  }
  if (!found) throw TableError("no case covers k=" + std::to_string(k) + ", n=" + std::to_string(n));
  return {found, found_m};
}

namespace {

RelationMatrix evaluate_case(const FamilyCase& c, long long m) {
  RelationMatrix::Entries e;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      try {
        e[i][j] = c.matrix[i][j].eval_integer(big_signed(m));
      } catch (const DomainError&) {
        throw TableError(c.name() + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") is not integral at m=" + std::to_string(m));
      }
    }
  }
  return RelationMatrix(e);
}

std::optional<BigInt> eval_piece(const std::optional<PolyQ>& p, long long m) {
  if (!p) return std::nullopt;
  const Rational v = p->eval(big_signed(m));
  if (v.get_den() != 1) return std::nullopt;
  return BigInt(v.get_num());
}

}  // namespace

RelationMatrix family_matrix(unsigned k, long long n, const FamilyTables& t) {
  const CaseLookup l = lookup_case(k, n, t);
  if (const auto* s = l.symmetric()) {
    throw DomainError("R_" + std::to_string(s->n) + "^" + std::to_string(k) + " is symmetric and has no 3x3 matrix");
  }
  if (const auto* e = l.exceptional()) {
    if (!e->matrix) throw DomainError(e->name() + " has no tabulated matrix");
    return *e->matrix;
  }
  const FamilyCase& c = *l.family();
  RelationMatrix a = evaluate_case(c, l.m);
  const MatrixReport r = validate_matrix(a, Semigroup::power_family(k, static_cast<std::uint64_t>(n)));
  if (!r.all_ok()) {
    std::string why;
    for (const auto& f : r.failures()) why += (why.empty() ? "" : ", ") + f;
    throw TableError(c.name() + " at m=" + std::to_string(l.m) + ": " + why);
  }
  return a;
}

FamilyInvariants family_invariants(unsigned k, long long n, const FamilyTables& t) {
  const CaseLookup l = lookup_case(k, n, t);
  if (l.symmetric()) {
    throw DomainError("R_" + std::to_string(n) + "^" + std::to_string(k) + " is symmetric; no tabulated invariants");
  }
  FamilyInvariants out;
  const Semigroup s = Semigroup::power_family(k, static_cast<std::uint64_t>(n));
  if (const auto* e = l.exceptional()) {
    out.source = FamilyInvariants::Source::exceptional;
    if (e->symmetric) {
      if (!e->F) throw TableError(e->name() + ": symmetric entry without F");
      out.F = e->F->effective();
      out.G = (out.F + 1) / 2;
    } else {
      const SyzygyData z = syzygy_data(*e->matrix, s);
      out.F = z.F;
      out.G = z.G;
    }
    if (e->F && e->F->value != out.F) {
      out.typo = true;
      out.printed_F = e->F->value;
    }
    if (e->G && e->G->value != out.G) {
      out.typo = true;
      out.printed_G = e->G->value;
    }
    if (!e->note.empty()) out.notes.push_back(e->note);
    if (e->F && !e->F->note.empty()) out.notes.push_back("F: " + e->F->note);
    if (e->G && !e->G->note.empty()) out.notes.push_back("G: " + e->G->note);
    return out;
  }
  const FamilyCase& c = *l.family();
  const SyzygyData z = syzygy_data(family_matrix(k, n, t), s);
  out.F = z.F;
  out.G = z.G;
  bool from_formula = true;
  auto check = [&](const std::vector<FormulaPiece>& pieces, const BigInt& truth, std::optional<BigInt>& printed,
                   const char* q) {
    const FormulaPiece* p = c.formula(pieces, l.m);
    if (!p) {
      from_formula = false;
      return;
    }
    const auto v = eval_piece(p->printed, l.m);
    if (p->status != FormulaStatus::verified || !v || *v != truth) {
      out.typo = true;
      from_formula = false;
      printed = v;
      std::string note = std::string(q) + " printed as \"" + p->text + "\"";
      if (p->corrected) note += ", corrected to " + p->corrected_text;
      if (!p->note.empty()) note += " (" + p->note + ")";
      out.notes.push_back(note);
    }
  };
  check(c.F, z.F, out.printed_F, "F");
  check(c.G, z.G, out.printed_G, "G");
  out.source = from_formula ? FamilyInvariants::Source::formula : FamilyInvariants::Source::matrix;
  return out;
}

std::vector<const TypoRecord*> TableReport::unflagged_typos() const {
  std::vector<const TypoRecord*> out;
  for (const auto& t : typos) {
    if (t.status == FormulaStatus::verified) out.push_back(&t);
  }
  return out;
}

namespace {

struct Truth {
  BigInt F, G;
  bool from_oracle;
};

class Validator {
 public:
  Validator(unsigned k, const ValidateOptions& opt, const FamilyTables& t) : k_(k), opt_(opt), t_(t) {}

  TableReport run(long long m_lo, long long m_hi) {
    report_.k = k_;
    for (const auto& c : t_.cases) {
      if (c.k == k_) check_case(c, m_lo, m_hi);
    }
    if (opt_.check_exceptional) {
      for (const auto& e : t_.exceptional) {
        if (e.k == k_) check_exceptional(e);
      }
    }
    for (const auto& g : t_.genus) {
      if (g.k == k_) check_genus(g, m_lo, m_hi);
    }
    finish_corrections();
    return std::move(report_);
  }

 private:
  struct PieceState {
    std::size_t record_index = 0;
    bool has_record = false;
    int correct_points = 0;
    bool correction_failed = false;
  };

  std::optional<Truth> oracle(long long n) {
    const Semigroup s = Semigroup::power_family(k_, static_cast<std::uint64_t>(n));
    if (s.gen(0) > big(opt_.oracle_max_d1)) return std::nullopt;
    auto it = oracle_cache_.find(n);
    if (it != oracle_cache_.end()) return it->second;
    const AperyTable a = apery_set(s, s.gen(0), opt_.oracle);
    Truth t{a.frobenius(), a.genus(), true};
    oracle_cache_.emplace(n, t);
    return t;
  }

  std::set<long long> probe_points(const FamilyCase& c, long long m_lo, long long m_hi) {
    std::set<long long> ms;
    for (long long m = m_lo; m <= m_hi; ++m) {
      if (c.in_domain(m)) ms.insert(m);
    }
    if (!opt_.probe_guards) return ms;
    for (const auto* pieces : {&c.F, &c.G}) {
      for (const auto& p : *pieces) {
        const auto& poly = p.effective();
        const int want = (poly ? std::max(poly->degree(), 0) : 0) + 2;
        int got = 0;
        const long long start = p.guard.kind == Guard::Kind::at_least ? std::max(p.guard.bound, c.m_min) : c.m_min;
        const long long stop = p.guard.kind == Guard::Kind::one_of
                                   ? *std::max_element(p.guard.values.begin(), p.guard.values.end())
                                   : start + 4 * want + 8;
        for (long long m = start; m <= stop && got < want; ++m) {
          if (c.in_domain(m) && p.guard.contains(m)) {
            ms.insert(m);
            ++got;
          }
        }
      }
    }
    return ms;
  }

  void compare_piece(const std::string& where, const char* q, const FormulaPiece& p, long long m, long long n,
                     const BigInt& truth, const std::string& adjudicated_by) {
    PieceState& st = pieces_[&p];
    const auto printed = eval_piece(p.printed, m);
    if (!printed || *printed != truth) {
      if (!st.has_record) {
        TypoRecord r;
        r.where = where;
        r.quantity = q;
        r.guard = p.guard.to_string();
        r.printed = p.text;
        r.status = p.status;
        r.corrected = p.corrected_text;
        r.n = n;
        r.printed_value = printed;
        r.true_value = truth;
        r.adjudicated_by = adjudicated_by;
        report_.typos.push_back(std::move(r));
        st.has_record = true;
        st.record_index = report_.typos.size() - 1;
      } else if (adjudicated_by == "oracle") {
        report_.typos[st.record_index].adjudicated_by = "oracle";
      }
    }
    if (p.corrected) {
      const auto fixed = eval_piece(p.corrected, m);
      if (fixed && *fixed == truth) {
        ++st.correct_points;
      } else {
        st.correction_failed = true;
      }
    }
  }

  void check_case(const FamilyCase& c, long long m_lo, long long m_hi) {
    for (long long m : probe_points(c, m_lo, m_hi)) {
      const long long n = c.n_of(m);
      const Semigroup s = Semigroup::power_family(k_, static_cast<std::uint64_t>(n));
      CaseCheck ch;
      ch.name = c.name();
      ch.m = m;
      ch.n = n;
      RelationMatrix fm;
      try {
        fm = evaluate_case(c, m);
      } catch (const TableError& e) {
        ch.detail = e.what();
        report_.failures.push_back(ch.detail);
        report_.checks.push_back(std::move(ch));
        continue;
      }
      const MatrixReport mr = validate_matrix(fm, s);
      ch.matrix_identities = mr.all_ok();
      try {
        ch.matches_computed = minimal_relation_matrix(s, opt_.relation) == fm;
      } catch (const Error& e) {
        ch.detail = std::string("minimal_relation_matrix: ") + e.what();
      }
      if (!ch.matrix_identities || !ch.matches_computed) {
        report_.failures.push_back(c.name() + " at m=" + std::to_string(m) + " (n=" + std::to_string(n) +
                                   "): tabulated matrix " + fm.to_string() +
                                   (ch.matrix_identities ? "" : " fails its identities") +
                                   (ch.matches_computed ? "" : " differs from the computed one"));
      }
      const SyzygyData z = syzygy_data(fm, s);
      std::string judge = "matrix";
      if (auto o = oracle(n)) {
        ch.oracle_agrees = o->F == z.F && o->G == z.G;
        judge = "oracle";
        if (!*ch.oracle_agrees) {
          report_.failures.push_back(c.name() + " at n=" + std::to_string(n) + ": matrix gives F=" + z.F.get_str() +
                                     ", G=" + z.G.get_str() + " but the oracle gives F=" + o->F.get_str() +
                                     ", G=" + o->G.get_str());
        }
      }
      if (const auto* p = c.formula(c.F, m)) compare_piece(c.name(), "F", *p, m, n, z.F, judge);
      if (const auto* p = c.formula(c.G, m)) compare_piece(c.name(), "G", *p, m, n, z.G, judge);
      report_.checks.push_back(std::move(ch));
    }
    bool any_row = false;
    for (int i = 0; i < 3; ++i) any_row = any_row || c.printed.row_corrected(i);
    if (any_row) {
      int matched = 0, probed = 0;
      for (const auto& ch : report_.checks) {
        if (ch.name != c.name()) continue;
        ++probed;
        matched += ch.matches_computed;
      }
      for (int i = 0; i < 3; ++i) {
        if (!c.printed.row_corrected(i)) continue;
        const auto& pr = c.printed.text[static_cast<std::size_t>(i)];
        const auto& fx = c.printed.corrected_text[static_cast<std::size_t>(i)];
        TypoRecord r;
        r.where = c.name();
        r.quantity = "row" + std::to_string(i + 1);
        r.guard = "all";
        r.printed = pr[0] + " ; " + pr[1] + " ; " + pr[2];
        r.status = FormulaStatus::corrected;
        r.corrected = fx[0] + " ; " + fx[1] + " ; " + fx[2];
        r.n = c.n_of(c.m_min);
        r.adjudicated_by = "matrix";
        // Entries are quadratic in m, so four agreeing points pin them down.
        r.correction_holds = probed >= 4 && matched == probed;
        if (!*r.correction_holds) {
          report_.failures.push_back("row correction for " + c.name() + " checked at " + std::to_string(probed) +
                                     " points, " + std::to_string(matched) + " matched");
        }
        report_.typos.push_back(std::move(r));
      }
    }
    // Printed values for m below the case domain name a specific n; only
    // the oracle can judge them.
    for (const auto* pieces : {&c.F, &c.G}) {
      const char* q = pieces == &c.F ? "F" : "G";
      for (const auto& p : *pieces) {
        if (p.guard.kind != Guard::Kind::one_of) continue;
        for (long long m : p.guard.values) {
          if (c.in_domain(m)) continue;
          const long long n = c.n_of(m);
          if (n < 3) continue;
          auto o = oracle(n);
          if (!o) continue;
          compare_piece(c.name(), q, p, m, n, q[0] == 'F' ? o->F : o->G, "oracle");
        }
      }
    }
  }

  void check_exceptional(const ExceptionalEntry& e) {
    const Semigroup s = Semigroup::power_family(k_, static_cast<std::uint64_t>(e.n));
    std::optional<Truth> truth = oracle(e.n);
    CaseCheck ch;
    ch.name = e.name();
    ch.n = e.n;
    if (e.matrix && !e.symmetric) {
      const SyzygyData z = syzygy_data(*e.matrix, s);
      ch.matrix_identities = validate_matrix(*e.matrix, s).all_ok();
      try {
        ch.matches_computed = minimal_relation_matrix(s, opt_.relation) == *e.matrix;
      } catch (const Error& err) {
        ch.detail = err.what();
      }
      if (!ch.matrix_identities || !ch.matches_computed) {
        report_.failures.push_back(e.name() + ": printed matrix " + e.matrix->to_string() +
                                   " does not match the computed one");
      }
      if (truth) {
        ch.oracle_agrees = truth->F == z.F && truth->G == z.G;
        if (!*ch.oracle_agrees) report_.failures.push_back(e.name() + ": matrix and oracle disagree");
      } else {
        truth = Truth{z.F, z.G, false};
      }
    } else {
      ch.matrix_identities = true;
      ch.matches_computed = true;
      if (truth) ch.oracle_agrees = 2 * truth->G == truth->F + 1;
      if (truth && !*ch.oracle_agrees) report_.failures.push_back(e.name() + " is tabulated symmetric but is not");
    }
    if (e.printed) {
      for (int i = 0; i < 3; ++i) {
        if (!e.printed->row_corrected(i)) continue;
        const auto& pr = e.printed->text[static_cast<std::size_t>(i)];
        const auto& fx = e.printed->corrected_text[static_cast<std::size_t>(i)];
        TypoRecord r;
        r.where = e.name();
        r.quantity = "row" + std::to_string(i + 1);
        r.guard = "exceptional";
        r.printed = pr[0] + " ; " + pr[1] + " ; " + pr[2];
        r.status = FormulaStatus::corrected;
        r.corrected = fx[0] + " ; " + fx[1] + " ; " + fx[2];
        r.n = e.n;
        r.adjudicated_by = "matrix";
        r.correction_holds = ch.matches_computed;
        report_.typos.push_back(std::move(r));
      }
    }
    report_.checks.push_back(ch);
    if (!truth) return;
    auto compare = [&](const std::optional<PrintedValue>& v, const BigInt& t, const char* q) {
      if (!v || v->value == t) return;
      TypoRecord r;
      r.where = e.name();
      r.quantity = q;
      r.guard = "exceptional";
      r.printed = v->value.get_str();
      r.status = v->status;
      if (v->corrected) {
        r.corrected = v->corrected->get_str();
        r.correction_holds = *v->corrected == t;
      }
      r.n = e.n;
      r.printed_value = v->value;
      r.true_value = t;
      r.adjudicated_by = truth->from_oracle ? "oracle" : "matrix";
      report_.typos.push_back(std::move(r));
    };
    compare(e.F, truth->F, "F");
    compare(e.G, truth->G, "G");
  }

  void check_genus(const GenusFamily& g, long long m_lo, long long m_hi) {
    const int want = std::max(g.G.degree(), 0) + 2;
    int seen = 0;
    bool recorded = false;
    for (long long m = std::max<long long>(m_lo, 0); seen < want || m <= m_hi; ++m) {
      const long long n = g.modulus * m + g.offset;
      if (n < 3) continue;
      const CaseLookup l = lookup_case(k_, n, t_);
      if (!l.family()) continue;
      const Semigroup s = Semigroup::power_family(k_, static_cast<std::uint64_t>(n));
      const BigInt truth = syzygy_data(evaluate_case(*l.family(), l.m), s).G;
      ++seen;
      const auto printed = eval_piece(g.G, m);
      if ((!printed || *printed != truth) && !recorded) {
        TypoRecord r;
        r.where = "genus " + g.label;
        r.quantity = "G";
        r.guard = "all";
        r.printed = g.text;
        r.n = n;
        r.printed_value = printed;
        r.true_value = truth;
        r.adjudicated_by = "matrix";
        report_.typos.push_back(std::move(r));
        recorded = true;
      }
    }
  }

  void finish_corrections() {
    for (auto& [piece, st] : pieces_) {
      if (!piece->corrected) continue;
      const int need = std::max(piece->corrected->degree(), 0) + 2;
      const bool holds = !st.correction_failed && st.correct_points >= need;
      if (st.has_record) report_.typos[st.record_index].correction_holds = holds;
      if (!holds) {
        report_.failures.push_back("correction " + piece->corrected_text + " of \"" + piece->text + "\" " +
                                   (st.correction_failed ? "disagrees with the matrix"
                                                         : "was checked at too few points (" +
                                                               std::to_string(st.correct_points) + " < " +
                                                               std::to_string(need) + ")"));
      }
    }
  }

  unsigned k_;
  const ValidateOptions& opt_;
  const FamilyTables& t_;
  TableReport report_;
  std::map<long long, Truth> oracle_cache_;
  std::map<const FormulaPiece*, PieceState> pieces_;
};

}  // namespace

TableReport validate_tables(unsigned k, long long m_lo, long long m_hi, const ValidateOptions& opt,
                            const FamilyTables& t) {
  if (k < 2 || k > 4) throw DomainError("family tables cover k = 2, 3, 4 only; got k=" + std::to_string(k));
  return Validator(k, opt, t).run(m_lo, m_hi);
}

}  // namespace trisg
