#include "trisg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "trisg/core.hpp"
#include "trisg/error.hpp"
#include "trisg/explorer.hpp"
#include "trisg/families.hpp"
#include "trisg/relations.hpp"
#include "trisg/symmetry.hpp"

namespace trisg::cli {

namespace {

// nlohmann::json keeps object keys in a std::map, so dumps are key-sorted.
using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  long long lo = 0, hi = 0;
};

long long parse_int(const std::string& text, const std::string& what) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError(what + ": not an integer: \"" + text + "\"");
  return v;
}

/// "A..B" or a single "A".
Range parse_range(const std::string& text, const std::string& what) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long long v = parse_int(text, what);
    return {v, v};
  }
  Range r{parse_int(text.substr(0, dots), what), parse_int(text.substr(dots + 2), what)};
  if (r.lo > r.hi) throw UsageError(what + ": empty range \"" + text + "\"");
  return r;
}

std::array<BigInt, 3> parse_gens(const std::string& text) {
  std::array<BigInt, 3> out;
  std::stringstream in(text);
  std::string part;
  int count = 0;
  while (std::getline(in, part, ',')) {
    if (count == 3 || part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw UsageError("--gens expects three positive integers D1,D2,D3; got \"" + text + "\"");
    }
    out[static_cast<std::size_t>(count++)] = BigInt(part);
  }
  if (count != 3) throw UsageError("--gens expects three positive integers D1,D2,D3; got \"" + text + "\"");
  return out;
}

json str(const BigInt& v) { return v.get_str(); }

json matrix_json(const RelationMatrix& a) {
  json mag = json::array(), sig = json::array();
  for (int i = 0; i < 3; ++i) {
    json r1 = json::array(), r2 = json::array();
    for (int j = 0; j < 3; ++j) {
      r1.push_back(str(a.at(i, j)));
      r2.push_back(str(a.signed_at(i, j)));
    }
    mag.push_back(r1);
    sig.push_back(r2);
  }
  return {{"magnitudes", mag}, {"signed", sig}};
}

json gens_json(const Semigroup& s) {
  return json::array({str(s.gen(0)), str(s.gen(1)), str(s.gen(2))});
}

json witness_json(const SymmetryWitness& w, const Semigroup& s) {
  json out{{"symmetric", w.symmetric()}, {"kind", std::string(kind_name(w.kind))}};
  if (w.symmetric()) {
    out["witness"] = w.describe(s);
    out["F"] = str(*w.F);
    out["G"] = str(BigInt((*w.F + 1) / 2));
  }
  return out;
}

json syzygy_json(const SyzygyData& z) {
  return {{"D0", str(z.D0)}, {"D1", str(z.D1)}, {"D2", str(z.D2)}, {"D3", str(z.D3)},
          {"b11", str(z.b11)}, {"b22", str(z.b22)}, {"F1", str(z.F1)}, {"F2", str(z.F2)},
          {"F", str(z.F)},     {"G", str(z.G)}};
}

json poly_matrix_json(const std::array<std::array<PolyQ, 3>, 3>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& p : row) r.push_back(p.to_string());
    out.push_back(r);
  }
  return out;
}

json solution_json(const DiophantineSolution& s) {
  return {{"x1", s.x1}, {"x2", s.x2}, {"z", str(s.z)}, {"n", str(s.n)}};
}

std::string entry_name(int i, int j) { return "E" + std::to_string(i + 1) + std::to_string(j + 1); }

// Text rendering ------------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

bool all_scalars(const json& a) { return std::all_of(a.begin(), a.end(), [](const json& v) { return is_scalar(v); }); }

bool is_flat_record_list(const json& a) {
  return !a.empty() && std::all_of(a.begin(), a.end(), [](const json& v) {
           return v.is_object() && std::all_of(v.begin(), v.end(), [](const json& f) {
                    return is_scalar(f) || (f.is_array() && all_scalars(f));
                  });
         });
}

std::string cell_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string out;
  for (const auto& e : v) out += (out.empty() ? "" : " ") + scalar_text(e);
  return out.empty() ? "-" : out;
}

void print_table(const json& rows, std::ostream& out, const std::string& pad) {
  std::vector<std::string> cols;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  std::vector<std::size_t> width;
  for (const auto& c : cols) {
    std::size_t w = c.size();
    for (const auto& r : rows) w = std::max(w, r.contains(c) ? cell_text(r[c]).size() : 1);
    width.push_back(w);
  }
  auto line = [&](const std::function<std::string(std::size_t)>& cell) {
    std::string text = pad;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const std::string c = cell(i);
      text += c + std::string(width[i] - c.size() + 2, ' ');
    }
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << "\n";
  };
  line([&](std::size_t i) { return cols[i]; });
  for (const auto& r : rows) line([&](std::size_t i) { return r.contains(cols[i]) ? cell_text(r[cols[i]]) : "-"; });
}

void print_text(const json& obj, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::size_t kw = 0;
  for (const auto& [k, v] : obj.items()) {
    if (is_scalar(v) || (v.is_array() && all_scalars(v))) kw = std::max(kw, k.size());
  }
  for (const auto& [k, v] : obj.items()) {
    if (is_scalar(v) || (v.is_array() && all_scalars(v))) {
      out << pad << std::left << std::setw(static_cast<int>(kw)) << k << "  " << cell_text(v) << "\n";
    } else if (v.is_object()) {
      out << pad << k << ":\n";
      print_text(v, out, indent + 2);
    } else if (is_flat_record_list(v)) {
      out << pad << k << ":\n";
      print_table(v, out, pad + "  ");
    } else if (std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_array() && all_scalars(e); })) {
      out << pad << k << ":\n";
      json rows = json::array();
      for (const auto& e : v) {
        json r;
        for (std::size_t i = 0; i < e.size(); ++i) r["c" + std::to_string(i + 1)] = e[i];
        rows.push_back(r);
      }
      std::ostringstream t;
      print_table(rows, t, pad + "  ");
      const std::string s = t.str();
      out << s.substr(s.find('\n') + 1);  // drop the synthetic header
    } else {
      out << pad << k << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << pad << "  [" << i << "]\n";
        if (v[i].is_object()) {
          print_text(v[i], out, indent + 4);
        } else {
          out << pad << "    " << cell_text(v[i]) << "\n";
        }
      }
    }
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void print_csv(const json& rows, std::ostream& out) {
  std::vector<std::string> cols;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(cols[i]);
  out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const std::string cell = !r.contains(cols[i]) || r[cols[i]].is_null() ? "" : cell_text(r[cols[i]]);
      out << (i ? "," : "") << csv_cell(cell);
    }
    out << "\n";
  }
}

// Commands ------------------------------------------------------------------

struct Globals {
  bool json = false;
  bool csv = false;
  std::uint64_t max_apery = OracleConfig{}.max_apery;
  unsigned threads = 1;
  int fit_points = 14;
};

struct Result {
  json inputs = json::object();
  json results = json::object();
  json warnings = json::array();
  std::string csv_rows;  // key of the results array exported by --csv
};

Result analyze(const std::string& gens_text) {
  Result r;
  const auto g = parse_gens(gens_text);
  r.inputs["gens"] = json::array({str(g[0]), str(g[1]), str(g[2])});
  const Semigroup s(g[0], g[1], g[2]);
  r.results["generators"] = gens_json(s);
  const auto w = structural_symmetry(s);
  if (w.symmetric()) {
    throw DomainError(s.to_string() + " is symmetric (" + w.describe(s) + ", F = " + w.F->get_str() +
                      "); it has no minimal relation matrix");
  }
  r.results["symmetry"] = witness_json(w, s);
  const auto a = minimal_relation_matrix(s);
  const auto z = syzygy_data(a, s);
  r.results["matrix"] = matrix_json(a);
  r.results["syzygy"] = syzygy_json(z);
  r.results["F"] = str(z.F);
  r.results["G"] = str(z.G);
  json num = json::array();
  for (const auto& t : hilbert_numerator(a, s)) num.push_back({{"sign", t.sign}, {"exponent", str(t.exponent)}});
  r.results["hilbert_numerator"] = num;
  const auto rep = validate_matrix(a, s);
  r.results["identities_ok"] = rep.all_ok();
  for (const auto& f : rep.failures()) r.warnings.push_back("matrix identity failed: " + f);
  return r;
}

Result oracle(const std::string& gens_text, bool list_gaps, const Globals& gl) {
  Result r;
  const auto g = parse_gens(gens_text);
  r.inputs["gens"] = json::array({str(g[0]), str(g[1]), str(g[2])});
  r.inputs["max_apery"] = std::to_string(gl.max_apery);
  const Semigroup s(g[0], g[1], g[2]);
  OracleConfig cfg;
  cfg.max_apery = gl.max_apery;
  const auto table = apery_set(s, s.gen(0), cfg);
  const BigInt F = table.frobenius(), G = table.genus();
  r.results["generators"] = gens_json(s);
  r.results["F"] = str(F);
  r.results["G"] = str(G);
  r.results["gap_count"] = str(G);
  r.results["symmetric"] = 2 * G == F + 1;
  if (list_gaps) {
    json list = json::array();
    for (auto x : gaps(s, cfg).gaps) list.push_back(std::to_string(x));
    r.results["gaps"] = list;
  }
  return r;
}

Result family(unsigned k, long long n) {
  Result r;
  r.inputs = {{"k", k}, {"n", n}};
  const auto l = lookup_case(k, n);
  const Semigroup s = Semigroup::power_family(k, static_cast<std::uint64_t>(n));
  r.results["generators"] = gens_json(s);
  if (l.symmetric()) {
    const auto w = structural_symmetry(s);
    r.results["case"] = {{"kind", "symmetric"}, {"note", l.symmetric()->note}};
    r.results["symmetry"] = witness_json(w, s);
    if (w.symmetric()) {
      r.results["F"] = str(*w.F);
      r.results["G"] = str(BigInt((*w.F + 1) / 2));
      r.results["source"] = "symmetry witness";
    }
    return r;
  }
  if (const auto* c = l.family()) {
    r.results["case"] = {{"kind", "family"},  {"name", c->name()},     {"label", c->label},
                         {"m", l.m},          {"modulus", c->modulus}, {"offset", c->offset},
                         {"matrix", poly_matrix_json(c->matrix)}};
  } else {
    const auto* e = l.exceptional();
    r.results["case"] = {{"kind", "exceptional"}, {"name", e->name()}, {"symmetric", e->symmetric}};
    if (!e->note.empty()) r.results["case"]["note"] = e->note;
  }
  try {
    r.results["matrix"] = matrix_json(family_matrix(k, n));
  } catch (const DomainError&) {
    r.results["matrix"] = nullptr;
  }
  const auto inv = family_invariants(k, n);
  r.results["F"] = str(inv.F);
  r.results["G"] = str(inv.G);
  r.results["source"] = std::string(source_name(inv.source));
  r.results["typo"] = inv.typo;
  if (inv.printed_F) r.results["printed_F"] = str(*inv.printed_F);
  if (inv.printed_G) r.results["printed_G"] = str(*inv.printed_G);
  r.results["notes"] = inv.notes;
  if (inv.typo) {
    for (const auto& note : inv.notes) r.warnings.push_back("typo: " + note);
  }
  return r;
}

Result validate(unsigned k, const Range& m, std::uint64_t oracle_max_d1, const Globals& gl) {
  Result r;
  r.inputs = {{"k", k}, {"m_range", json::array({m.lo, m.hi})}, {"oracle_max_d1", std::to_string(oracle_max_d1)}};
  ValidateOptions opt;
  opt.oracle_max_d1 = oracle_max_d1;
  opt.oracle.max_apery = gl.max_apery;
  const auto rep = validate_tables(k, m.lo, m.hi, opt);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json o{{"case", c.name},
           {"m", c.m},
           {"n", c.n},
           {"identities", c.matrix_identities},
           {"matches_computed", c.matches_computed},
           {"oracle", c.oracle_agrees ? json(*c.oracle_agrees ? "agrees" : "disagrees") : json("skipped")}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    checks.push_back(o);
  }
  json typos = json::array();
  for (const auto& t : rep.typos) {
    json o{{"where", t.where},
           {"quantity", t.quantity},
           {"n", t.n},
           {"printed", t.printed},
           {"status", std::string(status_name(t.status))},
           {"true_value", str(t.true_value)},
           {"adjudicated_by", t.adjudicated_by}};
    if (!t.guard.empty()) o["guard"] = t.guard;
    if (t.printed_value) o["printed_value"] = str(*t.printed_value);
    if (!t.corrected.empty()) o["corrected"] = t.corrected;
    if (t.correction_holds) o["correction_holds"] = *t.correction_holds;
    typos.push_back(o);
  }
  r.results["ok"] = rep.ok();
  r.results["failures"] = rep.failures;
  r.results["checks"] = checks;
  r.results["typos"] = typos;
  for (const auto* t : rep.unflagged_typos()) {
    r.warnings.push_back("unflagged typo: " + t->where + " " + t->quantity + " at n=" + std::to_string(t->n));
  }
  r.csv_rows = "checks";
  return r;
}

Result prove(int which, long long scan_max, std::uint64_t oracle_max_d1) {
  Result r;
  r.inputs = {{"prop", which}, {"scan_max", scan_max}, {"oracle_max_d1", std::to_string(oracle_max_d1)}};
  ProveOptions opt;
  opt.scan_max = scan_max;
  opt.oracle_max_d1 = oracle_max_d1;
  const auto rep = verify_proposition(which, opt);
  json instances = json::array();
  for (const auto& i : rep.instances) {
    json certs = json::array(), finite = json::array(), sols = json::array();
    for (const auto& c : i.certificates) certs.push_back({{"region", c.region}, {"passed", c.passed}, {"boxes", c.detail}});
    for (const auto& f : i.finite) {
      finite.push_back({{"region", f.region}, {"equations", f.equations}, {"solutions", f.solutions.size()}});
    }
    for (const auto& s : i.solutions) sols.push_back(solution_json(s));
    instances.push_back({{"name", i.name},
                         {"partition_ok", i.partition_ok},
                         {"partition_issues", i.partition_issues},
                         {"certificates_ok", i.certificates_ok()},
                         {"certificates", certs},
                         {"finite_scans", finite},
                         {"solutions", sols}});
  }
  r.results = {{"k", rep.k},
               {"claimed", rep.claimed},
               {"direct", rep.direct},
               {"derived", rep.derived},
               {"scan_max", rep.scan_max},
               {"scan_symmetric", rep.scan_symmetric},
               {"oracle_checked", rep.oracle_checked},
               {"oracle_disagreements", rep.oracle_disagreements},
               {"instances", instances},
               {"verdict", rep.verdict}};
  return r;
}

Result sym_scan(const Range& p, const Range& k, const Globals& gl) {
  Result r;
  r.inputs = {{"p", json::array({p.lo, p.hi})}, {"k", json::array({k.lo, k.hi})}, {"threads", gl.threads}};
  if (p.lo < 1 || k.lo < 1) throw DomainError("sym-scan needs p >= 1 and k >= 1");
  // Split the p range into contiguous chunks, one per worker; the merged
  // hits are re-sorted so the output does not depend on the thread count.
  const long long span = p.hi - p.lo + 1;
  const long long workers = std::min<long long>(std::max(1u, gl.threads), span);
  std::vector<std::vector<PowerHit>> parts(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (long long w = 0; w < workers; ++w) {
    const long long lo = p.lo + span * w / workers, hi = p.lo + span * (w + 1) / workers - 1;
    auto job = [&, w, lo, hi] {
      try {
        parts[static_cast<std::size_t>(w)] =
            symmetric_power_scan(lo, hi, static_cast<unsigned>(k.lo), static_cast<unsigned>(k.hi));
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    };
    if (workers == 1) {
      job();
    } else {
      pool.emplace_back(job);
    }
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<PowerHit> hits;
  for (auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());
  std::sort(hits.begin(), hits.end(), [](const PowerHit& a, const PowerHit& b) {
    return std::tie(a.k, a.p) < std::tie(b.k, b.p);
  });
  json list = json::array();
  for (const auto& h : hits) {
    const auto s = Semigroup::power_family(h.k, static_cast<std::uint64_t>(2 * h.p + 1));
    list.push_back({{"p", h.p},
                    {"n", 2 * h.p + 1},
                    {"k", h.k},
                    {"kind", std::string(kind_name(h.witness.kind))},
                    {"witness", h.witness.describe(s)},
                    {"F", str(*h.witness.F)}});
  }
  r.results = {{"count", hits.size()}, {"hits", list}};
  r.csv_rows = "hits";
  return r;
}

Result duality(unsigned k, long long T, std::optional<long long> j, const Globals& gl) {
  Result r;
  r.inputs = {{"k", k}, {"T", T}, {"m_range", json::array({1, gl.fit_points})}};
  if (j) r.inputs["j"] = *j;
  if (T < 2) throw DomainError("duality needs T >= 2");
  std::vector<long long> js;
  if (j) {
    const long long c = canonical_residue(T, *j);
    if (c == 0 || 2 * c == T) throw DomainError("j = " + std::to_string(*j) + " is its own dual residue modulo " + std::to_string(T));
    js.push_back(c < 0 ? -c : c);
  } else {
    for (long long x = 1; 2 * x < T; ++x) js.push_back(x);
  }
  MatrixCache cache(k);
  json reports = json::array();
  bool all = true;
  for (long long x : js) {
    const auto d = duality_check(cache, T, x, 1, gl.fit_points);
    std::vector<std::string> bad;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (!d.entry_map_ok[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) bad.push_back(entry_name(a, b));
      }
    }
    all = all && d.ok();
    json o{{"j", x},
           {"entries_ok", d.entries_ok()},
           {"parity_ok", d.parity_ok},
           {"ok", d.ok()},
           {"entries_failing", bad},
           {"G_minus", d.genus_polys[0].to_string()},
           {"G_plus", d.genus_polys[1].to_string()}};
    if (!d.minus.complete() || !d.plus.complete()) {
      r.warnings.push_back("j=" + std::to_string(x) + ": some entries have no over-determined fit on m=1.." +
                           std::to_string(gl.fit_points));
    }
    reports.push_back(o);
  }
  r.results = {{"all_ok", all}, {"pairs", reports}};
  r.csv_rows = "pairs";
  return r;
}

Result period(unsigned k, long long t_max, std::optional<long long> n_max) {
  Result r;
  const long long n = n_max ? *n_max : period_scan_min_n(k, t_max);
  r.inputs = {{"k", k}, {"t_max", t_max}, {"n_max", n}};
  const auto rep = period_scan(k, t_max, n);
  json ev = json::array();
  for (const auto& e : rep.evidence) {
    ev.push_back({{"j", e.j},
                  {"ok", e.ok},
                  {"points", e.points},
                  {"exceptional", e.exceptional},
                  {"extrapolation_hits", e.extrapolation_hits},
                  {"failure", e.failure}});
  }
  r.results = {{"T", rep.T ? json(*rep.T) : json(nullptr)},
               {"evidence", ev},
               {"rejected", rep.rejected},
               {"exceptional_n", rep.exceptional_n}};
  if (!rep.T) r.warnings.push_back("no period up to t_max = " + std::to_string(t_max));
  r.csv_rows = "evidence";
  return r;
}

Result degrees(unsigned k, long long T, long long n_max) {
  Result r;
  r.inputs = {{"k", k}, {"T", T}, {"n_max", n_max}};
  const auto rep = conjecture_degree_report(k, T, n_max);
  json rows = json::array();
  for (const auto& d : rep.residues) {
    json row{{"j", d.j}, {"F_degree", d.F_degree}, {"G_degree", d.G_degree},
             {"entries_ok", d.entries_ok}, {"growth_ok", d.growth_ok}};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) row[entry_name(a, b)] = d.degree[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    rows.push_back(row);
  }
  json bounds = json::array(), seen = json::array();
  for (int a = 0; a < 3; ++a) {
    json b1 = json::array(), b2 = json::array();
    for (int b = 0; b < 3; ++b) {
      b1.push_back(entry_degree_bound(k, a, b));
      b2.push_back(rep.max_degree[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
    bounds.push_back(b1);
    seen.push_back(b2);
  }
  r.results = {{"expected_growth", rep.expected_growth},
               {"entries_ok", rep.entries_ok()},
               {"growth_ok", rep.growth_ok()},
               {"degree_bounds", bounds},
               {"max_degree", seen},
               {"residues", rows}};
  r.csv_rows = "residues";
  return r;
}

void emit(const std::string& command, const Result& r, const Globals& gl, std::ostream& out) {
  if (gl.json) {
    json env{{"command", command}, {"inputs", r.inputs}, {"results", r.results}, {"warnings", r.warnings}};
    out << env.dump(2) << "\n";
    return;
  }
  if (gl.csv) {
    if (r.csv_rows.empty()) throw UsageError("--csv is available for validate, sym-scan, duality, period and degrees");
    print_csv(r.results[r.csv_rows], out);
    return;
  }
  print_text(r.results, out, 0);
  for (const auto& w : r.warnings) out << "warning: " << w.get<std::string>() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of three-generated numerical semigroups <(n-1)^k, n^k, (n+1)^k>", "trisg"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals gl;
  app.add_flag("--json", gl.json, "Print a JSON envelope with sorted keys");
  app.add_flag("--csv", gl.csv, "Print CSV, one record per case or hit (batch commands)");
  app.add_option("--max-apery", gl.max_apery, "Largest Apery table the oracle may build")->capture_default_str();
  app.add_option("--threads", gl.threads, "Worker threads for sym-scan")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_option("--fit-points", gl.fit_points, "Values m = 1..N fitted per residue class (duality)")
      ->capture_default_str()
      ->check(CLI::Range(3, 10000));

  std::string gens, m_range = "1..3", p_range, k_range;
  unsigned k = 0;
  long long n = 0, scan_max = 2000, t = 40, t_max = 45, n_max = 0;
  std::optional<long long> j;
  int prop = 0;
  bool list_gaps = false;
  std::uint64_t oracle_d1 = ValidateOptions{}.oracle_max_d1, prove_d1 = ProveOptions{}.oracle_max_d1;

  auto* analyze_cmd = app.add_subcommand("analyze", "Relation matrix, syzygy data, Hilbert numerator, symmetry");
  analyze_cmd->add_option("--gens", gens, "D1,D2,D3")->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force F, G and gaps");
  oracle_cmd->add_option("--gens", gens, "D1,D2,D3")->required();
  oracle_cmd->add_flag("--gaps", list_gaps, "List every gap");
  auto* family_cmd = app.add_subcommand("family", "Tabulated case, matrix, F and G for R_n^k");
  family_cmd->add_option("--k", k, "Power, 2..4")->required();
  family_cmd->add_option("--n", n, "n >= 3")->required();
  auto* validate_cmd = app.add_subcommand("validate", "Check the family tables against computed matrices");
  validate_cmd->add_option("--k", k, "Power, 2..4")->required();
  validate_cmd->add_option("--m-range", m_range, "A..B")->capture_default_str();
  validate_cmd->add_option("--oracle-max-d1", oracle_d1, "Oracle cross-check when d1 is at most this")->capture_default_str();
  auto* prove_cmd = app.add_subcommand("prove", "Verify a symmetry proposition (1: k=2, 2: k=3, 3: k=4)");
  prove_cmd->add_option("--prop", prop, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  prove_cmd->add_option("--scan-max", scan_max, "Structural scan bound on n")->capture_default_str();
  prove_cmd->add_option("--oracle-max-d1", prove_d1, "Oracle confirmation when d1 is at most this")->capture_default_str();
  auto* sym_cmd = app.add_subcommand("sym-scan", "Symmetric R_{2p+1}^k");
  sym_cmd->add_option("--p", p_range, "A..B")->required();
  sym_cmd->add_option("--k", k_range, "A..B")->required();
  auto* duality_cmd = app.add_subcommand("duality", "Compare the residue classes j and -j modulo T");
  duality_cmd->add_option("--k", k, "Power")->required();
  duality_cmd->add_option("--j", j, "A single residue; all 0 < j < T/2 by default");
  duality_cmd->add_option("--t", t, "Modulus")->capture_default_str();
  auto* period_cmd = app.add_subcommand("period", "Least period of the relation matrices in n");
  period_cmd->add_option("--k", k, "Power")->required();
  period_cmd->add_option("--t-max", t_max, "Largest period tried")->capture_default_str();
  period_cmd->add_option("--n-max", n_max, "Largest n sampled; the minimum the scan needs by default");
  auto* degrees_cmd = app.add_subcommand("degrees", "Degrees of the fitted entries, F and G per residue");
  degrees_cmd->add_option("--k", k, "Power")->required();
  degrees_cmd->add_option("--t", t, "Period")->required();
  degrees_cmd->add_option("--n-max", n_max, "Largest n sampled")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return exit_usage;
  }
  if (gl.json && gl.csv) {
    err << "--json and --csv are exclusive\n";
    return exit_usage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Result r;
    if (command == "analyze") {
      r = analyze(gens);
    } else if (command == "oracle") {
      r = oracle(gens, list_gaps, gl);
    } else if (command == "family") {
      r = family(k, n);
    } else if (command == "validate") {
      r = validate(k, parse_range(m_range, "--m-range"), oracle_d1, gl);
    } else if (command == "prove") {
      r = prove(prop, scan_max, prove_d1);
    } else if (command == "sym-scan") {
      r = sym_scan(parse_range(p_range, "--p"), parse_range(k_range, "--k"), gl);
    } else if (command == "duality") {
      r = duality(k, t, j, gl);
    } else if (command == "period") {
      r = period(k, t_max, n_max > 0 ? std::optional<long long>(n_max) : std::nullopt);
    } else {
      r = degrees(k, t, n_max);
    }
    emit(command, r, gl, out);
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.get_subcommand(command)->help();
    return exit_usage;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return exit_resource;
  } catch (const InsufficientDataError& e) {
    err << "insufficient data: " << e.what() << " (needs " << e.required() << ")\n";
    return exit_domain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  }
}

}  // namespace trisg::cli
