// Loader, checker and writer for the family table text format
// (docs/table-format.md).

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "trisg/error.hpp"
#include "trisg/families.hpp"

namespace trisg {
namespace detail {
extern const char* const kFamilyTablesText;
}

namespace {

using Rows = TextRows;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long long parse_ll(const std::string& s, const std::string& where) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw TableError(where + ": expected an integer, got \"" + s + "\"");
  return v;
}

FormulaStatus parse_status(const std::string& s, const std::string& where) {
  if (s == "verified") return FormulaStatus::verified;
  if (s == "suspect_typo") return FormulaStatus::suspect_typo;
  if (s == "corrected") return FormulaStatus::corrected;
  throw TableError(where + ": unknown status \"" + s + "\"");
}

struct Line {
  int number;
  std::string key, value;
};

struct Block {
  std::string kind;
  int line;
  std::vector<Line> fields;
};

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw TableError("line " + std::to_string(number) + ": bad block header");
      blocks.push_back({line.substr(1, line.size() - 2), number, {}});
      continue;
    }
    if (blocks.empty()) throw TableError("line " + std::to_string(number) + ": field outside a block");
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw TableError("line " + std::to_string(number) + ": expected key: value");
    blocks.back().fields.push_back({number, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
  }
  return blocks;
}

std::string at_line(const Block& b, int line) {
  return "[" + b.kind + "] block at line " + std::to_string(b.line) + ", line " + std::to_string(line);
}

PolyQ parse_poly(const std::string& text, const std::string& where) {
  try {
    return PolyQ::parse(text);
  } catch (const ParseError& e) {
    throw TableError(where + ": " + e.what());
  }
}

std::array<std::string, 3> split_row(const std::string& v, const std::string& where) {
  std::array<std::string, 3> out;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t semi = v.find(';', start);
    if ((i < 2) != (semi != std::string::npos)) throw TableError(where + ": a row needs three ';'-separated entries");
    out[static_cast<std::size_t>(i)] = trim(v.substr(start, i < 2 ? semi - start : std::string::npos));
    start = semi + 1;
  }
  return out;
}

/// Magnitudes from printed rows: off-diagonal entries carry the matrix sign.
std::array<std::array<PolyQ, 3>, 3> magnitudes(const Rows& rows, const std::string& where) {
  std::array<std::array<PolyQ, 3>, 3> a;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      PolyQ p = parse_poly(rows[i][j], where + " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      a[i][j] = i == j ? p : -p;
    }
  }
  return a;
}

void attach_annotation(std::vector<FormulaPiece>& pieces, const std::string& attr, const std::string& value,
                       const std::string& where) {
  if (pieces.empty()) throw TableError(where + ": annotation before any formula");
  FormulaPiece& p = pieces.back();
  if (attr == "status") {
    p.status = parse_status(value, where);
  } else if (attr == "corrected") {
    p.corrected_text = value;
    p.corrected = parse_poly(value, where);
  } else if (attr == "note") {
    p.note = value;
  } else {
    throw TableError(where + ": unknown annotation \"" + attr + "\"");
  }
}

void attach_value_annotation(std::optional<PrintedValue>& pv, const std::string& attr, const std::string& value,
                             const std::string& where) {
  if (!pv) throw TableError(where + ": annotation before the value");
  if (attr == "status") {
    pv->status = parse_status(value, where);
  } else if (attr == "corrected") {
    pv->corrected = big_signed(parse_ll(value, where));
  } else if (attr == "note") {
    pv->note = value;
  } else {
    throw TableError(where + ": unknown annotation \"" + attr + "\"");
  }
}

void check_statuses(const std::vector<FormulaPiece>& pieces, const std::string& where) {
  for (const auto& p : pieces) {
    if (p.status == FormulaStatus::corrected && !p.corrected) {
      throw TableError(where + ": status corrected without a corrected formula");
    }
    if (p.status != FormulaStatus::corrected && p.corrected) {
      throw TableError(where + ": corrected formula given but status is " + std::string(status_name(p.status)));
    }
    if (!p.effective()) throw TableError(where + ": formula \"" + p.text + "\" does not parse and has no correction");
  }
}

// Handles row1..row3 and their .corrected / .note annotations.
bool read_row_key(const Line& f, const std::string& where, PrintedMatrix& pm, std::array<bool, 3>& have_row) {
  if (f.key.size() < 4 || f.key.substr(0, 3) != "row" || f.key[3] < '1' || f.key[3] > '3') return false;
  const std::size_t i = static_cast<std::size_t>(f.key[3] - '1');
  const std::string attr = f.key.substr(4);
  if (attr.empty()) {
    if (have_row[i]) throw TableError(where + ": duplicate " + f.key);
    pm.text[i] = split_row(f.value, where);
    have_row[i] = true;
    return true;
  }
  if (!have_row[i]) throw TableError(where + ": annotation before its row");
  if (attr == ".corrected") {
    pm.corrected_text[i] = split_row(f.value, where);
  } else if (attr == ".note") {
    pm.note[i] = f.value;
  } else {
    return false;
  }
  return true;
}

FamilyCase read_case(const Block& b) {
  FamilyCase c;
  std::array<bool, 3> have_row{};
  std::map<std::string, bool> seen;
  std::vector<FormulaPiece>* last = nullptr;
  for (const auto& f : b.fields) {
    const std::string where = at_line(b, f.number);
    if (f.key == "k") {
      c.k = static_cast<unsigned>(parse_ll(f.value, where));
    } else if (f.key == "parity") {
      if (f.value != "any" && f.value != "even" && f.value != "odd") throw TableError(where + ": bad parity");
      c.parity = f.value;
    } else if (f.key == "number") {
      c.number = static_cast<int>(parse_ll(f.value, where));
    } else if (f.key == "label") {
      c.label = f.value;
    } else if (f.key == "modulus") {
      c.modulus = parse_ll(f.value, where);
    } else if (f.key == "offset") {
      c.offset = parse_ll(f.value, where);
    } else if (f.key == "m_min") {
      c.m_min = parse_ll(f.value, where);
    } else if (f.key == "exclude") {
      std::istringstream in(f.value);
      std::string tok;
      while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) c.excluded_n.push_back(parse_ll(tok, where));
      }
    } else if (read_row_key(f, where, c.printed, have_row)) {
    } else if (f.key == "F" || f.key == "G") {
      auto& pieces = f.key == "F" ? c.F : c.G;
      const auto bar = f.value.find('|');
      if (bar == std::string::npos) throw TableError(where + ": expected \"guard | formula\"");
      FormulaPiece p;
      try {
        p.guard = Guard::parse(trim(f.value.substr(0, bar)));
      } catch (const ParseError& e) {
        throw TableError(where + ": " + e.what());
      }
      p.text = trim(f.value.substr(bar + 1));
      try {
        p.printed = PolyQ::parse(p.text);
      } catch (const ParseError&) {
        p.printed.reset();
      }
      pieces.push_back(std::move(p));
      last = &pieces;
    } else if (f.key.size() > 2 && (f.key[0] == 'F' || f.key[0] == 'G') && f.key[1] == '.') {
      auto& pieces = f.key[0] == 'F' ? c.F : c.G;
      if (last != &pieces) throw TableError(where + ": annotation does not follow a " + f.key.substr(0, 1) + " formula");
      attach_annotation(pieces, f.key.substr(2), f.value, where);
    } else {
      throw TableError(where + ": unknown key \"" + f.key + "\"");
    }
    if (f.key.find('.') == std::string::npos && f.key != "F" && f.key != "G") {
      if (seen[f.key]) throw TableError(where + ": duplicate key \"" + f.key + "\"");
      seen[f.key] = true;
    }
  }
  const std::string where = at_line(b, b.line);
  for (const char* key : {"k", "parity", "number", "label", "modulus", "offset", "m_min"}) {
    if (!seen[key]) throw TableError(where + ": missing key \"" + key + "\"");
  }
  if (!have_row[0] || !have_row[1] || !have_row[2]) throw TableError(where + ": matrix needs row1, row2, row3");
  if (c.modulus <= 0) throw TableError(where + ": modulus must be positive");
  c.matrix = magnitudes(c.printed.effective(), where);
  check_statuses(c.F, where);
  check_statuses(c.G, where);
  return c;
}

ExceptionalEntry read_exceptional(const Block& b) {
  ExceptionalEntry e;
  PrintedMatrix pm;
  std::array<bool, 3> have_row{};
  bool have_k = false, have_n = false, have_sym = false;
  std::optional<PrintedValue>* last = nullptr;
  for (const auto& f : b.fields) {
    const std::string where = at_line(b, f.number);
    if (f.key == "k") {
      e.k = static_cast<unsigned>(parse_ll(f.value, where));
      have_k = true;
    } else if (f.key == "n") {
      e.n = parse_ll(f.value, where);
      have_n = true;
    } else if (f.key == "symmetric") {
      if (f.value != "yes" && f.value != "no") throw TableError(where + ": symmetric must be yes or no");
      e.symmetric = f.value == "yes";
      have_sym = true;
    } else if (read_row_key(f, where, pm, have_row)) {
    } else if (f.key == "F" || f.key == "G") {
      auto& slot = f.key == "F" ? e.F : e.G;
      if (slot) throw TableError(where + ": duplicate " + f.key);
      slot = PrintedValue{BigInt(f.value), FormulaStatus::verified, std::nullopt, ""};
      last = &slot;
    } else if (f.key.size() > 2 && (f.key[0] == 'F' || f.key[0] == 'G') && f.key[1] == '.') {
      auto& slot = f.key[0] == 'F' ? e.F : e.G;
      if (last != &slot) throw TableError(where + ": annotation does not follow " + f.key.substr(0, 1));
      attach_value_annotation(slot, f.key.substr(2), f.value, where);
    } else if (f.key == "note") {
      e.note = f.value;
    } else {
      throw TableError(where + ": unknown key \"" + f.key + "\"");
    }
  }
  const std::string where = at_line(b, b.line);
  if (!have_k || !have_n || !have_sym) throw TableError(where + ": needs k, n and symmetric");
  const int nrows = have_row[0] + have_row[1] + have_row[2];
  if (nrows != 0 && nrows != 3) throw TableError(where + ": matrix needs row1, row2, row3");
  if (nrows == 3) {
    const auto polys = magnitudes(pm.effective(), where);
    e.printed = std::move(pm);
    RelationMatrix::Entries m;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (polys[i][j].degree() > 0) throw TableError(where + ": exceptional entries must be constants");
        m[i][j] = polys[i][j].eval_integer(0);
      }
    }
    e.matrix = RelationMatrix(m);
  }
  return e;
}

SymmetricEntry read_symmetric(const Block& b) {
  SymmetricEntry s;
  bool have_k = false, have_n = false;
  for (const auto& f : b.fields) {
    const std::string where = at_line(b, f.number);
    if (f.key == "k") {
      s.k = static_cast<unsigned>(parse_ll(f.value, where));
      have_k = true;
    } else if (f.key == "n") {
      s.n = parse_ll(f.value, where);
      have_n = true;
    } else if (f.key == "note") {
      s.note = f.value;
    } else {
      throw TableError(where + ": unknown key \"" + f.key + "\"");
    }
  }
  if (!have_k || !have_n) throw TableError(at_line(b, b.line) + ": needs k and n");
  return s;
}

GenusFamily read_genus(const Block& b) {
  GenusFamily g;
  std::map<std::string, bool> seen;
  for (const auto& f : b.fields) {
    const std::string where = at_line(b, f.number);
    if (f.key == "k") {
      g.k = static_cast<unsigned>(parse_ll(f.value, where));
    } else if (f.key == "label") {
      g.label = f.value;
    } else if (f.key == "modulus") {
      g.modulus = parse_ll(f.value, where);
    } else if (f.key == "offset") {
      g.offset = parse_ll(f.value, where);
    } else if (f.key == "G") {
      g.text = f.value;
      g.G = parse_poly(f.value, where);
    } else {
      throw TableError(where + ": unknown key \"" + f.key + "\"");
    }
    seen[f.key] = true;
  }
  for (const char* key : {"k", "label", "modulus", "offset", "G"}) {
    if (!seen[key]) throw TableError(at_line(b, b.line) + ": missing key \"" + key + "\"");
  }
  return g;
}

// The relation, column and generator identities must hold identically in m.
void check_case_identities(const FamilyCase& c) {
  const PolyQ n = PolyQ({Rational(big_signed(c.offset)), Rational(big_signed(c.modulus))});
  std::array<PolyQ, 3> d;
  for (int i = 0; i < 3; ++i) d[static_cast<std::size_t>(i)] = (n + PolyQ::constant(i - 1)).pow(c.k);
  const auto& a = c.matrix;
  auto fail = [&](const std::string& what) { throw TableError(c.name() + ": " + what + " fails as a polynomial identity"); };
  for (std::size_t i = 0; i < 3; ++i) {
    PolyQ lhs = a[i][i] * d[i];
    PolyQ rhs;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) rhs += a[i][j] * d[j];
    }
    if (lhs != rhs) fail("row " + std::to_string(i + 1) + " relation");
    PolyQ col;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) col += a[j][i];
    }
    if (a[i][i] != col) fail("column " + std::to_string(i + 1) + " identity");
  }
  if (d[0] != a[1][1] * a[2][2] - a[1][2] * a[2][1]) fail("d1 recovery");
  if (d[1] != a[0][0] * a[2][2] - a[0][2] * a[2][0]) fail("d2 recovery");
  if (d[2] != a[0][0] * a[1][1] - a[0][1] * a[1][0]) fail("d3 recovery");
}

void check_exceptional(const ExceptionalEntry& e) {
  if (!e.matrix) return;
  const Semigroup s = Semigroup::power_family(e.k, static_cast<std::uint64_t>(e.n));
  const MatrixReport r = validate_matrix(*e.matrix, s);
  const bool good = e.symmetric ? r.rows_ok() : r.all_ok();
  if (!good) {
    std::string why;
    for (const auto& f : r.failures()) why += (why.empty() ? "" : ", ") + f;
    throw TableError(e.name() + ": printed matrix fails " + why);
  }
}

void check_coverage(const FamilyTables& t) {
  constexpr long long kCoverageLimit = 1000;
  for (unsigned k = 2; k <= 4; ++k) {
    for (long long n = 3; n <= kCoverageLimit; ++n) {
      int special = 0, poly = 0;
      for (const auto& e : t.exceptional) special += e.k == k && e.n == n;
      for (const auto& s : t.symmetric) special += s.k == k && s.n == n;
      for (const auto& c : t.cases) {
        if (c.k != k) continue;
        auto m = c.m_of(n);
        poly += m && c.in_domain(*m);
      }
      const std::string at = "k=" + std::to_string(k) + ", n=" + std::to_string(n);
      if (special > 1) throw TableError("coverage: several exceptional or symmetric entries for " + at);
      if (special == 0 && poly == 0) throw TableError("coverage: no case covers " + at);
      if (special == 0 && poly > 1) throw TableError("coverage: overlapping cases at " + at);
    }
  }
}

void write_row(std::ostringstream& os, const std::string& key, const std::array<std::string, 3>& row) {
  os << key << ": " << row[0] << " ; " << row[1] << " ; " << row[2] << "\n";
}

void write_matrix(std::ostringstream& os, const PrintedMatrix& pm) {
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string key = "row" + std::to_string(i + 1);
    write_row(os, key, pm.text[i]);
    if (pm.row_corrected(static_cast<int>(i))) write_row(os, key + ".corrected", pm.corrected_text[i]);
    if (!pm.note[i].empty()) os << key << ".note: " << pm.note[i] << "\n";
  }
}

void write_pieces(std::ostringstream& os, const char* q, const std::vector<FormulaPiece>& pieces) {
  for (const auto& p : pieces) {
    os << q << ": " << p.guard.to_string() << " | " << p.text << "\n";
    if (p.status != FormulaStatus::verified) os << q << ".status: " << status_name(p.status) << "\n";
    if (p.corrected) os << q << ".corrected: " << p.corrected_text << "\n";
    if (!p.note.empty()) os << q << ".note: " << p.note << "\n";
  }
}

void write_value(std::ostringstream& os, const char* q, const std::optional<PrintedValue>& v) {
  if (!v) return;
  os << q << ": " << v->value.get_str() << "\n";
  if (v->status != FormulaStatus::verified) os << q << ".status: " << status_name(v->status) << "\n";
  if (v->corrected) os << q << ".corrected: " << v->corrected->get_str() << "\n";
  if (!v->note.empty()) os << q << ".note: " << v->note << "\n";
}

}  // namespace

TextRows PrintedMatrix::effective() const {
  TextRows out = text;
  for (int i = 0; i < 3; ++i) {
    if (row_corrected(i)) out[static_cast<std::size_t>(i)] = corrected_text[static_cast<std::size_t>(i)];
  }
  return out;
}

FamilyTables parse_family_tables(std::string_view text) {
  FamilyTables t;
  for (const auto& b : split_blocks(text)) {
    if (b.kind == "case") {
      t.cases.push_back(read_case(b));
    } else if (b.kind == "exceptional") {
      t.exceptional.push_back(read_exceptional(b));
    } else if (b.kind == "symmetric") {
      t.symmetric.push_back(read_symmetric(b));
    } else if (b.kind == "genus") {
      t.genus.push_back(read_genus(b));
    } else {
      throw TableError("line " + std::to_string(b.line) + ": unknown block kind [" + b.kind + "]");
    }
  }
  for (const auto& c : t.cases) {
    if (c.k < 2 || c.k > 4) throw TableError(c.name() + ": k must be 2, 3 or 4");
    check_case_identities(c);
  }
  for (const auto& e : t.exceptional) check_exceptional(e);
  check_coverage(t);
  return t;
}

std::string format_family_tables(const FamilyTables& t) {
  std::ostringstream os;
  for (const auto& s : t.symmetric) {
    os << "[symmetric]\nk: " << s.k << "\nn: " << s.n << "\n";
    if (!s.note.empty()) os << "note: " << s.note << "\n";
    os << "\n";
  }
  for (const auto& e : t.exceptional) {
    os << "[exceptional]\nk: " << e.k << "\nn: " << e.n << "\nsymmetric: " << (e.symmetric ? "yes" : "no") << "\n";
    if (e.printed) write_matrix(os, *e.printed);
    write_value(os, "G", e.G);
    write_value(os, "F", e.F);
    if (!e.note.empty()) os << "note: " << e.note << "\n";
    os << "\n";
  }
  for (const auto& c : t.cases) {
    os << "[case]\nk: " << c.k << "\nparity: " << c.parity << "\nnumber: " << c.number << "\nlabel: " << c.label
       << "\nmodulus: " << c.modulus << "\noffset: " << c.offset << "\nm_min: " << c.m_min << "\nexclude:";
    for (std::size_t i = 0; i < c.excluded_n.size(); ++i) os << (i ? ", " : " ") << c.excluded_n[i];
    os << "\n";
    write_matrix(os, c.printed);
    write_pieces(os, "G", c.G);
    write_pieces(os, "F", c.F);
    os << "\n";
  }
  for (const auto& g : t.genus) {
    os << "[genus]\nk: " << g.k << "\nlabel: " << g.label << "\nmodulus: " << g.modulus << "\noffset: " << g.offset
       << "\nG: " << g.text << "\n\n";
  }
  return os.str();
}

const FamilyTables& family_tables() {
  static const FamilyTables tables = parse_family_tables(detail::kFamilyTablesText);
  return tables;
}

}  // namespace trisg
