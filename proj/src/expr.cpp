// Recursive-descent parser for the polynomial notation used in the family
// tables, e.g. "-(108m^2+32m+1)", "16(50m^2-10m+1)", "-[(k-15)m+1]".

#include <cctype>

#include "trisg/polyq.hpp"

namespace trisg {
namespace {

class Parser {
 public:
  Parser(std::string_view text, char var) : s_(text), var_(var) {}

  PolyQ run() {
    PolyQ p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) +
                     ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == var_ || c == '(' || c == '[' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  // expr := ['+'|'-'] term (('+'|'-') term)*
  PolyQ expr() {
    PolyQ acc;
    bool first = true;
    for (;;) {
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        return acc;
      }
      PolyQ t = term();
      if (sign < 0) acc -= t; else acc += t;
      first = false;
    }
  }

  // term := power (('*' | '/' | juxtaposition) power)*
  PolyQ term() {
    PolyQ acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc *= power();
      } else if (peek('/')) {
        ++pos_;
        PolyQ d = power();
        if (d.degree() != 0) fail("division by a non-constant");
        acc *= Rational(1) / d.leading();
      } else if (starts_factor()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  // power := primary ['^' integer]
  PolyQ power() {
    PolyQ base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 64) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  PolyQ primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(' || c == '[') {
      const char close = c == '(' ? ')' : ']';
      ++pos_;
      PolyQ inner = expr();
      if (!peek(close)) fail(std::string("expected '") + close + "'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return PolyQ::constant(Rational(BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c == var_) {
      ++pos_;
      return PolyQ::x();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unknown symbol '") + c + "'");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyQ PolyQ::parse(std::string_view text, char var) { return Parser(text, var).run(); }

}  // namespace trisg
