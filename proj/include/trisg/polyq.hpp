#pragma once

// Univariate polynomials with exact rational coefficients.

#include <string>
#include <string_view>
#include <vector>

#include "trisg/bigint.hpp"
#include "trisg/error.hpp"

namespace trisg {

class PolyQ {
 public:
  PolyQ() = default;
  /// Coefficients in ascending degree; trailing zeros are dropped.
  explicit PolyQ(std::vector<Rational> coeffs);
  static PolyQ constant(const Rational& c);
  /// The monomial c * x^k.
  static PolyQ monomial(const Rational& c, unsigned k);
  static PolyQ x() { return monomial(1, 1); }

  /// Parses an expression in the variable m: integer or rational literals,
  /// +, -, *, implicit multiplication, ^ with a nonnegative integer exponent,
  /// parentheses and square brackets, and division by a nonzero constant.
  /// Throws ParseError.
  static PolyQ parse(std::string_view text, char var = 'm');

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of x^k (zero beyond the degree).
  Rational coeff(int k) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const;
  Rational eval(const BigInt& x) const { return eval(Rational(x)); }
  /// Value at x, which must be an integer; throws DomainError otherwise.
  BigInt eval_integer(const BigInt& x) const;
  bool has_integer_coeffs() const;

  /// p(a*x + b).
  PolyQ compose_affine(const Rational& a, const Rational& b) const;
  /// p(-x).
  PolyQ reflect() const { return compose_affine(-1, 0); }

  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  PolyQ& operator*=(const PolyQ& o);
  PolyQ& operator*=(const Rational& s);
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(PolyQ a, const PolyQ& b) { return a *= b; }
  friend PolyQ operator*(PolyQ a, const Rational& s) { return a *= s; }
  PolyQ operator-() const;
  PolyQ pow(unsigned e) const;

  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

  /// Descending-degree text such as "272m^3-168m^2+m-2"; rational
  /// coefficients print as "3/2m".
  std::string to_string(char var = 'm') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Malformed polynomial text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace trisg
