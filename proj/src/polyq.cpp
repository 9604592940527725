#include "trisg/polyq.hpp"

#include <sstream>

namespace trisg {

PolyQ::PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

PolyQ PolyQ::constant(const Rational& c) { return PolyQ({c}); }

PolyQ PolyQ::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return PolyQ(std::move(v));
}

void PolyQ::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational PolyQ::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(k)];
}

Rational PolyQ::eval(const Rational& x) const {
  Rational xc = x;
  xc.canonicalize();
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * xc + *it;
  return acc;
}

BigInt PolyQ::eval_integer(const BigInt& x) const {
  Rational v = eval(x);
  if (v.get_den() != 1) {
    throw DomainError("polynomial " + to_string() + " is not integral at " + x.get_str());
  }
  return v.get_num();
}

bool PolyQ::has_integer_coeffs() const {
  for (const auto& c : c_) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

PolyQ PolyQ::compose_affine(const Rational& a, const Rational& b) const {
  const PolyQ inner({b, a});
  PolyQ acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolyQ& PolyQ::operator*=(const PolyQ& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PolyQ& PolyQ::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

PolyQ PolyQ::pow(unsigned e) const {
  PolyQ result = constant(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string PolyQ::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (sgn(c) < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k >= 1) os << var;
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

}  // namespace trisg
