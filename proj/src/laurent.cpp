#include "cremona/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace cremona {

std::optional<u64> reduce_mod(const Rational& r, const PrimeField& f) {
  const BigInt p = f.modulus();
  BigInt n = boost::multiprecision::numerator(r) % p;
  if (n < 0) n += p;
  const BigInt d = boost::multiprecision::denominator(r) % p;
  if (d == 0) return std::nullopt;
  return f.mul(n.convert_to<u64>(), f.inv(d.convert_to<u64>()));
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

Rational parse_rational(std::string_view text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    const BigInt n(std::string(text.substr(0, slash)));
    const BigInt d(std::string(text.substr(slash + 1)));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational '" + std::string(text) + "'");
  }
}

LaurentPoly LaurentPoly::constant(const Rational& c) { return monomial(0, 0, c); }

LaurentPoly LaurentPoly::monomial(Int i, Int j, const Rational& c) {
  LaurentPoly p;
  p.add_term({i, j}, c);
  return p;
}

void LaurentPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  LaurentPoly out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
  *this = std::move(out);
  return *this;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result = constant(1);
  LaurentPoly base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
  if (!is_monomial()) throw std::domain_error("not a monomial");
  const auto& [e, c] = *terms_.begin();
  return monomial(-e.first, -e.second, 1 / c);
}

LaurentPoly LaurentPoly::derivative(int var) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) {
    const Int k = var == 0 ? e.first : e.second;
    if (k == 0) continue;
    Exponent d = e;
    (var == 0 ? d.first : d.second) -= 1;
    out.add_term(d, c * k);
  }
  return out;
}

std::optional<u64> LaurentPoly::eval(const PrimeField& f, u64 x, u64 y) const {
  const u64 p = f.modulus();
  const bool x_zero = x % p == 0;
  const bool y_zero = y % p == 0;
  const u64 xi = x_zero ? 0 : f.inv(x);
  const u64 yi = y_zero ? 0 : f.inv(y);
  u64 acc = 0;
  for (const auto& [e, c] : terms_) {
    if ((e.first < 0 && x_zero) || (e.second < 0 && y_zero)) return std::nullopt;
    const auto cm = reduce_mod(c, f);
    if (!cm) return std::nullopt;
    u64 t = *cm;
    t = f.mul(t, e.first >= 0 ? f.pow(x, e.first) : f.pow(xi, -e.first));
    t = f.mul(t, e.second >= 0 ? f.pow(y, e.second) : f.pow(yi, -e.second));
    acc = f.add(acc, t);
  }
  return acc;
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c);
    if (e.first) os << "*x^" << e.first;
    if (e.second) os << "*y^" << e.second;
  }
  return os.str();
}

}  // namespace cremona
