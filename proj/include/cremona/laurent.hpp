#pragma once

#include "cremona/lattice.hpp"
#include "cremona/prime_field.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace cremona {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Residue of a rational number mod p; nullopt when p divides the denominator.
std::optional<u64> reduce_mod(const Rational& r, const PrimeField& f);

/// "n" or "n/d".
std::string rational_to_string(const Rational& r);
/// Accepts "n" or "n/d"; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

using Exponent = std::pair<Int, Int>;

/// Sparse Laurent polynomial in x, y with rational coefficients. No zero coefficients are stored.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  LaurentPoly() = default;
  static LaurentPoly constant(const Rational& c);
  static LaurentPoly monomial(Int i, Int j, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly pow(unsigned n) const;
  /// Inverse of a monomial; throws std::domain_error otherwise.
  LaurentPoly monomial_inverse() const;
  /// d/dx (var 0) or d/dy (var 1).
  LaurentPoly derivative(int var) const;

  /// nullopt when a negative power of zero or a coefficient denominator divisible by p occurs.
  std::optional<u64> eval(const PrimeField& f, u64 x, u64 y) const;

 private:
  Terms terms_;
};

std::string to_string(const LaurentPoly& p);

}  // namespace cremona
