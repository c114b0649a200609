#pragma once

#include "cremona/laurent.hpp"
#include "cremona/pl_aut.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace cremona {

struct RationalFn {
  LaurentPoly num;
  LaurentPoly den;

  RationalFn() : den(LaurentPoly::constant(1)) {}
  /// Throws std::invalid_argument when den is zero.
  RationalFn(LaurentPoly n, LaurentPoly d);

  std::optional<u64> eval(const PrimeField& f, u64 x, u64 y) const;
  RationalFn derivative(int var) const;
};

/// Exact equality as rational functions (cross multiplication).
bool equals(const RationalFn& a, const RationalFn& b);

/// A birational map of the plane given by its two coordinate functions.
struct BirMap {
  RationalFn f1;
  RationalFn f2;
};

using FpPoint = std::array<u64, 2>;

struct UndefinedPoint : std::domain_error {
  UndefinedPoint() : std::domain_error("undefined at point") {}
};

/// One letter of a birational word: P, its inverse L, a monomial map, or a scaling of x.
struct BirLetter {
  enum class Kind { P, L, Monomial, Scaling };
  Kind kind = Kind::P;
  Mat2 matrix = Mat2::Identity();
  Rational lambda = 1;
};

BirLetter bir_P();
BirLetter bir_L();
/// Throws std::invalid_argument unless det M = +-1.
BirLetter bir_monomial(const Mat2& m);
/// Throws std::invalid_argument when lambda = 0.
BirLetter bir_scaling(const Rational& lambda);
BirLetter inverse(const BirLetter& g);

/// Leftmost letter is applied last.
using BirWord = std::vector<BirLetter>;

BirMap identity_bir();
/// P -> (y, (1+y)/x); M=(a,b;c,d) -> (x^a y^b, x^c y^d); lambda -> (lambda x, y).
BirMap generator_bir(const BirLetter& g);

/// f o g by substitution. No canonical form: compare with equals().
BirMap compose_bir(const BirMap& f, const BirMap& g);
BirMap compose_word_bir(const BirWord& w);
bool equals(const BirMap& f, const BirMap& g);

/// Throws UndefinedPoint when a denominator vanishes.
FpPoint eval_map(const BirMap& f, const FpPoint& pt, const PrimeField& field);
std::optional<FpPoint> try_eval(const BirMap& f, const FpPoint& pt, const PrimeField& field);
/// Iterated point evaluation, rightmost letter first.
std::optional<FpPoint> try_eval(const BirWord& w, FpPoint pt, const PrimeField& field);

/// Upper bound on the degree of the numerators and denominators of the composite.
double degree_bound_log2(const BirWord& w);

enum class Outcome { Holds, Fails, Inconclusive };

struct IdentityCheck {
  Outcome outcome = Outcome::Inconclusive;
  int agreeing_trials = 0;
  /// log2 of the probability that unequal maps pass all agreeing trials.
  double error_log2 = 0.0;
  std::optional<FpPoint> witness;
  std::optional<FpPoint> lhs_value;
  std::optional<FpPoint> rhs_value;
};

/// Schwartz-Zippel test of lhs = rhs at random points of F_p^2. Requires p > 2^61.
IdentityCheck word_equals(const BirWord& lhs, const BirWord& rhs, int trials, u64 p, std::mt19937_64& rng);

/// Checks x y det J(f) = f1 f2 at random points.
IdentityCheck is_symplectic(const BirMap& f, int trials, u64 p, std::mt19937_64& rng);
/// Same for a word; the Jacobian is accumulated by the chain rule along the orbit.
IdentityCheck is_symplectic(const BirWord& w, int trials, u64 p, std::mt19937_64& rng);

/// Valuation shadow of f; throws std::domain_error when it is not a PL automorphism.
PLAut tropicalize(const BirMap& f);

/// Outcome of evaluating a word against the identity at many points over several primes.
struct ProbeResult {
  int points = 0;
  int fixed_points = 0;
  std::vector<u64> primes;
  bool consistent() const { return fixed_points == 0 || fixed_points == points; }
  bool identity() const { return points > 0 && fixed_points == points; }
  std::optional<FpPoint> moved_point;
  std::optional<FpPoint> moved_image;
  u64 moved_prime = 0;
};

ProbeResult probe_identity(const BirWord& w, int points_per_prime, const std::vector<u64>& primes,
                           std::mt19937_64& rng);

}  // namespace cremona
