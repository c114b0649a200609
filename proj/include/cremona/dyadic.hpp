#pragma once

#include "cremona/lattice.hpp"

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cremona {

/// num / 2^exp in lowest terms (num odd unless exp == 0). Exponents are capped at 62.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Int num, int exp = 0);

  Int num() const { return num_; }
  int exp() const { return exp_; }

  /// Multiplies by 2^k.
  Dyadic scaled(int k) const;
  /// Representative in [0, 1).
  Dyadic frac() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  Int num_ = 0;
  int exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

/// Exponent s with b = 2^s a for positive dyadics a, b; nullopt if the ratio is not a power of 2.
std::optional<int> log2_ratio(const Dyadic& a, const Dyadic& b);

/// Orientation preserving piecewise-linear homeomorphism of the circle R/Z with dyadic
/// breakpoints and power-of-2 slopes.
///
/// Canonical form: breakpoints sorted by x, the first at x = 0, and apart from x = 0 only
/// points where the slope changes. Values are taken mod 1.
class DyadicPL {
 public:
  using Point = std::pair<Dyadic, Dyadic>;

  DyadicPL();  // identity
  /// Validates and canonicalises; throws std::invalid_argument.
  explicit DyadicPL(std::vector<Point> breakpoints);

  const std::vector<Point>& breakpoints() const { return pts_; }
  Dyadic operator()(const Dyadic& x) const;
  Dyadic inverse_at(const Dyadic& y) const;
  /// log2 of the slope on the piece starting at breakpoint i.
  int slope_log2(std::size_t i) const { return slopes_[i]; }

  friend bool operator==(const DyadicPL& a, const DyadicPL& b) { return a.pts_ == b.pts_; }

 private:
  std::size_t piece_at(const Dyadic& x) const;

  std::vector<Point> pts_;
  std::vector<int> slopes_;
};

/// f o g.
DyadicPL compose(const DyadicPL& f, const DyadicPL& g);
DyadicPL inverse(const DyadicPL& f);
bool is_identity(const DyadicPL& f);

}  // namespace cremona
