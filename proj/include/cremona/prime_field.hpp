#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace cremona {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(u64 n);

/// Primes just below 2^62, 2^63 and 2^64.
inline constexpr std::array<u64, 3> kLargePrimes = {4611686018427387847ULL, 9223372036854775783ULL,
                                                    18446744073709551557ULL};

/// Arithmetic in Z/pZ for a prime p < 2^64.
class PrimeField {
 public:
  explicit PrimeField(u64 p);

  u64 modulus() const { return p_; }

  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return (s < a || s >= p_) ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p_ - b); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p_); }
  u64 pow(u64 a, u64 e) const;
  /// Throws std::domain_error on zero.
  u64 inv(u64 a) const;
  u64 from_int(std::int64_t v) const;

  u64 random_nonzero(std::mt19937_64& rng) const {
    return std::uniform_int_distribution<u64>(1, p_ - 1)(rng);
  }

 private:
  u64 p_;
};

/// An element of multiplicative order exactly n; requires n | p - 1.
u64 root_of_unity(const PrimeField& f, u64 n);

}  // namespace cremona
