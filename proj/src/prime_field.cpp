#include "cremona/prime_field.hpp"

#include <vector>

namespace cremona {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // this witness set is exact for all n < 2^64
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus is not prime");
}

u64 PrimeField::pow(u64 a, u64 e) const { return powmod(a, e, p_); }

u64 PrimeField::inv(u64 a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse");
  return powmod(a, p_ - 2, p_);
}

u64 PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<u64>(v) % p_;
  const u64 m = static_cast<u64>(-(v + 1)) + 1;  // |v| without overflow
  return neg(m % p_);
}

u64 root_of_unity(const PrimeField& f, u64 n) {
  const u64 p = f.modulus();
  if (n == 0 || (p - 1) % n != 0) throw std::invalid_argument("order does not divide p - 1");
  const std::vector<u64> rs = prime_factors(n);
  for (u64 g = 2; g < p; ++g) {
    const u64 c = f.pow(g, (p - 1) / n);
    bool exact = true;
    for (u64 r : rs) exact = exact && f.pow(c, n / r) != 1;
    if (exact) return c;
  }
  return 1;  // n == 1
}

}  // namespace cremona
