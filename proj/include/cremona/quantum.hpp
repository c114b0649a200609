#pragma once

#include "cremona/prime_field.hpp"

#include <Eigen/Core>

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cremona {

using FpMatrix = Eigen::Matrix<u64, Eigen::Dynamic, Eigen::Dynamic>;

/// q of exact multiplicative order N in F_p.
struct QConfig {
  int N = 1;
  u64 p = 101;
  u64 q = 1;
  std::uint64_t seed = 0;
};

/// Smallest prime p = 1 mod N (101 for N = 1).
u64 default_prime(int N);
/// Throws std::invalid_argument unless p is prime and N divides p - 1.
QConfig make_qconfig(int N, u64 p, std::uint64_t seed = 0);

FpMatrix fp_identity(int n);
FpMatrix fp_mul(const PrimeField& f, const FpMatrix& a, const FpMatrix& b);
FpMatrix fp_add(const PrimeField& f, const FpMatrix& a, const FpMatrix& b);
FpMatrix fp_scale(const PrimeField& f, u64 c, const FpMatrix& a);
/// Gauss-Jordan; nullopt when singular.
std::optional<FpMatrix> fp_inverse(const PrimeField& f, const FpMatrix& a);

/// N x N matrices with X Y = q Y X.
struct QPair {
  FpMatrix X;
  FpMatrix Y;

  friend bool operator==(const QPair& a, const QPair& b) { return a.X == b.X && a.Y == b.Y; }
};

bool satisfies_commutation(const QConfig& cfg, const QPair& pair);

/// X = lx diag(1, q, ..., q^{N-1}), Y = ly times the cyclic shift e_i -> e_{i+1}.
QPair clock_shift(const QConfig& cfg, u64 lx, u64 ly);

/// Clock-shift pair with random scalars, conjugated by a random invertible matrix.
QPair random_qpair(const QConfig& cfg, std::mt19937_64& rng);

struct SingularSubstitution : std::domain_error {
  SingularSubstitution() : std::domain_error("singular substitution") {}
};

/// P, C, I and their inverses (L = P^-1).
enum class QMap { P, PInv, C, CInv, I, IInv };

/// Throws std::invalid_argument on unknown names. Accepts P, L, C, I and the suffix "^-1".
QMap parse_qmap(std::string_view name);
std::string to_string(QMap m);

/// P: (y, q x^-1 (1+y)), C: (x^-1 y q, x^-1 q), I: (y^-1 q, x), evaluated at the pair.
/// Throws SingularSubstitution when a needed inverse does not exist.
QPair q_apply(QMap m, const QPair& pair, const QConfig& cfg);

using QWord = std::vector<QMap>;

/// Rightmost map first.
QPair q_apply(const QWord& word, QPair pair, const QConfig& cfg);

enum class QVerdict { Identity, NotIdentity, Inconclusive };

std::string to_string(QVerdict v);

struct QRelationReport {
  std::string word;
  int N = 1;
  u64 p = 0;
  int trials = 0;
  int identity_trials = 0;
  int singular_samples = 0;
  QVerdict verdict = QVerdict::Inconclusive;
  std::vector<std::string> witnesses;
};

/// Applies the word to `trials` random nonsingular pairs (resampling singular ones, at most
/// 20 * trials attempts) and compares with the input.
QRelationReport q_relation_check(const QWord& word, const QConfig& cfg, int trials, std::string label = "");

}  // namespace cremona
