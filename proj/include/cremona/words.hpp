#pragma once

#include "cremona/birational.hpp"
#include "cremona/picard.hpp"
#include "cremona/pl_aut.hpp"
#include "cremona/quantum.hpp"
#include "cremona/thompson.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cremona {

enum class Sym { P, L, C, I, U, Mu, R, A, B, X2, Alpha, Beta, V, Mono, Scale };

struct Factor {
  Sym sym = Sym::P;
  int exp = 1;
  Mat2 mono = Mat2::Identity();  // for Mono
  Rational scale = 1;            // for Scale

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.sym == b.sym && a.exp == b.exp && a.mono == b.mono && a.scale == b.scale;
  }
};

/// A product of powers; the rightmost factor acts first. Adjacent equal symbols are merged.
using Word = std::vector<Factor>;

struct WordSyntaxError : std::invalid_argument {
  WordSyntaxError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Grammar: products of symbols, "1", mono(a,b,c,d), scale(n/d), groups (...), commutators
/// [X,Y] = X^-1 Y^-1 X Y, each optionally raised to ^n or ^-n. Runs of capital one-letter
/// symbols may be juxtaposed ("PCP").
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
std::string symbol_name(Sym s);

Word normalize(Word w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int n);

/// Which group the letters C and I refer to.
///  group:    P, C, I are the birational generator and the SL2 matrices; U = CI, mu = IP, L = P^-1.
///  appendix: L and C' with C' the matrix C^-1; I = LC'L, R = L^-2 C'^-1 and the appendix notations.
///  cfp:      the standard A, B, C of Thompson's T; R = A^-1 C B, X2 = A^-1 B A, P = A^-1 R B.
enum class Dialect { Group, Appendix, Cfp };

std::optional<Dialect> parse_dialect(std::string_view s);
std::string to_string(Dialect d);

/// Definition of a non-native symbol in the dialect; throws std::invalid_argument when undefined.
Word definition(Sym s, Dialect d);

/// Rewrites every symbol into the dialect natives (group: P, L, C, I, mono, scale;
/// appendix: L, C; cfp: A, B, C).
Word expand(const Word& w, Dialect d);

enum class Alphabet { PC, LC, ABC };

/// Full expansion over {P,C} (group, I = PCP), {L,C} (appendix, I = LCL) or {A,B,C} (cfp).
Word expand(const Word& w, Alphabet a);

enum class Backend { Pl, Dyadic, Tree, Bir, Quantum, Picard };

std::optional<Backend> parse_backend(std::string_view s);
std::string to_string(Backend b);

PLAut eval_pl(const Word& w, Dialect d = Dialect::Group);
DyadicPL eval_dyadic(const Word& w, Dialect d = Dialect::Group);
TreePair eval_tree(const Word& w, Dialect d = Dialect::Group);
BirWord eval_bir(const Word& w, Dialect d = Dialect::Group);
QWord eval_quantum(const Word& w, Dialect d = Dialect::Group);
/// Letter actions on W[q], rightmost first.
std::vector<PicAction> eval_picard(const Word& w, Dialect d = Dialect::Group);
PicVec apply(const std::vector<PicAction>& actions, PicVec x);

struct RunParams {
  std::vector<u64> primes = {kLargePrimes[0], kLargePrimes[1]};
  int trials = 20;
  std::uint64_t seed = 1;
  int N = 5;
  u64 qprime = 0;  // 0: default_prime(N)
  int picard_vectors = 20;
  int probe_points = 100;
  std::vector<u64> probe_primes = {kLargePrimes[0], kLargePrimes[1], kLargePrimes[2]};
};

enum class Expectation { Identity, Equal, Probe };

struct Relation {
  std::string name;
  std::string lhs;
  std::string rhs;  // a word, "1", or "probe"
  Dialect dialect = Dialect::Group;
  /// Backends in which a probe is a known identity and is checked as one.
  std::vector<Backend> identity_in;
  /// Related word printed next to a probe.
  std::string companion;

  Expectation expectation() const;
};

struct Suite {
  std::string name;
  std::vector<Relation> relations;
};

/// Unsupported: the backend cannot evaluate a symbol of the relation (e.g. cfp generators in bir).
enum class Verdict { Pass, Fail, Inconclusive, ProbeIdentity, ProbeNotIdentity, ProbeInconsistent, Unsupported };

std::string to_string(Verdict v);

struct RelationResult {
  Relation relation;
  Verdict verdict = Verdict::Inconclusive;
  std::string details;
  std::string witness;
};

struct SuiteReport {
  std::string suite;
  Backend backend = Backend::Pl;
  RunParams params;
  std::vector<RelationResult> results;

  /// Fail and Inconclusive verdicts.
  int failures() const;
  int unsupported() const;
  bool all_pass() const { return failures() == 0 && unsupported() == 0; }
};

struct UnsupportedSymbol : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Compares lhs and rhs of one relation in the backend. Throws UnsupportedSymbol.
RelationResult check_relation(const Relation& r, Backend b, const RunParams& params);
SuiteReport check_suite(const Suite& suite, Backend b, const RunParams& params);

}  // namespace cremona
