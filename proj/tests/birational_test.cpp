#include "cremona/birational.hpp"

#include <gtest/gtest.h>

#include <random>

namespace cremona {
namespace {

const Mat2 kC = make_mat(-1, 1, -1, 0);
const Mat2 kI = make_mat(0, -1, 1, 0);

LaurentPoly m(Int i, Int j, Rational c = 1) { return LaurentPoly::monomial(i, j, c); }

BirWord word_of(const std::string& letters) {
  BirWord w;
  for (char ch : letters) {
    switch (ch) {
      case 'P': w.push_back(bir_P()); break;
      case 'L': w.push_back(bir_L()); break;
      case 'C': w.push_back(bir_monomial(kC)); break;
      case 'I': w.push_back(bir_monomial(kI)); break;
      case 'c': w.push_back(bir_monomial(inverse_unimodular(kC))); break;
      case 'i': w.push_back(bir_monomial(inverse_unimodular(kI))); break;
      default: ADD_FAILURE() << "bad letter " << ch;
    }
  }
  return w;
}

TEST(PrimeField, LargePrimesArePrime) {
  for (u64 p : kLargePrimes) {
    EXPECT_TRUE(is_prime_u64(p));
    EXPECT_GT(p, u64{1} << 61);
  }
  EXPECT_FALSE(is_prime_u64((u64{1} << 61) + 1));
  EXPECT_TRUE(is_prime_u64((u64{1} << 61) - 1));  // Mersenne prime
  EXPECT_FALSE(is_prime_u64(3215031751ULL));       // strong pseudoprime to bases 2,3,5,7
  const PrimeField f(kLargePrimes[2]);
  const u64 a = kLargePrimes[2] - 2;
  EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.add(a, 5), 3u);
}

TEST(Laurent, ArithmeticAndDerivative) {
  const LaurentPoly p = m(0, 0) + m(0, 1);  // 1 + y
  EXPECT_EQ(p * p, m(0, 0) + m(0, 1, 2) + m(0, 2));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(m(-2, 3, 5).derivative(0), m(-3, 3, -10));
  EXPECT_EQ(m(2, 3).monomial_inverse(), m(-2, -3));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(rational_to_string(Rational(4, 2)), "2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Generators, Formulas) {
  const BirMap P = generator_bir(bir_P());
  EXPECT_EQ(P.f1.num, m(0, 1));
  EXPECT_TRUE(equals(P.f2, RationalFn(m(0, 0) + m(0, 1), m(1, 0))));
  EXPECT_TRUE(equals(generator_bir(bir_monomial(Mat2::Identity())), identity_bir()));
  const BirMap C = generator_bir(bir_monomial(kC));
  EXPECT_TRUE(equals(C.f1, RationalFn(m(-1, 1), m(0, 0))));
  EXPECT_TRUE(equals(C.f2, RationalFn(m(-1, 0), m(0, 0))));
  EXPECT_THROW(bir_monomial(make_mat(2, 0, 0, 1)), std::invalid_argument);
  EXPECT_THROW(bir_scaling(0), std::invalid_argument);
}

TEST(Compose, PP) {
  const BirMap P = generator_bir(bir_P());
  const BirMap PP = compose_bir(P, P);
  const BirMap expected{RationalFn(m(0, 0) + m(0, 1), m(1, 0)), RationalFn(m(0, 0) + m(1, 0) + m(0, 1), m(1, 1))};
  EXPECT_TRUE(equals(PP, expected));
  EXPECT_TRUE(equals(compose_bir(P, identity_bir()), P));
  EXPECT_TRUE(equals(compose_bir(identity_bir(), P), P));
  EXPECT_FALSE(equals(PP, P));
}

TEST(Compose, MonomialsMultiply) {
  std::mt19937_64 rng(3);
  const std::vector<Mat2> ms = {kC, kI, make_mat(1, 1, 0, 1), make_mat(2, 1, 1, 1), make_mat(1, 0, -3, 1)};
  for (const Mat2& a : ms)
    for (const Mat2& b : ms) {
      const BirMap lhs = compose_bir(generator_bir(bir_monomial(a)), generator_bir(bir_monomial(b)));
      EXPECT_TRUE(equals(lhs, generator_bir(bir_monomial(Mat2(a * b)))));
    }
}

TEST(Compose, ExactRelationsForShortWords) {
  EXPECT_TRUE(equals(compose_word_bir(word_of("PPPPP")), identity_bir()));
  EXPECT_TRUE(equals(compose_word_bir(word_of("PCP")), generator_bir(bir_monomial(kI))));
  EXPECT_TRUE(equals(compose_word_bir(word_of("PL")), identity_bir()));
  EXPECT_TRUE(equals(compose_word_bir(word_of("LP")), identity_bir()));
}

// Independent closed-form oracle in F_p for the letters.
FpPoint oracle_step(char ch, FpPoint v, const PrimeField& f) {
  const u64 x = v[0], y = v[1];
  switch (ch) {
    case 'P': return {y, f.mul(f.add(1, y), f.inv(x))};
    case 'L': return {f.mul(f.add(1, x), f.inv(y)), x};
    case 'C': return {f.mul(y, f.inv(x)), f.inv(x)};             // (x^-1 y, x^-1)
    case 'I': return {f.inv(y), x};                              // (y^-1, x)
    case 'c': return {f.inv(y), f.mul(x, f.inv(y))};             // C^-1 = (0,-1;1,-1)
    case 'i': return {y, f.inv(x)};
  }
  return v;
}

TEST(Eval, SpotValuesAndUndefined) {
  const PrimeField f(101);
  const BirMap P = generator_bir(bir_P());
  EXPECT_EQ(eval_map(P, {2, 3}, f), (FpPoint{3, 2}));
  EXPECT_EQ(eval_map(identity_bir(), {5, 7}, f), (FpPoint{5, 7}));
  EXPECT_THROW(eval_map(P, {0, 4}, f), UndefinedPoint);
  const BirMap half = generator_bir(bir_scaling(Rational(1, 2)));
  EXPECT_EQ(eval_map(half, {4, 9}, f), (FpPoint{2, 9}));
}

TEST(Eval, CompositionMatchesIteratedEvaluation) {
  std::mt19937_64 rng(99);
  const PrimeField f(kLargePrimes[0]);
  const std::string alphabet = "PLCIci";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(1, 4);
  for (int t = 0; t < 40; ++t) {
    std::string w;
    for (int k = len(rng); k > 0; --k) w += alphabet[pick(rng)];
    const BirMap composite = compose_word_bir(word_of(w));
    for (int k = 0; k < 5; ++k) {
      FpPoint pt{f.random_nonzero(rng), f.random_nonzero(rng)};
      FpPoint expect = pt;
      for (auto it = w.rbegin(); it != w.rend(); ++it) expect = oracle_step(*it, expect, f);
      const auto got = try_eval(composite, pt, f);
      ASSERT_TRUE(got.has_value());
      EXPECT_EQ(*got, expect) << w;
      EXPECT_EQ(*try_eval(word_of(w), pt, f), expect) << w;
    }
  }
}

TEST(WordEquals, GroupRelationsAtTwoPrimes) {
  std::mt19937_64 rng(5);
  const std::vector<std::pair<std::string, std::string>> relations = {
      {"CCC", ""}, {"IIII", ""}, {"ciiCII", ""}, {"PCP", "I"}, {"PPPPP", ""}};
  for (u64 p : {kLargePrimes[0], kLargePrimes[1]}) {
    for (const auto& [l, r] : relations) {
      const IdentityCheck c = word_equals(word_of(l), word_of(r), 20, p, rng);
      EXPECT_EQ(c.outcome, Outcome::Holds) << l;
      EXPECT_EQ(c.agreeing_trials, 20);
      EXPECT_LT(c.error_log2, -40.0);
    }
  }
}

TEST(WordEquals, DistinctMapsGiveWitness) {
  std::mt19937_64 rng(6);
  const IdentityCheck c = word_equals(word_of("P"), word_of("C"), 20, kLargePrimes[0], rng);
  ASSERT_EQ(c.outcome, Outcome::Fails);
  ASSERT_TRUE(c.witness && c.lhs_value && c.rhs_value);
  const PrimeField f(kLargePrimes[0]);
  EXPECT_EQ(*c.lhs_value, oracle_step('P', *c.witness, f));
  EXPECT_EQ(*c.rhs_value, oracle_step('C', *c.witness, f));
  EXPECT_THROW(word_equals(word_of("P"), word_of("P"), 5, 101, rng), std::invalid_argument);
}

TEST(Symplectic, GeneratorsAndWords) {
  std::mt19937_64 rng(8);
  const u64 p = kLargePrimes[1];
  for (const auto& g : {bir_P(), bir_L(), bir_monomial(kC), bir_monomial(kI), bir_scaling(Rational(3, 7))}) {
    EXPECT_EQ(is_symplectic(generator_bir(g), 10, p, rng).outcome, Outcome::Holds);
  }
  const std::string alphabet = "PLCIci";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(1, 6);
  for (int t = 0; t < 20; ++t) {
    std::string w;
    for (int k = len(rng); k > 0; --k) w += alphabet[pick(rng)];
    EXPECT_EQ(is_symplectic(word_of(w), 10, p, rng).outcome, Outcome::Holds) << w;
  }
  const BirMap shift{RationalFn(m(1, 0) + m(0, 0), m(0, 0)), RationalFn(m(0, 1), m(0, 0))};
  EXPECT_EQ(is_symplectic(shift, 10, p, rng).outcome, Outcome::Fails);
  // det -1 monomial reverses the form
  EXPECT_EQ(is_symplectic(generator_bir(bir_monomial(make_mat(0, 1, 1, 0))), 10, p, rng).outcome, Outcome::Fails);
}

TEST(Tropicalize, Generators) {
  EXPECT_EQ(tropicalize(generator_bir(bir_P())), generator_pl(PlGenerator::P));
  EXPECT_EQ(tropicalize(generator_bir(bir_L())), generator_pl(PlGenerator::L));
  EXPECT_EQ(tropicalize(generator_bir(bir_monomial(kC))), PLAut(kC));
  EXPECT_EQ(tropicalize(generator_bir(bir_scaling(Rational(-5, 3)))), PLAut());
  const BirMap bad{RationalFn(m(2, 0), m(0, 0)), RationalFn(m(0, 1), m(0, 0))};
  EXPECT_THROW(tropicalize(bad), std::domain_error);
}

TEST(Tropicalize, MorphismOnShortWords) {
  const std::string alphabet = "PCI";
  std::vector<std::string> words = {""};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (char ch : alphabet) next.push_back(w + ch);
    words.insert(words.end(), next.begin(), next.end());
  }
  auto pl_letter = [](char ch) {
    switch (ch) {
      case 'P': return generator_pl(PlGenerator::P);
      case 'C': return generator_pl(PlGenerator::C);
      default: return generator_pl(PlGenerator::I);
    }
  };
  for (const auto& w : words) {
    PLAut pl;
    for (char ch : w) pl = compose(pl, pl_letter(ch));
    EXPECT_EQ(tropicalize(compose_word_bir(word_of(w))), pl) << w;
  }
}

TEST(Probe, ConsistentAcrossPoints) {
  std::mt19937_64 rng(12);
  const ProbeResult trivial = probe_identity(word_of("PPPPP"), 20, {kLargePrimes[0], kLargePrimes[2]}, rng);
  EXPECT_TRUE(trivial.identity());
  const ProbeResult moved = probe_identity(word_of("P"), 20, {kLargePrimes[0]}, rng);
  EXPECT_TRUE(moved.consistent());
  EXPECT_FALSE(moved.identity());
  EXPECT_TRUE(moved.moved_point.has_value());
}

}  // namespace
}  // namespace cremona
