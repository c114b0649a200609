#include "cremona/pl_aut.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

namespace cremona {
namespace {

// Closed-form oracles, independent of the cone machinery.
Vec2 oracle_P(const Vec2& v) { return Vec2(v(1), std::min<Int>(0, v(1)) - v(0)); }
Vec2 oracle_L(const Vec2& v) { return Vec2(std::min<Int>(0, v(0)) - v(1), v(0)); }
Vec2 oracle_mu(const Vec2& v) { return Vec2(v(0) - std::min<Int>(0, v(1)), v(1)); }

using Oracle = std::function<Vec2(const Vec2&)>;

Oracle oracle_for(PlGenerator g) {
  switch (g) {
    case PlGenerator::P: return oracle_P;
    case PlGenerator::L: return oracle_L;
    case PlGenerator::Mu: return oracle_mu;
    case PlGenerator::C: return [](const Vec2& v) -> Vec2 { return matrix_C() * v; };
    case PlGenerator::I: return [](const Vec2& v) -> Vec2 { return matrix_I() * v; };
    case PlGenerator::U: return [](const Vec2& v) -> Vec2 { return matrix_U() * v; };
  }
  return {};
}

const std::vector<PlGenerator> kGenerators = {PlGenerator::P, PlGenerator::L, PlGenerator::C,
                                              PlGenerator::I, PlGenerator::U, PlGenerator::Mu};

PLAut word(std::initializer_list<PlGenerator> letters) {
  PLAut out;
  for (auto g : letters) out = compose(out, generator_pl(g));
  return out;
}

TEST(Primitive, DividesByGcd) {
  EXPECT_EQ(Primitive(2, 4), Primitive(1, 2));
  EXPECT_EQ(Primitive(0, -3), Primitive(0, -1));
  EXPECT_EQ(Primitive(-6, 9), Primitive(-2, 3));
  EXPECT_THROW(Primitive(0, 0), std::invalid_argument);
}

TEST(Generators, SpotValues) {
  EXPECT_EQ(apply(generator_pl(PlGenerator::P), Vec2(1, 0)), Vec2(0, -1));
  EXPECT_EQ(apply(generator_pl(PlGenerator::Mu), Vec2(2, -3)), Vec2(5, -3));
  EXPECT_EQ(apply(generator_pl(PlGenerator::C), Vec2(1, 0)), Vec2(-1, -1));
  EXPECT_EQ(apply(generator_pl(PlGenerator::P), Vec2(0, -1)), Vec2(-1, -1));
  EXPECT_EQ(apply(PLAut(), Vec2(7, -3)), Vec2(7, -3));
  const PLAut pp = compose(generator_pl(PlGenerator::P), generator_pl(PlGenerator::P));
  EXPECT_EQ(apply(pp, Vec2(1, 0)), Vec2(-1, -1));
  EXPECT_THROW(generator_pl("Q"), std::invalid_argument);
}

TEST(Generators, MatchClosedFormsOnGrid) {
  for (auto g : kGenerators) {
    const PLAut f = generator_pl(g);
    const Oracle o = oracle_for(g);
    for (Int a = -12; a <= 12; ++a)
      for (Int b = -12; b <= 12; ++b) EXPECT_EQ(apply(f, Vec2(a, b)), o(Vec2(a, b)));
  }
}

TEST(Compose, IdentityLawAndKnownProducts) {
  const PLAut P = generator_pl(PlGenerator::P);
  EXPECT_EQ(compose(P, PLAut()), P);
  EXPECT_EQ(compose(PLAut(), P), P);
  // I^-1 o mu = P
  EXPECT_EQ(compose(inverse(generator_pl(PlGenerator::I)), generator_pl(PlGenerator::Mu)), P);
  EXPECT_EQ(power(P, 5), PLAut());
}

TEST(Inverse, KnownInverses) {
  EXPECT_EQ(inverse(PLAut()), PLAut());
  EXPECT_EQ(inverse(generator_pl(PlGenerator::P)), generator_pl(PlGenerator::L));
  const PLAut C = generator_pl(PlGenerator::C);
  EXPECT_EQ(inverse(C), compose(C, C));
}

TEST(Equals, Basics) {
  const PLAut P = generator_pl(PlGenerator::P);
  const PLAut mu = generator_pl(PlGenerator::Mu);
  EXPECT_TRUE(equals(power(P, 5), PLAut()));
  EXPECT_FALSE(equals(P, mu));
  EXPECT_NE(apply(P, Vec2(1, -1)), apply(mu, Vec2(1, -1)));
  EXPECT_TRUE(equals(P, compose(P, PLAut())));
}

TEST(Order, TorsionAndInfinite) {
  EXPECT_EQ(order(generator_pl(PlGenerator::C), 10), 3);
  EXPECT_EQ(order(generator_pl(PlGenerator::I), 10), 4);
  EXPECT_EQ(order(generator_pl(PlGenerator::P), 10), 5);
  EXPECT_EQ(order(word({PlGenerator::I, PlGenerator::Mu}), 10), 7);
  EXPECT_EQ(order(generator_pl(PlGenerator::U), 10), std::nullopt);
  EXPECT_THROW(order(PLAut(), 0), std::invalid_argument);
}

TEST(Relations, GroupSuiteExact) {
  const PLAut P = generator_pl(PlGenerator::P);
  const PLAut C = generator_pl(PlGenerator::C);
  const PLAut I = generator_pl(PlGenerator::I);
  const PLAut I2 = power(I, 2);
  EXPECT_TRUE(power(C, 3).is_identity());
  EXPECT_TRUE(power(I, 4).is_identity());
  EXPECT_EQ(compose(C, I2), compose(I2, C));
  EXPECT_EQ(compose(P, compose(C, P)), I);
  EXPECT_TRUE(power(P, 5).is_identity());
}

TEST(Relations, MutationTheoremExact) {
  const PLAut I = generator_pl(PlGenerator::I);
  const PLAut mu = generator_pl(PlGenerator::Mu);
  const PLAut U = generator_pl(PlGenerator::U);
  EXPECT_EQ(power(compose(power(I, 2), mu), 2), inverse(U));
  EXPECT_TRUE(power(compose(inverse(I), mu), 5).is_identity());
  EXPECT_TRUE(power(compose(I, mu), 7).is_identity());
}

TEST(Validation, RejectsBrokenPieces) {
  // matrices disagree on the shared ray (0,1)
  EXPECT_THROW(PLAut::from_pieces({{Primitive(1, 0), Mat2::Identity()}, {Primitive(0, 1), make_mat(1, 1, 0, 1)}}),
               std::invalid_argument);
  // image rays out of order: a fold
  EXPECT_THROW(PLAut::from_pieces({{Primitive(1, 0), Mat2::Identity()}, {Primitive(0, 1), make_mat(1, -1, 0, 1)},
                                   {Primitive(-1, 0), make_mat(1, -3, 0, 1)}, {Primitive(0, -1), make_mat(1, -2, 0, 1)}}),
               std::invalid_argument);
  EXPECT_THROW(PLAut(make_mat(2, 0, 0, 1)), std::invalid_argument);
  EXPECT_THROW(PLAut::from_pieces({}), std::invalid_argument);
}

TEST(Canonical, MergesEqualNeighbours) {
  const PLAut f = PLAut::from_pieces({{Primitive(1, 0), Mat2::Identity()},
                                      {Primitive(0, 1), Mat2::Identity()},
                                      {Primitive(-1, -1), Mat2::Identity()}});
  EXPECT_TRUE(f.is_identity());
  const PLAut P = generator_pl(PlGenerator::P);
  // same map presented with a redundant ray and rotated start
  const PLAut g = PLAut::from_pieces({{Primitive(-1, 0), make_mat(0, 1, -1, 1)},
                                      {Primitive(1, 0), make_mat(0, 1, -1, 0)},
                                      {Primitive(0, 1), make_mat(0, 1, -1, 0)}});
  EXPECT_EQ(g, P);
}

TEST(Fan, MediantSubdivision) {
  const Fan f = chain_fan();
  EXPECT_EQ(f.rays(), (std::vector<Primitive>{Primitive(1, 0), Primitive(0, 1), Primitive(-1, -1)}));
  const Fan g = f.subdivide(0);
  EXPECT_EQ(g.rays()[1], Primitive(1, 1));
  const Fan h = f.subdivide(1);
  EXPECT_EQ(h.rays()[2], Primitive(-1, 0));
  EXPECT_THROW(f.subdivide(3), std::out_of_range);
  EXPECT_THROW(Fan({Primitive(1, 0), Primitive(0, 1)}), std::invalid_argument);
}

TEST(Fan, SubdivisionKeepsUnimodularCones) {
  std::mt19937_64 rng(11);
  Fan f = chain_fan();
  for (int step = 0; step < 60; ++step) {
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    f = f.subdivide(pick(rng));
    for (std::size_t i = 0; i < f.size(); ++i)
      EXPECT_EQ(wedge(f.rays()[i].vec(), f.rays()[(i + 1) % f.size()].vec()), 1);
  }
}

// Random words of depth <= 6, checked against the composed closed-form oracles.
struct RandomWord {
  PLAut map;
  std::vector<std::pair<PlGenerator, bool>> letters;  // (generator, inverted)
};

RandomWord random_word(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<std::size_t> gen(0, kGenerators.size() - 1);
  std::bernoulli_distribution inv(0.3);
  RandomWord w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const PlGenerator g = kGenerators[gen(rng)];
    const bool inverted = inv(rng);
    const PLAut f = inverted ? inverse(generator_pl(g)) : generator_pl(g);
    w.map = compose(w.map, f);
    w.letters.emplace_back(g, inverted);
  }
  return w;
}

Vec2 oracle_word(const RandomWord& w, Vec2 v) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (!it->second) {
      v = oracle_for(it->first)(v);
    } else {
      // invert the oracle by search over the inverse generator's closed form
      switch (it->first) {
        case PlGenerator::P: v = oracle_L(v); break;
        case PlGenerator::L: v = oracle_P(v); break;
        case PlGenerator::Mu: v = Vec2(v(0) + std::min<Int>(0, v(1)), v(1)); break;
        case PlGenerator::C: v = inverse_unimodular(matrix_C()) * v; break;
        case PlGenerator::I: v = inverse_unimodular(matrix_I()) * v; break;
        case PlGenerator::U: v = inverse_unimodular(matrix_U()) * v; break;
      }
    }
  }
  return v;
}

TEST(GroupLaws, RandomWordsAgreeWithOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Int> coord(-50, 50);
  for (int t = 0; t < 100; ++t) {
    const RandomWord w = random_word(rng);
    for (int k = 0; k < 100; ++k) {
      const Vec2 v(coord(rng), coord(rng));
      ASSERT_EQ(apply(w.map, v), oracle_word(w, v));
    }
    for (const auto& p : w.map.pieces()) EXPECT_EQ(det2(p.matrix), 1);
    EXPECT_FALSE(validate_pieces(w.map.pieces()).has_value() && !w.map.is_linear());
  }
}

TEST(GroupLaws, AssociativityAndInverse) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const PLAut f = random_word(rng).map;
    const PLAut g = random_word(rng).map;
    const PLAut h = random_word(rng).map;
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    EXPECT_TRUE(compose(f, inverse(f)).is_identity());
    EXPECT_TRUE(compose(inverse(f), f).is_identity());
  }
}

}  // namespace
}  // namespace cremona
