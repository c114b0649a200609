#include "cremona/json_io.hpp"
#include "cremona/words.hpp"

#include <gtest/gtest.h>

namespace cremona {
namespace {

std::vector<Word> sample_words() {
  std::vector<Word> out;
  for (const char* s : {"1", "P", "C", "I", "U", "mu", "P C", "(I^2 mu)^2", "P C^-1 I^2 mu", "mu^3 L^2"}) out.push_back(parse_word(s));
  return out;
}

TEST(JsonIo, PlAutRoundTrip) {
  for (const Word& w : sample_words()) {
    const PLAut f = eval_pl(w);
    const Json j = to_json(f);
    EXPECT_EQ(plaut_from_json(j), f) << j.dump();
    EXPECT_EQ(plaut_from_json(Json::parse(j.dump())), f);
  }
  EXPECT_EQ(to_json(PLAut(matrix_C())).dump(), R"({"linear":[[-1,1],[-1,0]]})");
}

TEST(JsonIo, PlAutClockwiseForm) {
  // P = (b, min(0,b) - a): matrices (0,1;-1,0) on y >= 0 and (0,1;-1,1) on y <= 0
  const Json j = to_json(generator_pl(PlGenerator::P));
  EXPECT_EQ(j["orientation"], "clockwise");
  ASSERT_EQ(j["pieces"].size(), 2u);
  for (const Json& p : j["pieces"]) {
    const Vec2 ray = vec_from_json(p["ray"]);
    EXPECT_EQ(ray(1), 0);
    // the clockwise cone starting at (1,0) is the lower half-plane
    if (ray(0) == 1) EXPECT_EQ(p["matrix"], Json::parse("[[0,1],[-1,1]]"));
    else EXPECT_EQ(p["matrix"], Json::parse("[[0,1],[-1,0]]"));
  }
  Json ccw = j;
  ccw["orientation"] = "counterclockwise";
  EXPECT_NE(plaut_from_json(ccw), generator_pl(PlGenerator::P));
}

TEST(JsonIo, PlAutErrors) {
  EXPECT_THROW(plaut_from_json(Json::parse("{}")), JsonFormatError);
  EXPECT_THROW(plaut_from_json(Json::parse(R"({"linear":[[1,1],[1,1]]})")), JsonFormatError);
  EXPECT_THROW(plaut_from_json(Json::parse(R"({"pieces":[]})")), JsonFormatError);
  EXPECT_THROW(plaut_from_json(Json::parse(R"({"pieces":[{"ray":[1,0],"matrix":[[2,0],[0,1]]}]})")), JsonFormatError);
  EXPECT_THROW(plaut_from_json(Json::parse(R"({"linear":[[1,0],[0,"x"]]})")), JsonFormatError);
}

TEST(JsonIo, DyadicAndTreeRoundTrip) {
  for (const Word& w : sample_words()) {
    const DyadicPL d = eval_dyadic(w);
    EXPECT_EQ(dyadic_from_json(Json::parse(to_json(d).dump())), d);
    const TreePair t = eval_tree(w);
    EXPECT_EQ(treepair_from_json(Json::parse(to_json(t).dump())), t);
  }
  EXPECT_EQ(to_json(identity_treepair()).dump(), R"({"domain":0,"range":0,"rotation":0})");
  EXPECT_EQ(to_json(DyadicPL()).dump(), R"({"breakpoints":[[[0,0],[0,0]]]})");
  EXPECT_THROW(dyadic_from_json(Json::parse(R"({"breakpoints":[[[2,1],[0,0]]]})")), JsonFormatError);
  EXPECT_THROW(treepair_from_json(Json::parse(R"({"domain":[0,0],"range":0,"rotation":0})")), JsonFormatError);
  EXPECT_THROW(treepair_from_json(Json::parse(R"({"domain":[0,1],"range":[0,0],"rotation":0})")), JsonFormatError);
}

TEST(JsonIo, BirMapRoundTrip) {
  for (const char* s : {"P", "C", "P C", "scale(3/4) P", "I P^2"}) {
    const BirMap f = compose_word_bir(eval_bir(parse_word(s)));
    const BirMap g = birmap_from_json(Json::parse(to_json(f).dump()));
    EXPECT_EQ(g.f1.num, f.f1.num);
    EXPECT_EQ(g.f1.den, f.f1.den);
    EXPECT_EQ(g.f2.num, f.f2.num);
    EXPECT_EQ(g.f2.den, f.f2.den);
  }
  const Json p = to_json(generator_bir(bir_P()));
  // P = (y, (1+y)/x)
  EXPECT_EQ(p["x"]["num"], Json::parse("[[0,1,1]]"));
  EXPECT_EQ(p["y"]["den"], Json::parse("[[1,0,1]]"));
  EXPECT_EQ(to_json(generator_bir(bir_scaling(Rational(1, 2))))["x"]["num"], Json::parse(R"([[1,0,"1/2"]])"));
  EXPECT_THROW(birmap_from_json(Json::parse(R"({"x":{"num":[],"den":[]},"y":{"num":[],"den":[[0,0,1]]}})")), JsonFormatError);
}

TEST(JsonIo, PicVecAndBreakFnRoundTrip) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const BreakFn f = random_breakfn(rng);
    EXPECT_EQ(breakfn_from_json(Json::parse(to_json(f).dump())), f);
    PicVec v = t % 2 ? random_v_vector(rng, 6, 2) : random_w_vector(rng, 6, 2);
    v.add(sym_e(Vec2(1, 2), 3), ZqPoly(std::vector<Int>{1, -1}));
    v.add(sym_delta(Vec2(-1, 1), 1), 4);
    v.add(sym_chain(Vec2(0, 1)), 2);
    if (t % 3 == 0) v += PicVec::pl(f);
    EXPECT_EQ(picvec_from_json(Json::parse(to_json(v).dump())), v);
  }
  const Json j = Json::parse(R"({"terms":[{"family":"e","arg":[1,-1],"coef":[0,1]},{"family":"e","arg":[1,0],"level":2,"coef":[3]}]})");
  const PicVec v = picvec_from_json(j);
  EXPECT_EQ(v.coefficient(sym_w(Vec2(1, -1))), ZqPoly::q());
  EXPECT_EQ(v.coefficient(sym_e(Vec2(1, 0), 2)), ZqPoly(3));
  EXPECT_THROW(picvec_from_json(Json::parse(R"({"terms":[{"family":"x","arg":[1,0],"coef":[1]}]})")), JsonFormatError);
  EXPECT_THROW(picvec_from_json(Json::parse(R"({"terms":[{"family":"delta","arg":[1,0],"coef":[1]}]})")), JsonFormatError);
  EXPECT_THROW(breakfn_from_json(Json::parse(R"({"rays":[[1,0],[0,1]],"values":[1]})")), JsonFormatError);
}

}  // namespace
}  // namespace cremona
