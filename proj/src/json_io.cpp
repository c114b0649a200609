#include "cremona/json_io.hpp"

#include <algorithm>

namespace cremona {

namespace {

[[noreturn]] void bad(const std::string& what) { throw JsonFormatError("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

Int int_of(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<Int>();
}

const Json& array_of(const Json& j, const char* what, std::size_t size = 0) {
  if (!j.is_array() || (size && j.size() != size)) bad(std::string(what) + " must be an array" + (size ? " of size " + std::to_string(size) : ""));
  return j;
}

Json to_json_mat(const Mat2& m) { return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})}); }

Mat2 mat_from_json(const Json& j) {
  array_of(j, "matrix", 2);
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    array_of(j[r], "matrix row", 2);
    for (int c = 0; c < 2; ++c) m(r, c) = int_of(j[r][c], "matrix entry");
  }
  return m;
}

Json rational_json(const Rational& r) {
  if (denominator(r) == 1 && r >= std::numeric_limits<Int>::min() && r <= std::numeric_limits<Int>::max())
    return static_cast<Int>(numerator(r));
  return rational_to_string(r);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<Int>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  bad("coefficient must be an integer or an \"n/d\" string");
}

Json laurent_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e.first, e.second, rational_json(c)}));
  return out;
}

LaurentPoly laurent_from_json(const Json& j) {
  array_of(j, "polynomial");
  LaurentPoly p;
  for (const Json& t : j) {
    array_of(t, "term", 3);
    p.add_term({int_of(t[0], "exponent"), int_of(t[1], "exponent")}, rational_from_json(t[2]));
  }
  return p;
}

Json rational_fn_json(const RationalFn& f) { return Json{{"num", laurent_json(f.num)}, {"den", laurent_json(f.den)}}; }

RationalFn rational_fn_from_json(const Json& j) {
  try {
    return RationalFn(laurent_from_json(field(j, "num")), laurent_from_json(field(j, "den")));
  } catch (const JsonFormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

Json dyadic_json(const Dyadic& d) { return Json::array({d.num(), d.exp()}); }

Dyadic dyadic_value(const Json& j) {
  array_of(j, "dyadic", 2);
  const Int e = int_of(j[1], "log2-denominator");
  if (e < 0 || e > 62) bad("log2-denominator out of range");
  return Dyadic(int_of(j[0], "numerator"), static_cast<int>(e));
}

Json tree_json(const BinaryTree& t) {
  if (t.is_leaf()) return 0;
  return Json::array({tree_json(t.left()), tree_json(t.right())});
}

BinaryTree tree_from_json(const Json& j, int depth = 0) {
  if (depth > 200) bad("tree too deep");
  if (j.is_number_integer() && j.get<Int>() == 0) return BinaryTree();
  array_of(j, "tree node", 2);
  return BinaryTree(tree_from_json(j[0], depth + 1), tree_from_json(j[1], depth + 1));
}

const char* family_name(Family f) {
  switch (f) {
    case Family::B: return "b";
    case Family::E: return "e";
    case Family::Delta: return "delta";
    case Family::P: return "p";
    case Family::W: return "e";
    case Family::Chain: return "chain";
  }
  return "?";
}

}  // namespace

Json to_json_vec(const Vec2& v) { return Json::array({v(0), v(1)}); }

Vec2 vec_from_json(const Json& j) {
  array_of(j, "vector", 2);
  return Vec2(int_of(j[0], "coordinate"), int_of(j[1], "coordinate"));
}

Json to_json(const PLAut& f) {
  if (f.is_linear()) return Json{{"linear", to_json_mat(f.linear_matrix())}};
  Json pieces = Json::array();
  const auto& ps = f.pieces();
  const std::size_t n = ps.size();
  // clockwise: the cone from ray i+1 back to ray i carries matrix i
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    pieces.push_back(Json{{"ray", to_json_vec(ps[(i + 1) % n].ray.vec())}, {"matrix", to_json_mat(ps[i].matrix)}});
  }
  return Json{{"orientation", "clockwise"}, {"pieces", pieces}};
}

PLAut plaut_from_json(const Json& j) {
  try {
    if (j.is_object() && j.contains("linear")) {
      const Mat2 m = mat_from_json(j.at("linear"));
      if (det2(m) != 1) bad("linear matrix must have determinant 1");
      return PLAut(m);
    }
    const std::string orientation = j.is_object() && j.contains("orientation") ? j.at("orientation").get<std::string>() : "clockwise";
    if (orientation != "clockwise" && orientation != "counterclockwise") bad("orientation must be clockwise or counterclockwise");
    const Json& arr = array_of(field(j, "pieces"), "pieces");
    const std::size_t n = arr.size();
    if (n == 0) bad("empty piece list");
    std::vector<Vec2> rays;
    std::vector<Mat2> mats;
    for (const Json& p : arr) {
      rays.push_back(vec_from_json(field(p, "ray")));
      mats.push_back(mat_from_json(field(p, "matrix")));
    }
    std::vector<PlPiece> pieces;
    if (orientation == "counterclockwise") {
      for (std::size_t i = 0; i < n; ++i) pieces.push_back({Primitive(rays[i]), mats[i]});
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = n - 1 - k;
        pieces.push_back({Primitive(rays[(src + 1) % n]), mats[src]});
      }
    }
    return PLAut::from_pieces(std::move(pieces));
  } catch (const JsonFormatError&) {
    throw;
  } catch (const std::exception& e) {
    bad(e.what());
  }
}

Json to_json(const BirMap& f) { return Json{{"x", rational_fn_json(f.f1)}, {"y", rational_fn_json(f.f2)}}; }

BirMap birmap_from_json(const Json& j) { return BirMap{rational_fn_from_json(field(j, "x")), rational_fn_from_json(field(j, "y"))}; }

Json to_json(const DyadicPL& f) {
  Json pts = Json::array();
  for (const auto& [x, y] : f.breakpoints()) pts.push_back(Json::array({dyadic_json(x), dyadic_json(y)}));
  return Json{{"breakpoints", pts}};
}

DyadicPL dyadic_from_json(const Json& j) {
  std::vector<DyadicPL::Point> pts;
  for (const Json& p : array_of(field(j, "breakpoints"), "breakpoints")) {
    array_of(p, "breakpoint", 2);
    pts.emplace_back(dyadic_value(p[0]), dyadic_value(p[1]));
  }
  try {
    return DyadicPL(std::move(pts));
  } catch (const std::exception& e) {
    bad(e.what());
  }
}

Json to_json(const TreePair& t) {
  return Json{{"domain", tree_json(t.domain)}, {"range", tree_json(t.range)}, {"rotation", t.rotation}};
}

TreePair treepair_from_json(const Json& j) {
  TreePair t;
  t.domain = tree_from_json(field(j, "domain"));
  t.range = tree_from_json(field(j, "range"));
  t.rotation = static_cast<int>(int_of(field(j, "rotation"), "rotation"));
  try {
    validate(t);
  } catch (const std::exception& e) {
    bad(e.what());
  }
  return t;
}

Json to_json(const BreakFn& f) {
  Json rays = Json::array();
  for (const Primitive& r : f.rays()) rays.push_back(to_json_vec(r.vec()));
  return Json{{"rays", rays}, {"values", f.values()}};
}

BreakFn breakfn_from_json(const Json& j) {
  std::vector<Primitive> rays;
  std::vector<Int> values;
  try {
    for (const Json& r : array_of(field(j, "rays"), "rays")) rays.emplace_back(vec_from_json(r));
    for (const Json& v : array_of(field(j, "values"), "values")) values.push_back(int_of(v, "value"));
    return BreakFn(rays, values);
  } catch (const JsonFormatError&) {
    throw;
  } catch (const std::exception& e) {
    bad(e.what());
  }
}

Json to_json(const PicVec& v) {
  Json terms = Json::array();
  for (const auto& [s, c] : v.terms()) {
    Json t{{"family", family_name(s.family)}, {"arg", to_json_vec(s.arg())}};
    if (s.family == Family::E || s.family == Family::Delta) t["level"] = s.level;
    t["coef"] = c.coeffs();
    terms.push_back(std::move(t));
  }
  Json out{{"terms", terms}};
  if (!v.pl_part().is_zero()) out["pl"] = to_json(v.pl_part());
  return out;
}

PicVec picvec_from_json(const Json& j) {
  PicVec out;
  try {
    for (const Json& t : array_of(field(j, "terms"), "terms")) {
      const Json& fam = field(t, "family");
      if (!fam.is_string()) bad("family must be a string");
      const std::string f = fam.get<std::string>();
      const Vec2 a = vec_from_json(field(t, "arg"));
      const bool has_level = t.contains("level");
      const int level = has_level ? static_cast<int>(int_of(t.at("level"), "level")) : 0;
      Symbol s{};
      if (f == "b") s = sym_b(a);
      else if (f == "e") s = has_level ? sym_e(a, level) : sym_w(a);
      else if (f == "delta") s = sym_delta(a, level);
      else if (f == "p") s = sym_p(a);
      else if (f == "chain") s = sym_chain(a);
      else bad("unknown family \"" + f + "\"");
      std::vector<Int> coef;
      const Json& cj = field(t, "coef");
      if (cj.is_number_integer()) coef.push_back(cj.get<Int>());
      else
        for (const Json& c : array_of(cj, "coef")) coef.push_back(int_of(c, "coefficient"));
      out.add(s, ZqPoly(coef));
    }
    if (j.contains("pl")) out += PicVec::pl(breakfn_from_json(j.at("pl")));
  } catch (const JsonFormatError&) {
    throw;
  } catch (const std::exception& e) {
    bad(e.what());
  }
  return out;
}

}  // namespace cremona
