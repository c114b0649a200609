#include "cremona/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace cremona {

// ---------------------------------------------------------------------------------------------
// Words

namespace {

const std::map<std::string, Sym, std::less<>>& symbol_table() {
  static const std::map<std::string, Sym, std::less<>> t = {
      {"P", Sym::P},   {"L", Sym::L},   {"C", Sym::C},           {"I", Sym::I},         {"U", Sym::U},
      {"mu", Sym::Mu}, {"R", Sym::R},   {"A", Sym::A},           {"B", Sym::B},         {"X2", Sym::X2},
      {"alpha", Sym::Alpha},            {"beta", Sym::Beta},     {"V", Sym::V}};
  return t;
}

bool same_letter(const Factor& a, const Factor& b) {
  return a.sym == b.sym && a.mono == b.mono && a.scale == b.scale;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Word parse() {
    Word w = product();
    skip();
    if (i_ < s_.size()) fail(std::string("unexpected '") + s_[i_] + "'");
    return normalize(std::move(w));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw WordSyntaxError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == '*')) ++i_;
  }

  bool at(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  Word product() {
    Word w;
    for (;;) {
      skip();
      if (i_ >= s_.size() || s_[i_] == ')' || s_[i_] == ']' || s_[i_] == ',') return w;
      w = concat(w, term());
    }
  }

  Int integer() {
    skip();
    const std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) fail("expected an integer");
    try {
      return std::stoll(std::string(s_.substr(start, i_ - start)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  Word term() {
    Word base = atom();
    if (at('^')) {
      ++i_;
      const Int e = integer();
      if (e > 1000000 || e < -1000000) fail("exponent too large");
      base = power(base, static_cast<int>(e));
    }
    return base;
  }

  Word atom() {
    skip();
    const std::size_t start = i_;
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      Word w = product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++i_;
      Word x = product();
      expect(',');
      Word y = product();
      expect(']');
      return concat(concat(inverse(x), inverse(y)), concat(x, y));
    }
    if (c == '1') {
      ++i_;
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("unexpected number");
      return {};
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    const std::string_view id = s_.substr(start, i_ - start);
    if (id == "mono") {
      expect('(');
      Mat2 m;
      for (int k = 0; k < 4; ++k) {
        if (k) expect(',');
        m(k / 2, k % 2) = integer();
      }
      expect(')');
      if (det2(m) != 1 && det2(m) != -1) {
        i_ = start;
        fail("monomial matrix must have determinant +-1");
      }
      return {Factor{Sym::Mono, 1, m, 1}};
    }
    if (id == "scale") {
      expect('(');
      skip();
      const std::size_t q0 = i_;
      while (i_ < s_.size() && s_[i_] != ')') ++i_;
      Rational r;
      try {
        r = parse_rational(std::string(s_.substr(q0, i_ - q0)));
      } catch (const std::exception&) {
        i_ = q0;
        fail("expected a rational number");
      }
      expect(')');
      if (r == 0) {
        i_ = start;
        fail("scaling by zero");
      }
      return {Factor{Sym::Scale, 1, Mat2::Identity(), r}};
    }
    if (auto it = symbol_table().find(id); it != symbol_table().end()) return {Factor{it->second, 1}};
    // juxtaposed one-letter symbols such as "PCP"
    Word split;
    for (std::size_t k = 0; k < id.size(); ++k) {
      auto it = symbol_table().find(id.substr(k, 1));
      if (it == symbol_table().end() || !std::isupper(static_cast<unsigned char>(id[k]))) {
        i_ = start;
        fail("unknown symbol '" + std::string(id) + "'");
      }
      split.push_back(Factor{it->second, 1});
    }
    return split;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return Parser(text).parse(); }

std::string symbol_name(Sym s) {
  for (const auto& [name, sym] : symbol_table())
    if (sym == s) return name;
  return s == Sym::Mono ? "mono" : "scale";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Factor& f = w[k];
    if (k) os << " ";
    if (f.sym == Sym::Mono) os << "mono(" << f.mono(0, 0) << "," << f.mono(0, 1) << "," << f.mono(1, 0) << "," << f.mono(1, 1) << ")";
    else if (f.sym == Sym::Scale) os << "scale(" << rational_to_string(f.scale) << ")";
    else os << symbol_name(f.sym);
    if (f.exp != 1) os << "^" << f.exp;
  }
  return os.str();
}

Word normalize(Word w) {
  Word out;
  for (Factor& f : w) {
    if (f.exp == 0) continue;
    if (!out.empty() && same_letter(out.back(), f)) {
      out.back().exp += f.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(std::move(f));
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Factor& f : out) f.exp = -f.exp;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return normalize(std::move(out));
}

Word power(const Word& w, int n) {
  const Word base = n < 0 ? inverse(w) : w;
  Word out;
  for (int k = 0; k < std::abs(n); ++k) out.insert(out.end(), base.begin(), base.end());
  return normalize(std::move(out));
}

std::optional<Dialect> parse_dialect(std::string_view s) {
  if (s == "group") return Dialect::Group;
  if (s == "appendix") return Dialect::Appendix;
  if (s == "cfp") return Dialect::Cfp;
  return std::nullopt;
}

std::string to_string(Dialect d) {
  switch (d) {
    case Dialect::Group: return "group";
    case Dialect::Appendix: return "appendix";
    case Dialect::Cfp: return "cfp";
  }
  return "?";
}

namespace {

bool is_native(Sym s, Dialect d) {
  if (s == Sym::Mono || s == Sym::Scale) return true;
  switch (d) {
    case Dialect::Group:
      return s == Sym::P || s == Sym::L || s == Sym::C || s == Sym::I || s == Sym::Mono || s == Sym::Scale;
    case Dialect::Appendix: return s == Sym::L || s == Sym::C;
    case Dialect::Cfp: return s == Sym::A || s == Sym::B || s == Sym::C;
  }
  return false;
}

[[noreturn]] void undefined_symbol(Sym s, Dialect d) {
  throw std::invalid_argument("symbol " + symbol_name(s) + " is not defined in the " + to_string(d) + " dialect");
}

}  // namespace

Word definition(Sym s, Dialect d) {
  auto w = [](const char* text) { return parse_word(text); };
  if (s == Sym::V) return w("C^-1 I^2");
  switch (d) {
    case Dialect::Group:
      if (s == Sym::U) return w("C I");
      if (s == Sym::Mu) return w("I P");
      break;
    case Dialect::Appendix:
      switch (s) {
        case Sym::P: return w("L^-1");
        case Sym::I: return w("L C L");
        case Sym::R: return w("L^-2 C^-1");
        case Sym::A: return w("C^-1 R^2");
        case Sym::B: return w("C R^-1");
        case Sym::X2: return w("A^-1 B A");
        case Sym::Alpha: return w("C R C");
        case Sym::Beta: return w("R^2 C^-1 R^2");
        default: break;
      }
      break;
    case Dialect::Cfp:
      switch (s) {
        case Sym::R: return w("A^-1 C B");
        case Sym::X2: return w("A^-1 B A");
        case Sym::P: return w("A^-1 R B");
        case Sym::L: return w("A P A^-1");
        case Sym::I: return w("L C L");
        case Sym::Alpha: return w("C R C");
        case Sym::Beta: return w("R^2 C^-1 R^2");
        default: break;
      }
      break;
  }
  undefined_symbol(s, d);
}

namespace {

Word expand_rec(const Word& w, Dialect d, int depth) {
  if (depth > 16) throw std::logic_error("expansion does not terminate");
  Word out;
  for (const Factor& f : w) {
    if (is_native(f.sym, d)) {
      out.push_back(f);
      continue;
    }
    const Word def = expand_rec(definition(f.sym, d), d, depth + 1);
    const Word p = power(def, f.exp);
    out.insert(out.end(), p.begin(), p.end());
  }
  return normalize(std::move(out));
}

Word substitute(const Word& w, Sym s, const Word& by) {
  Word out;
  for (const Factor& f : w) {
    if (f.sym != s) {
      out.push_back(f);
      continue;
    }
    const Word p = power(by, f.exp);
    out.insert(out.end(), p.begin(), p.end());
  }
  return normalize(std::move(out));
}

}  // namespace

Word expand(const Word& w, Dialect d) { return expand_rec(w, d, 0); }

Word expand(const Word& w, Alphabet a) {
  switch (a) {
    case Alphabet::PC: {
      Word g = expand(w, Dialect::Group);
      g = substitute(g, Sym::I, parse_word("P C P"));
      return substitute(g, Sym::L, parse_word("P^-1"));
    }
    case Alphabet::LC: return expand(w, Dialect::Appendix);
    case Alphabet::ABC: return expand(w, Dialect::Cfp);
  }
  return w;
}

std::optional<Backend> parse_backend(std::string_view s) {
  if (s == "pl") return Backend::Pl;
  if (s == "dyadic") return Backend::Dyadic;
  if (s == "tree") return Backend::Tree;
  if (s == "bir") return Backend::Bir;
  if (s == "quantum") return Backend::Quantum;
  if (s == "picard") return Backend::Picard;
  return std::nullopt;
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::Pl: return "pl";
    case Backend::Dyadic: return "dyadic";
    case Backend::Tree: return "tree";
    case Backend::Bir: return "bir";
    case Backend::Quantum: return "quantum";
    case Backend::Picard: return "picard";
  }
  return "?";
}

// ---------------------------------------------------------------------------------------------
// Evaluation

namespace {

template <class G, class Native, class Compose>
G eval_generic(const Word& w, Dialect d, const G& id, Native native, Compose comp, const char* backend, int depth = 0) {
  if (depth > 16) throw std::logic_error("expansion does not terminate");
  G acc = id;
  for (const Factor& f : w) {
    const int sgn = f.exp > 0 ? 1 : -1;
    const bool param = f.sym == Sym::Mono || f.sym == Sym::Scale;
    std::optional<G> base = native(f, sgn, param ? Dialect::Group : d);
    if (!base) {
      if (is_native(f.sym, d))
        throw UnsupportedSymbol(std::string("backend ") + backend + " does not support " + symbol_name(f.sym) +
                                    " in the " + to_string(d) + " dialect");
      Word def = definition(f.sym, d);
      if (sgn < 0) def = inverse(def);
      base = eval_generic(def, d, id, native, comp, backend, depth + 1);
    }
    for (int k = 0; k < std::abs(f.exp); ++k) acc = comp(acc, *base);
  }
  return acc;
}

const CfpGenerators& cfp() {
  static const CfpGenerators g = cfp_generators();
  return g;
}

Mat2 mat_pow_sign(const Mat2& m, int sgn) { return sgn > 0 ? m : inverse_unimodular(m); }

std::optional<PLAut> native_pl(const Factor& f, int sgn, Dialect d) {
  switch (d) {
    case Dialect::Group:
      switch (f.sym) {
        case Sym::P: return generator_pl(sgn > 0 ? PlGenerator::P : PlGenerator::L);
        case Sym::L: return generator_pl(sgn > 0 ? PlGenerator::L : PlGenerator::P);
        case Sym::C: return PLAut(mat_pow_sign(matrix_C(), sgn));
        case Sym::I: return PLAut(mat_pow_sign(matrix_I(), sgn));
        case Sym::U: return PLAut(mat_pow_sign(matrix_U(), sgn));
        case Sym::Mu: {
          const PLAut mu = generator_pl(PlGenerator::Mu);
          return sgn > 0 ? mu : inverse(mu);
        }
        case Sym::Mono: return PLAut(mat_pow_sign(f.mono, sgn));
        case Sym::Scale: return PLAut();
        default: return std::nullopt;
      }
    case Dialect::Appendix:
      if (f.sym == Sym::L) return generator_pl(sgn > 0 ? PlGenerator::L : PlGenerator::P);
      if (f.sym == Sym::C) return PLAut(mat_pow_sign(matrix_C(), -sgn));
      return std::nullopt;
    case Dialect::Cfp: {
      const DyadicPL* g = f.sym == Sym::A ? &cfp().A : f.sym == Sym::B ? &cfp().B : f.sym == Sym::C ? &cfp().C : nullptr;
      if (!g) return std::nullopt;
      return dyadic_to_plaut(sgn > 0 ? *g : inverse(*g));
    }
  }
  return std::nullopt;
}

std::optional<DyadicPL> native_dyadic(const Factor& f, int sgn, Dialect d) {
  if (d == Dialect::Cfp) {
    const DyadicPL* g = f.sym == Sym::A ? &cfp().A : f.sym == Sym::B ? &cfp().B : f.sym == Sym::C ? &cfp().C : nullptr;
    if (!g) return std::nullopt;
    return sgn > 0 ? *g : inverse(*g);
  }
  if (auto p = native_pl(f, sgn, d)) return plaut_to_dyadic(*p);
  return std::nullopt;
}

}  // namespace

PLAut eval_pl(const Word& w, Dialect d) {
  return eval_generic<PLAut>(
      w, d, PLAut(), [](const Factor& f, int sgn, Dialect d) { return native_pl(f, sgn, d); },
      [](const PLAut& a, const PLAut& b) { return compose(a, b); }, "pl");
}

DyadicPL eval_dyadic(const Word& w, Dialect d) {
  return eval_generic<DyadicPL>(
      w, d, DyadicPL(), [](const Factor& f, int sgn, Dialect d) { return native_dyadic(f, sgn, d); },
      [](const DyadicPL& a, const DyadicPL& b) { return compose(a, b); }, "dyadic");
}

TreePair eval_tree(const Word& w, Dialect d) {
  return eval_generic<TreePair>(
      w, d, identity_treepair(),
      [](const Factor& f, int sgn, Dialect d) -> std::optional<TreePair> {
        if (auto g = native_dyadic(f, sgn, d)) return dyadic_to_treepair(*g);
        return std::nullopt;
      },
      [](const TreePair& a, const TreePair& b) { return treepair_compose(a, b); }, "tree");
}

namespace {

template <class T>
std::vector<T> cat(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

BirWord eval_bir(const Word& w, Dialect d) {
  auto mono = [](const Mat2& m, int sgn) { return BirWord{bir_monomial(mat_pow_sign(m, sgn))}; };
  return eval_generic<BirWord>(
      w, d, BirWord{},
      [&](const Factor& f, int sgn, Dialect d) -> std::optional<BirWord> {
        if (d == Dialect::Group) {
          switch (f.sym) {
            case Sym::P: return BirWord{sgn > 0 ? bir_P() : bir_L()};
            case Sym::L: return BirWord{sgn > 0 ? bir_L() : bir_P()};
            case Sym::C: return mono(matrix_C(), sgn);
            case Sym::I: return mono(matrix_I(), sgn);
            case Sym::U: return mono(matrix_U(), sgn);
            case Sym::Mono: return mono(f.mono, sgn);
            case Sym::Scale: return BirWord{bir_scaling(sgn > 0 ? f.scale : Rational(1) / f.scale)};
            default: return std::nullopt;
          }
        }
        if (d == Dialect::Appendix) {
          if (f.sym == Sym::L) return BirWord{sgn > 0 ? bir_L() : bir_P()};
          if (f.sym == Sym::C) return mono(matrix_C(), -sgn);
        }
        return std::nullopt;
      },
      cat<BirLetter>, "bir");
}

QWord eval_quantum(const Word& w, Dialect d) {
  auto lin = [](const Mat2& m, int sgn) -> std::optional<QWord> {
    const Mat2 g = mat_pow_sign(m, sgn);
    if (g == matrix_C()) return QWord{QMap::C};
    if (g == inverse_unimodular(matrix_C())) return QWord{QMap::CInv};
    if (g == matrix_I()) return QWord{QMap::I};
    if (g == inverse_unimodular(matrix_I())) return QWord{QMap::IInv};
    if (g == Mat2::Identity()) return QWord{};
    throw UnsupportedSymbol("quantum backend supports only the monomial maps C and I");
  };
  return eval_generic<QWord>(
      w, d, QWord{},
      [&](const Factor& f, int sgn, Dialect d) -> std::optional<QWord> {
        if (d == Dialect::Group) {
          switch (f.sym) {
            case Sym::P: return QWord{sgn > 0 ? QMap::P : QMap::PInv};
            case Sym::L: return QWord{sgn > 0 ? QMap::PInv : QMap::P};
            case Sym::C: return QWord{sgn > 0 ? QMap::C : QMap::CInv};
            case Sym::I: return QWord{sgn > 0 ? QMap::I : QMap::IInv};
            case Sym::Mono: return lin(f.mono, sgn);
            default: return std::nullopt;
          }
        }
        if (d == Dialect::Appendix) {
          if (f.sym == Sym::L) return QWord{sgn > 0 ? QMap::PInv : QMap::P};
          if (f.sym == Sym::C) return QWord{sgn > 0 ? QMap::CInv : QMap::C};
        }
        return std::nullopt;
      },
      cat<QMap>, "quantum");
}

std::vector<PicAction> eval_picard(const Word& w, Dialect d) {
  using Acts = std::vector<PicAction>;
  auto gamma = [](const Mat2& m, int sgn) {
    const Mat2 g = mat_pow_sign(m, sgn);
    if (det2(g) != 1) throw UnsupportedSymbol("picard backend needs monomial maps of determinant 1");
    return Acts{wq_gamma(g)};
  };
  return eval_generic<Acts>(
      w, d, Acts{},
      [&](const Factor& f, int sgn, Dialect d) -> std::optional<Acts> {
        if (d == Dialect::Group) {
          switch (f.sym) {
            case Sym::P: return Acts{sgn > 0 ? wq_P() : wq_L()};
            case Sym::L: return Acts{sgn > 0 ? wq_L() : wq_P()};
            case Sym::C: return gamma(matrix_C(), sgn);
            case Sym::I: return gamma(matrix_I(), sgn);
            case Sym::U: return gamma(matrix_U(), sgn);
            case Sym::Mu: return Acts{sgn > 0 ? wq_mu() : wq_mu_inverse()};
            case Sym::Mono: return gamma(f.mono, sgn);
            default: return std::nullopt;
          }
        }
        if (d == Dialect::Appendix) {
          if (f.sym == Sym::L) return Acts{sgn > 0 ? wq_L() : wq_P()};
          if (f.sym == Sym::C) return gamma(matrix_C(), -sgn);
        }
        return std::nullopt;
      },
      cat<PicAction>, "picard");
}

PicVec apply(const std::vector<PicAction>& actions, PicVec x) {
  for (auto it = actions.rbegin(); it != actions.rend(); ++it) x = (*it)(x);
  return x;
}

// ---------------------------------------------------------------------------------------------
// Relation checking

Expectation Relation::expectation() const {
  if (rhs == "probe") return Expectation::Probe;
  if (rhs == "1") return Expectation::Identity;
  return Expectation::Equal;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::ProbeIdentity: return "probe: identity";
    case Verdict::ProbeNotIdentity: return "probe: not identity";
    case Verdict::ProbeInconsistent: return "probe: inconsistent";
    case Verdict::Unsupported: return "unsupported";
  }
  return "?";
}

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(), [](const RelationResult& r) {
    return r.verdict == Verdict::Fail || r.verdict == Verdict::Inconclusive;
  }));
}

int SuiteReport::unsupported() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [](const RelationResult& r) { return r.verdict == Verdict::Unsupported; }));
}

namespace {

std::string vec_string(const Vec2& v) { return "(" + std::to_string(v(0)) + "," + std::to_string(v(1)) + ")"; }

std::string point_string(const FpPoint& p) { return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")"; }

std::string pl_witness(const PLAut& f, const PLAut& g) {
  std::vector<Vec2> cands = {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1), Vec2(1, 1), Vec2(-1, -1)};
  for (const auto& r : f.breakpoints()) cands.push_back(r.vec());
  for (const auto& r : g.breakpoints()) cands.push_back(r.vec());
  for (const Vec2& v : cands) {
    const Vec2 a = apply(f, v), b = apply(g, v);
    if (a != b) return vec_string(v) + ": lhs -> " + vec_string(a) + ", rhs -> " + vec_string(b);
  }
  for (const Vec2& v : cands) {
    const Vec2 a = apply(f, cone_interior(v, Vec2(-v(1), v(0)))), b = apply(g, cone_interior(v, Vec2(-v(1), v(0))));
    if (a != b) return vec_string(cone_interior(v, Vec2(-v(1), v(0)))) + ": lhs -> " + vec_string(a) + ", rhs -> " + vec_string(b);
  }
  return "maps differ";
}

std::string dyadic_witness(const DyadicPL& f, const DyadicPL& g) {
  std::vector<Dyadic> xs;
  for (const auto& [x, y] : f.breakpoints()) xs.push_back(x);
  for (const auto& [x, y] : g.breakpoints()) xs.push_back(x);
  for (const Dyadic& x : xs) {
    if (f(x) != g(x)) {
      std::ostringstream os;
      os << x << ": lhs -> " << f(x) << ", rhs -> " << g(x);
      return os.str();
    }
  }
  return "slopes differ";
}

RelationResult probe_or_check(RelationResult res, bool identity, const std::string& witness, Backend b) {
  const Relation& r = res.relation;
  const bool probe = r.expectation() == Expectation::Probe;
  const bool checked = !probe || std::find(r.identity_in.begin(), r.identity_in.end(), b) != r.identity_in.end();
  if (checked) res.verdict = identity ? Verdict::Pass : Verdict::Fail;
  else res.verdict = identity ? Verdict::ProbeIdentity : Verdict::ProbeNotIdentity;
  if (!identity) res.witness = witness;
  return res;
}

}  // namespace

RelationResult check_relation(const Relation& r, Backend b, const RunParams& params) {
  RelationResult res;
  res.relation = r;
  const Word lhs = parse_word(r.lhs);
  const Word rhs = r.expectation() == Expectation::Equal ? parse_word(r.rhs) : Word{};
  const Dialect d = r.dialect;
  std::mt19937_64 rng(params.seed);
  switch (b) {
    case Backend::Pl: {
      const PLAut f = eval_pl(lhs, d), g = eval_pl(rhs, d);
      res.details = "lhs has " + std::to_string(f.pieces().size()) + " pieces";
      return probe_or_check(std::move(res), equals(f, g), equals(f, g) ? "" : pl_witness(f, g), b);
    }
    case Backend::Dyadic: {
      const DyadicPL f = eval_dyadic(lhs, d), g = eval_dyadic(rhs, d);
      res.details = "lhs has " + std::to_string(f.breakpoints().size()) + " breakpoints";
      return probe_or_check(std::move(res), f == g, f == g ? "" : dyadic_witness(f, g), b);
    }
    case Backend::Tree: {
      const TreePair f = eval_tree(lhs, d), g = eval_tree(rhs, d);
      res.details = "lhs has " + std::to_string(f.domain.leaf_count()) + " leaves";
      return probe_or_check(std::move(res), f == g, "reduced tree pairs differ", b);
    }
    case Backend::Bir: {
      const BirWord f = eval_bir(lhs, d), g = eval_bir(rhs, d);
      if (r.expectation() == Expectation::Probe) {
        const BirWord w = cat<BirLetter>(f, eval_bir(inverse(rhs), d));
        const int nprimes = static_cast<int>(std::max<std::size_t>(1, params.probe_primes.size()));
        const int per = std::max(1, (params.probe_points + nprimes - 1) / nprimes);
        const ProbeResult pr = probe_identity(w, per, params.probe_primes, rng);
        res.details = std::to_string(pr.fixed_points) + "/" + std::to_string(pr.points) + " points fixed over " +
                      std::to_string(pr.primes.size()) + " primes" + (pr.consistent() ? ", consistent" : ", inconsistent");
        if (!r.companion.empty()) res.details += "; companion word " + r.companion;
        if (pr.moved_point)
          res.witness = point_string(*pr.moved_point) + " -> " + point_string(*pr.moved_image) + " mod " + std::to_string(pr.moved_prime);
        if (!pr.consistent()) res.verdict = Verdict::ProbeInconsistent;
        else res.verdict = pr.identity() ? Verdict::ProbeIdentity : Verdict::ProbeNotIdentity;
        return res;
      }
      bool all = true, failed = false;
      double worst = -1e300;
      std::ostringstream det;
      for (u64 p : params.primes) {
        const IdentityCheck c = word_equals(f, g, params.trials, p, rng);
        det << (det.tellp() ? "; " : "") << "p=" << p << ": " << c.agreeing_trials << " agreeing, error <= 2^"
            << c.error_log2;
        worst = std::max(worst, c.error_log2);
        if (c.outcome == Outcome::Fails) {
          failed = true;
          if (c.witness && res.witness.empty()) {
            res.witness = point_string(*c.witness) + " mod " + std::to_string(p);
            if (c.lhs_value) res.witness += ": lhs -> " + point_string(*c.lhs_value);
            if (c.rhs_value) res.witness += ", rhs -> " + point_string(*c.rhs_value);
          }
        }
        all = all && c.outcome == Outcome::Holds;
      }
      res.details = det.str();
      res.verdict = failed ? Verdict::Fail : (all ? Verdict::Pass : Verdict::Inconclusive);
      return res;
    }
    case Backend::Quantum: {
      const QWord w = cat<QMap>(eval_quantum(lhs, d), eval_quantum(inverse(rhs), d));
      const QConfig cfg = make_qconfig(params.N, params.qprime ? params.qprime : default_prime(params.N), params.seed);
      const QRelationReport rep = q_relation_check(w, cfg, params.trials, r.name);
      res.details = "N=" + std::to_string(cfg.N) + " p=" + std::to_string(cfg.p) + " q=" + std::to_string(cfg.q) + ": " +
                    std::to_string(rep.identity_trials) + "/" + std::to_string(rep.trials) + " identity";
      if (!rep.witnesses.empty()) res.witness = rep.witnesses.front();
      if (rep.verdict == QVerdict::Inconclusive) {
        res.verdict = r.expectation() == Expectation::Probe ? Verdict::ProbeInconsistent : Verdict::Inconclusive;
        return res;
      }
      const std::string w0 = res.witness;
      return probe_or_check(std::move(res), rep.verdict == QVerdict::Identity, w0, b);
    }
    case Backend::Picard: {
      const auto f = eval_picard(lhs, d), g = eval_picard(rhs, d);
      int at_one = 0, generic = 0;
      std::string witness;
      for (int t = 0; t < params.picard_vectors; ++t) {
        const PicVec x = random_v_vector(rng);
        const PicVec x1 = x.at_q(1);
        const PicVec l1 = apply(f, x1), r1 = apply(g, x1);
        if (l1 == r1) ++at_one;
        else if (witness.empty()) witness = to_string(x1) + ": lhs -> " + to_string(l1) + ", rhs -> " + to_string(r1);
        generic += apply(f, x) == apply(g, x);
      }
      const int n = params.picard_vectors;
      res.details = "q=1: " + std::to_string(at_one) + "/" + std::to_string(n) + " equal; Z[q]: " + std::to_string(generic) +
                    "/" + std::to_string(n) + " equal";
      return probe_or_check(std::move(res), at_one == n, witness, b);
    }
  }
  return res;
}

SuiteReport check_suite(const Suite& suite, Backend b, const RunParams& params) {
  SuiteReport rep;
  rep.suite = suite.name;
  rep.backend = b;
  rep.params = params;
  for (const Relation& r : suite.relations) {
    try {
      rep.results.push_back(check_relation(r, b, params));
    } catch (const UnsupportedSymbol& e) {
      RelationResult res;
      res.relation = r;
      res.verdict = Verdict::Unsupported;
      res.details = e.what();
      rep.results.push_back(std::move(res));
    } catch (const std::exception& e) {
      RelationResult res;
      res.relation = r;
      res.verdict = Verdict::Inconclusive;
      res.details = std::string("error: ") + e.what();
      rep.results.push_back(std::move(res));
    }
  }
  return rep;
}

}  // namespace cremona
