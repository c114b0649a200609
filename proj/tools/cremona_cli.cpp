#include "cremona/json_io.hpp"
#include "cremona/suites.hpp"
#include "cremona/words.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace cremona;

namespace {

constexpr int kTropMaxLength = 8;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string backend = "pl";
  u64 prime = 0;
  int trials = 20;
  std::uint64_t seed = 1;
  int N = 5;
  bool json = false;
};

Backend backend_of(const std::string& s) {
  const auto b = parse_backend(s);
  if (!b) throw UsageError("unknown backend: " + s + " (pl, dyadic, tree, bir, quantum, picard)");
  return *b;
}

Dialect dialect_of(const std::string& s) {
  const auto d = parse_dialect(s);
  if (!d) throw UsageError("unknown dialect: " + s + " (group, appendix, cfp)");
  return *d;
}

RunParams params_of(const Globals& g) {
  RunParams p;
  p.trials = g.trials;
  p.seed = g.seed;
  p.N = g.N;
  if (g.trials < 1) throw UsageError("--trials must be positive");
  if (g.prime) {
    if (g.prime <= (u64{1} << 61) || !is_prime_u64(g.prime)) throw UsageError("--prime must be a prime > 2^61");
    p.primes = {g.prime};
  }
  return p;
}

/// Inline JSON, "@path", or "-" for stdin.
Json read_json(const std::string& arg) {
  std::string text = arg;
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read " + arg.substr(1));
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

Vec2 parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected \"a,b\", got \"" + s + "\"");
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const Vec2 v(std::stoll(a, &n1), std::stoll(b, &n2));
    if (n1 != a.size() || n2 != b.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("expected two integers \"a,b\", got \"" + s + "\"");
  }
}

std::pair<Rational, Rational> parse_rational_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected \"x,y\", got \"" + s + "\"");
  try {
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected two rationals \"x,y\", got \"" + s + "\"");
  }
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------------------------

int cmd_relations(const Globals& g, const std::string& suite_name) {
  const Backend b = backend_of(g.backend);
  const RunParams params = params_of(g);
  const Suite suite = load_suite(suite_name);
  const SuiteReport rep = check_suite(suite, b, params);
  if (g.json) {
    print(to_json(rep));
  } else {
    std::cout << "suite " << rep.suite << ", backend " << to_string(b) << ", seed " << params.seed << "\n";
    for (const RelationResult& r : rep.results) {
      std::cout << "  " << to_string(r.verdict) << "  " << r.relation.name;
      if (!r.details.empty()) std::cout << "  [" << r.details << "]";
      std::cout << "\n";
      if (!r.witness.empty()) std::cout << "    witness: " << r.witness << "\n";
    }
    std::cout << rep.results.size() << " relations, " << rep.failures() << " failed, " << rep.unsupported()
              << " unsupported\n";
  }
  if (rep.unsupported()) return 2;
  return rep.failures() ? 1 : 0;
}

int cmd_equal(const Globals& g, const std::string& lhs, const std::string& rhs, const std::string& dialect) {
  const Backend b = backend_of(g.backend);
  Relation r{lhs + " = " + rhs, lhs, rhs == "probe" ? "1" : rhs, dialect_of(dialect)};
  const RelationResult res = check_relation(r, b, params_of(g));
  const std::string verdict = res.verdict == Verdict::Pass ? "equal" : res.verdict == Verdict::Fail ? "not equal" : "inconclusive";
  if (g.json) {
    Json j{{"lhs", lhs}, {"rhs", rhs}, {"backend", to_string(b)}, {"verdict", verdict}, {"details", res.details}};
    if (!res.witness.empty()) j["witness"] = res.witness;
    print(j);
  } else {
    std::cout << verdict << "\n";
    if (!res.details.empty()) std::cout << "  " << res.details << "\n";
    if (!res.witness.empty()) std::cout << "  witness: " << res.witness << "\n";
  }
  return res.verdict == Verdict::Pass ? 0 : 1;
}

Json rational_pair_json(const Rational& x, const Rational& y) {
  return Json::array({rational_to_string(x), rational_to_string(y)});
}

std::optional<Rational> eval_exact(const LaurentPoly& p, const Rational& x, const Rational& y) {
  Rational out = 0;
  for (const auto& [e, c] : p.terms()) {
    if ((e.first < 0 && x == 0) || (e.second < 0 && y == 0)) return std::nullopt;
    Rational t = c;
    for (Int k = 0; k < std::abs(e.first); ++k) t = e.first > 0 ? Rational(t * x) : Rational(t / x);
    for (Int k = 0; k < std::abs(e.second); ++k) t = e.second > 0 ? Rational(t * y) : Rational(t / y);
    out += t;
  }
  return out;
}

std::optional<std::pair<Rational, Rational>> eval_exact(const BirWord& w, std::pair<Rational, Rational> pt) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const BirMap m = generator_bir(*it);
    const auto n1 = eval_exact(m.f1.num, pt.first, pt.second), d1 = eval_exact(m.f1.den, pt.first, pt.second);
    const auto n2 = eval_exact(m.f2.num, pt.first, pt.second), d2 = eval_exact(m.f2.den, pt.first, pt.second);
    if (!n1 || !d1 || !n2 || !d2 || *d1 == 0 || *d2 == 0) return std::nullopt;
    pt = {*n1 / *d1, *n2 / *d2};
  }
  return pt;
}

std::string matrix_string(const FpMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ";" : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

Json qpair_json(const QPair& p) {
  if (p.X.rows() == 1) return Json::array({p.X(0, 0), p.Y(0, 0)});
  return Json{{"X", matrix_string(p.X)}, {"Y", matrix_string(p.Y)}};
}

QConfig qconfig_of(const Globals& g, u64 p) {
  try {
    return make_qconfig(g.N, p ? p : default_prime(g.N), g.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_eval(const Globals& g, const std::string& word, const std::string& dialect, const std::string& point,
             const std::string& vector, u64 qp) {
  const Backend b = backend_of(g.backend);
  const Word w = parse_word(word);
  const Dialect d = dialect_of(dialect);
  Json out{{"word", to_string(w)}, {"backend", to_string(b)}};
  switch (b) {
    case Backend::Pl:
      if (!point.empty()) {
        const Vec2 v = parse_pair(point);
        out["point"] = to_json_vec(v);
        out["image"] = to_json_vec(apply(eval_pl(w, d), v));
      } else {
        out["value"] = to_json(eval_pl(w, d));
      }
      break;
    case Backend::Dyadic: out["value"] = to_json(eval_dyadic(w, d)); break;
    case Backend::Tree: out["value"] = to_json(eval_tree(w, d)); break;
    case Backend::Bir: {
      const BirWord bw = eval_bir(w, d);
      if (!point.empty()) {
        const auto pt = parse_rational_pair(point);
        const auto img = eval_exact(bw, pt);
        out["point"] = rational_pair_json(pt.first, pt.second);
        if (!img) {
          out["image"] = nullptr;
          out["undefined"] = true;
        } else {
          out["image"] = rational_pair_json(img->first, img->second);
        }
      } else {
        if (static_cast<int>(bw.size()) > kTropMaxLength)
          throw UsageError("symbolic composition is capped at " + std::to_string(kTropMaxLength) +
                           " letters; pass --point to evaluate at a point");
        out["value"] = to_json(compose_word_bir(bw));
      }
      break;
    }
    case Backend::Quantum: {
      const QConfig cfg = qconfig_of(g, qp);
      const auto pt = parse_pair(point.empty() ? "1,1" : point);
      if (pt(0) <= 0 || pt(1) <= 0) throw UsageError("quantum --point takes positive scalars");
      const QPair in = clock_shift(cfg, static_cast<u64>(pt(0)), static_cast<u64>(pt(1)));
      out["N"] = cfg.N;
      out["p"] = cfg.p;
      out["q"] = cfg.q;
      out["point"] = qpair_json(in);
      try {
        out["image"] = qpair_json(q_apply(eval_quantum(w, d), in, cfg));
      } catch (const SingularSubstitution&) {
        out["image"] = nullptr;
        out["undefined"] = true;
      }
      break;
    }
    case Backend::Picard: {
      if (vector.empty()) throw UsageError("picard evaluation needs --vector");
      const PicVec x = picvec_from_json(read_json(vector));
      out["vector"] = to_json(x);
      out["image"] = to_json(cremona::apply(eval_picard(w, d), x));
      break;
    }
  }
  print(out);
  return 0;
}

int cmd_trop(const std::string& word, const std::string& dialect) {
  const BirWord bw = eval_bir(parse_word(word), dialect_of(dialect));
  if (static_cast<int>(bw.size()) > kTropMaxLength)
    throw UsageError("word has " + std::to_string(bw.size()) + " letters after expansion; trop composes symbolically up to " +
                     std::to_string(kTropMaxLength) + ". Hint: the PL value of a longer word is `eval --backend pl --word ...`");
  print(to_json(tropicalize(compose_word_bir(bw))));
  return 0;
}

int cmd_convert(const std::string& from, const std::string& to, const std::string& input) {
  const Json in = read_json(input);
  DyadicPL d;
  if (from == "pl") d = plaut_to_dyadic(plaut_from_json(in));
  else if (from == "dyadic") d = dyadic_from_json(in);
  else if (from == "tree") d = treepair_to_dyadic(treepair_from_json(in));
  else throw UsageError("--from must be pl, dyadic or tree");
  if (to == "pl") print(to_json(dyadic_to_plaut(d)));
  else if (to == "dyadic") print(to_json(d));
  else if (to == "tree") print(to_json(dyadic_to_treepair(d)));
  else throw UsageError("--to must be pl, dyadic or tree");
  return 0;
}

int cmd_mutate(const std::string& basis, const std::string& at, const std::string& vector, bool inverse,
               const std::string& rule) {
  const Vec2 a = parse_pair(at);
  if (a == Vec2(0, 0) || !is_primitive(a)) throw UsageError("--at must be a primitive vector");
  const Primitive v(a);
  const PicVec x = picvec_from_json(read_json(vector));
  WqRule r = WqRule::Canonical;
  if (rule == "printed") r = WqRule::AsPrinted;
  else if (rule != "canonical") throw UsageError("--rule must be canonical or printed");
  PicVec y;
  if (basis == "wq") {
    if (inverse) {
      if (v != Primitive(1, 0)) throw UsageError("--inverse is available at 1,0 only");
      y = mu_Wq_inverse(x);
    } else {
      y = mu_Wq_action(x, v, r);
    }
  } else if (basis == "p" || basis == "be") {
    if (inverse) throw UsageError("--inverse is available for --basis wq only");
    y = basis == "p" ? mu_p_action(x, v) : mu_be_action(x, v);
  } else {
    throw UsageError("--basis must be wq, p or be");
  }
  print(to_json(y));
  return 0;
}

int cmd_quantum(const Globals& g, const std::string& word, u64 p) {
  const QConfig cfg = qconfig_of(g, p);
  if (g.trials < 1) throw UsageError("--trials must be positive");
  const Word w = parse_word(word);
  const QRelationReport rep = q_relation_check(eval_quantum(w), cfg, g.trials, to_string(w));
  const Json j{{"word", rep.word},   {"N", rep.N},
               {"p", rep.p},         {"q", cfg.q},
               {"seed", cfg.seed},   {"trials", rep.trials},
               {"identity_trials", rep.identity_trials},
               {"singular_samples", rep.singular_samples},
               {"verdict", to_string(rep.verdict)},
               {"witnesses", rep.witnesses}};
  print(j);
  return rep.verdict == QVerdict::Identity ? 0 : 1;
}

int cmd_orbit(const Globals& g, const std::string& word, const std::string& dialect, const std::string& point, int steps,
              u64 qp) {
  const Backend b = backend_of(g.backend);
  const Word w = parse_word(word);
  const Dialect d = dialect_of(dialect);
  if (steps < 1) throw UsageError("--steps must be positive");
  Json orbit = Json::array();
  Json start;
  std::optional<int> period;
  switch (b) {
    case Backend::Pl: {
      const PLAut f = eval_pl(w, d);
      const Vec2 v0 = parse_pair(point);
      start = to_json_vec(v0);
      Vec2 v = v0;
      for (int k = 1; k <= steps && !period; ++k) {
        v = apply(f, v);
        orbit.push_back(to_json_vec(v));
        if (v == v0) period = k;
      }
      break;
    }
    case Backend::Bir: {
      const BirWord bw = eval_bir(w, d);
      const auto p0 = parse_rational_pair(point);
      start = rational_pair_json(p0.first, p0.second);
      auto pt = p0;
      for (int k = 1; k <= steps && !period; ++k) {
        const auto img = eval_exact(bw, pt);
        if (!img) {
          orbit.push_back(nullptr);
          break;
        }
        pt = *img;
        orbit.push_back(rational_pair_json(pt.first, pt.second));
        if (pt == p0) period = k;
      }
      break;
    }
    case Backend::Quantum: {
      const QConfig cfg = qconfig_of(g, qp);
      const QWord qw = eval_quantum(w, d);
      const Vec2 s = parse_pair(point);
      if (s(0) <= 0 || s(1) <= 0) throw UsageError("quantum --point takes positive scalars");
      const QPair q0 = clock_shift(cfg, static_cast<u64>(s(0)), static_cast<u64>(s(1)));
      start = qpair_json(q0);
      QPair cur = q0;
      for (int k = 1; k <= steps && !period; ++k) {
        try {
          cur = q_apply(qw, cur, cfg);
        } catch (const SingularSubstitution&) {
          orbit.push_back(nullptr);
          break;
        }
        orbit.push_back(qpair_json(cur));
        if (cur == q0) period = k;
      }
      break;
    }
    default: throw UsageError("orbit supports the pl, bir and quantum backends");
  }
  if (g.json) {
    print(Json{{"word", to_string(w)}, {"backend", to_string(b)}, {"start", start}, {"orbit", orbit},
               {"period", period ? Json(*period) : Json(nullptr)}});
  } else {
    std::cout << start.dump();
    for (const Json& x : orbit) std::cout << " -> " << x.dump();
    std::cout << "\n" << (period ? "period " + std::to_string(*period) : "no return within " + std::to_string(steps) + " steps") << "\n";
  }
  return 0;
}

void report_error(const std::string& kind, const std::string& msg) {
  std::cerr << Json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-linear, birational and Thompson-group models of the Cremona group"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--backend", g.backend, "pl, dyadic, tree, bir, quantum or picard");
  app.add_option("--prime", g.prime, "prime > 2^61 for the bir backend (default: two built-in primes)");
  app.add_option("--trials", g.trials, "random trials per check");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--N", g.N, "quantum order (q of order N)");
  app.add_flag("--json", g.json, "machine-readable output");

  std::string suite, lhs, rhs = "1", word, dialect = "group", point, vector, from, to, input, basis = "wq", at, rule = "canonical";
  u64 qprime = 0;
  int steps = 20;
  bool inverse = false;
  std::function<int()> run;

  auto* relations = app.add_subcommand("relations", "check a relation suite");
  relations->add_option("--suite", suite, "suite name (a JSON file in the suite directory)")->required();
  relations->callback([&] { run = [&] { return cmd_relations(g, suite); }; });

  auto* equal = app.add_subcommand("equal", "compare two words");
  equal->add_option("--lhs", lhs)->required();
  equal->add_option("--rhs", rhs);
  equal->add_option("--dialect", dialect, "group, appendix or cfp");
  equal->callback([&] { run = [&] { return cmd_equal(g, lhs, rhs, dialect); }; });

  auto* eval = app.add_subcommand("eval", "evaluate a word in a backend");
  eval->add_option("--word", word)->required();
  eval->add_option("--dialect", dialect);
  eval->add_option("--point", point, "pl: a,b; bir: rational x,y; quantum: clock/shift scalars");
  eval->add_option("--vector", vector, "picard: PicVec JSON, @file or -");
  eval->add_option("--p", qprime, "quantum prime = 1 mod N");
  eval->callback([&] { run = [&] { return cmd_eval(g, word, dialect, point, vector, qprime); }; });

  auto* trop = app.add_subcommand("trop", "tropicalize a short word");
  trop->add_option("--word", word)->required();
  trop->add_option("--dialect", dialect);
  trop->callback([&] { run = [&] { return cmd_trop(word, dialect); }; });

  auto* convert = app.add_subcommand("convert", "convert between the pl, dyadic and tree models");
  convert->add_option("--from", from)->required();
  convert->add_option("--to", to)->required();
  convert->add_option("--input", input, "JSON, @file or -")->required();
  convert->callback([&] { run = [&] { return cmd_convert(from, to, input); }; });

  auto* mutate = app.add_subcommand("mutate", "apply a mutation to a Picard vector");
  mutate->add_option("--basis", basis, "wq, p or be");
  mutate->add_option("--at", at, "primitive vector a,b")->required();
  mutate->add_option("--vector", vector, "PicVec JSON, @file or -")->required();
  mutate->add_option("--rule", rule, "canonical or printed (W[q] only)");
  mutate->add_flag("--inverse", inverse, "inverse mutation (W[q] at 1,0)");
  mutate->callback([&] { run = [&] { return cmd_mutate(basis, at, vector, inverse, rule); }; });

  auto* quantum = app.add_subcommand("quantum", "check a word in the quantum torus at a root of unity");
  quantum->add_option("--word", word)->required();
  quantum->add_option("--p", qprime, "prime = 1 mod N (default: smallest such)");
  quantum->callback([&] { run = [&] { return cmd_quantum(g, word, qprime); }; });

  auto* orbit = app.add_subcommand("orbit", "iterate a word on a point");
  orbit->add_option("--word", word)->required();
  orbit->add_option("--dialect", dialect);
  orbit->add_option("--point", point)->required();
  orbit->add_option("--steps", steps);
  orbit->add_option("--p", qprime, "quantum prime = 1 mod N");
  orbit->callback([&] { run = [&] { return cmd_orbit(g, word, dialect, point, steps, qprime); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const SuiteNotFound& e) {
    report_error("usage", e.what());
  } catch (const UsageError& e) {
    report_error("usage", e.what());
  } catch (const WordSyntaxError& e) {
    report_error("syntax", e.what());
  } catch (const JsonFormatError& e) {
    report_error("input", e.what());
  } catch (const UnsupportedSymbol& e) {
    report_error("unsupported", e.what());
  } catch (const std::invalid_argument& e) {
    report_error("usage", e.what());
  } catch (const std::exception& e) {
    report_error("runtime", e.what());
    return 1;
  }
  return 2;
}
