#include "cremona/suites.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace cremona {

std::filesystem::path suite_dir() {
  if (const char* env = std::getenv("CREMONA_SUITE_DIR"); env && *env) return env;
  return CREMONA_SUITE_DIR;
}

std::vector<std::string> list_suites(const std::filesystem::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string string_field(const Json& j, const char* key, const std::string& fallback = "") {
  if (!j.contains(key)) {
    if (fallback.empty()) throw JsonFormatError(std::string("relation without \"") + key + "\"");
    return fallback;
  }
  if (!j.at(key).is_string()) throw JsonFormatError(std::string("\"") + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

Suite suite_from_json(const std::string& name, const Json& j) {
  if (!j.is_array()) throw JsonFormatError("suite " + name + " must be a JSON list");
  Suite s;
  s.name = name;
  for (const Json& e : j) {
    if (!e.is_object()) throw JsonFormatError("suite entries must be objects");
    Relation r;
    r.lhs = string_field(e, "lhs");
    r.rhs = string_field(e, "rhs", "1");
    r.name = string_field(e, "name", r.lhs + " = " + r.rhs);
    const std::string d = string_field(e, "dialect", "group");
    const auto dialect = parse_dialect(d);
    if (!dialect) throw JsonFormatError("unknown dialect \"" + d + "\"");
    r.dialect = *dialect;
    if (e.contains("identity_in")) {
      if (!e.at("identity_in").is_array()) throw JsonFormatError("\"identity_in\" must be a list");
      for (const Json& b : e.at("identity_in")) {
        const auto backend = b.is_string() ? parse_backend(b.get<std::string>()) : std::nullopt;
        if (!backend) throw JsonFormatError("unknown backend in \"identity_in\"");
        r.identity_in.push_back(*backend);
      }
    }
    if (e.contains("companion")) r.companion = string_field(e, "companion");
    expand(parse_word(r.lhs), r.dialect);
    if (r.expectation() == Expectation::Equal) expand(parse_word(r.rhs), r.dialect);
    if (!r.companion.empty()) parse_word(r.companion);
    s.relations.push_back(std::move(r));
  }
  return s;
}

Suite load_suite(const std::string& name, const std::filesystem::path& dir) {
  if (name.empty() || name.find('/') != std::string::npos || name.find("..") != std::string::npos) throw SuiteNotFound(name);
  const auto path = dir / (name + ".json");
  std::ifstream in(path);
  if (!in) throw SuiteNotFound(name);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonFormatError(path.string() + ": " + e.what());
  }
  return suite_from_json(name, j);
}

Json to_json(const RunParams& p) {
  return Json{{"primes", p.primes},          {"trials", p.trials},
              {"seed", p.seed},              {"N", p.N},
              {"qprime", p.qprime ? p.qprime : default_prime(p.N)},
              {"picard_vectors", p.picard_vectors},
              {"probe_points", p.probe_points}, {"probe_primes", p.probe_primes}};
}

Json to_json(const SuiteReport& r) {
  Json rels = Json::array();
  for (const RelationResult& x : r.results) {
    Json e{{"name", x.relation.name},
           {"lhs", x.relation.lhs},
           {"rhs", x.relation.rhs},
           {"dialect", to_string(x.relation.dialect)},
           {"verdict", to_string(x.verdict)},
           {"details", x.details}};
    if (!x.relation.companion.empty()) e["companion"] = x.relation.companion;
    if (!x.witness.empty()) e["witness"] = x.witness;
    rels.push_back(std::move(e));
  }
  return Json{{"suite", r.suite},       {"backend", to_string(r.backend)}, {"params", to_json(r.params)},
              {"relations", rels},      {"failures", r.failures()},       {"all_pass", r.all_pass()}};
}

}  // namespace cremona
