#pragma once

#include "cremona/json_io.hpp"
#include "cremona/words.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cremona {

struct SuiteNotFound : std::invalid_argument {
  explicit SuiteNotFound(const std::string& name) : std::invalid_argument("unknown suite: " + name) {}
};

/// $CREMONA_SUITE_DIR if set, else the suites/ directory of the source tree.
std::filesystem::path suite_dir();
std::vector<std::string> list_suites(const std::filesystem::path& dir = suite_dir());

/// A JSON list of {name, lhs, rhs, dialect?, identity_in?, companion?}; rhs is a word, "1" or "probe".
/// Every word is parsed and expanded; throws JsonFormatError or WordSyntaxError on bad data.
Suite suite_from_json(const std::string& name, const Json& j);
Suite load_suite(const std::string& name, const std::filesystem::path& dir = suite_dir());

Json to_json(const RunParams& p);
Json to_json(const SuiteReport& r);

}  // namespace cremona
