#pragma once

#include "cremona/birational.hpp"
#include "cremona/picard.hpp"
#include "cremona/pl_aut.hpp"
#include "cremona/thompson.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace cremona {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field.
struct JsonFormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// {"pieces":[{"ray":[a,b],"matrix":[[..],[..]]},...], "orientation":"clockwise"} or {"linear":[[..],[..]]}.
/// Pieces are listed clockwise; each covers the clockwise cone from its ray to the next one.
Json to_json(const PLAut& f);
PLAut plaut_from_json(const Json& j);

/// {"x":{"num":[[i,j,c],...],"den":[...]}, "y":{...}}; non-integral coefficients as "n/d" strings.
Json to_json(const BirMap& f);
BirMap birmap_from_json(const Json& j);

/// {"breakpoints":[[[px,qx],[py,qy]],...]} with value p / 2^q.
Json to_json(const DyadicPL& f);
DyadicPL dyadic_from_json(const Json& j);

/// {"domain": tree, "range": tree, "rotation": k}; a leaf is 0, a caret is [left, right].
Json to_json(const TreePair& t);
TreePair treepair_from_json(const Json& j);

/// {"rays":[[a,b],...],"values":[...]}.
Json to_json(const BreakFn& f);
BreakFn breakfn_from_json(const Json& j);

/// {"terms":[{"family":..., "arg":[x,y], "level":k, "coef":[c0,c1,...]}], "pl":{breakfn}}.
/// Families b, e (with level), delta, p, chain; "e" without a level is the W basis vector e_(x,y).
Json to_json(const PicVec& v);
PicVec picvec_from_json(const Json& j);

Vec2 vec_from_json(const Json& j);
Json to_json_vec(const Vec2& v);

}  // namespace cremona
