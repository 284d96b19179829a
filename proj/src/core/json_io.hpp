#pragma once

#include <string>

#include <json.hpp>

#include "poset.hpp"

namespace posetlab {

using Json = nlohmann::ordered_json;

/// Poset wire format: {"elements": [string...], "le": [[string,string]...]}.
/// "le" may be any relation whose reflexive-transitive closure is
/// antisymmetric; the loader closes it and rejects cycles.
FinitePoset poset_from_json(const Json& j);
FinitePoset poset_from_json_text(const std::string& text);

/// The writer always emits the full reflexive-transitive relation with pairs
/// sorted lexicographically.
Json poset_to_json(const FinitePoset& x);

FinitePoset load_poset_file(const std::string& path);

}  // namespace posetlab
