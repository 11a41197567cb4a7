#pragma once

#include <string>

#include <json.hpp>

#include "mirp/rational.hpp"

namespace mirp::io {

using nlohmann::json;

// Keys sorted, doubles with 17 significant digits, non-finite doubles as null.
std::string dump(const json& j, int indent = 2);

inline json to_json(const Rational& r) { return r.get_str(); }
Rational rational_from_json(const json& j);  // "p/q", "p" or an integer

}  // namespace mirp::io
