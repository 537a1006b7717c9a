#pragma once

#include <istream>
#include <string>

#include <json.hpp>

namespace vfc {

/// Parses the TOML subset used by experiment config files into a JSON tree
/// equivalent to the JSON loader's output: [table] and [a.b] headers,
/// key = value pairs, strings, integers, floats, booleans, flat arrays, and
/// '#' comments. Nothing fancier (no inline tables, no multiline strings,
/// no datetimes).
nlohmann::json parse_toml(std::istream& in, const std::string& origin);

}  // namespace vfc
