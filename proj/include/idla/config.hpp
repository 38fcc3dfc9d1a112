#pragma once

#include <string>

#include <json.hpp>

namespace idla {

// Parses the TOML subset used for experiment configs into a JSON object:
// [table] and [[array-of-tables]] headers, bare keys, strings, integers,
// floats, booleans and (possibly multi-line, nested) arrays. Anything else,
// including duplicate keys, is a parse error.
nlohmann::json parse_toml(const std::string& text);
nlohmann::json load_toml_file(const std::string& path);

// Git-style blob hash: SHA-1 of "blob <size>\0" followed by the bytes, hex encoded.
std::string git_blob_hash(const std::string& bytes);

}  // namespace idla
