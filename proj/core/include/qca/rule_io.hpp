#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qca/automaton.hpp"

namespace qca {

// Rule files are JSON documents with the fields
//   size   : positive integer
//   map    : array of exactly `size` integers, each in [0, size)
//   labels : optional array of `size` unique strings
// Anything else is rejected. Semantic errors name the offending field
// (e.g. "map[3]"), syntax errors carry the line number.

/// Parse rule text. `origin` is used in error messages. Throws ConfigError.
UpdateRule parse_rule_text(std::string_view text, std::string_view origin = "<string>");

/// Load a rule file from disk. Throws IoError / ConfigError.
UpdateRule load_rule_file(const std::filesystem::path& path);

/// Serialize a rule in the file format above (stable key order, trailing newline).
std::string rule_to_text(const UpdateRule& rule);

/// Write a rule file. Throws IoError.
void write_rule_file(const std::filesystem::path& path, const UpdateRule& rule);

}  // namespace qca
