#include "qca/rule_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qca/errors.hpp"

namespace qca {

namespace {

using nlohmann::json;

// Line number of a byte offset, for syntax diagnostics.
std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  const std::size_t end = std::min(offset, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
    }
  }
  return line;
}

[[noreturn]] void fail(std::string_view origin, const std::string& what) {
  throw ConfigError(std::string(origin) + ": " + what);
}

}  // namespace

UpdateRule parse_rule_text(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    fail(origin, "line " + std::to_string(line_of_offset(text, err.byte)) +
                     ": " + err.what());
  }
  if (!doc.is_object()) {
    fail(origin, "expected a JSON object with fields size/map[/labels]");
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "size" && key != "map" && key != "labels") {
      fail(origin, "unknown field \"" + key + "\"");
    }
  }
  if (!doc.contains("size") || !doc["size"].is_number_integer() ||
      doc["size"].get<std::int64_t>() < 1) {
    fail(origin, "size: expected a positive integer");
  }
  const auto size = doc["size"].get<std::uint64_t>();
  if (!doc.contains("map") || !doc["map"].is_array()) {
    fail(origin, "map: expected an array of state indices");
  }
  const json& map_json = doc["map"];
  if (map_json.size() != size) {
    fail(origin, "map: has " + std::to_string(map_json.size()) + " entries, expected " +
                     std::to_string(size) + " (the rule must be total)");
  }
  std::vector<State> map;
  map.reserve(size);
  for (std::size_t i = 0; i < map_json.size(); ++i) {
    const json& entry = map_json[i];
    if (!entry.is_number_integer()) {
      fail(origin, "map[" + std::to_string(i) + "]: expected an integer");
    }
    const auto value = entry.get<std::int64_t>();
    if (value < 0 || static_cast<std::uint64_t>(value) >= size) {
      fail(origin, "map[" + std::to_string(i) + "]: successor " + std::to_string(value) +
                       " is out of range for size " + std::to_string(size));
    }
    map.push_back(static_cast<State>(value));
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& labels_json = doc["labels"];
    if (!labels_json.is_array()) {
      fail(origin, "labels: expected an array of strings");
    }
    labels.reserve(labels_json.size());
    for (std::size_t i = 0; i < labels_json.size(); ++i) {
      if (!labels_json[i].is_string()) {
        fail(origin, "labels[" + std::to_string(i) + "]: expected a string");
      }
      labels.push_back(labels_json[i].get<std::string>());
    }
  }

  try {
    StateSpace space = labels.empty() ? StateSpace(size)
                                      : StateSpace(size, std::move(labels));
    return UpdateRule(std::move(space), std::move(map));
  } catch (const InputError& err) {
    fail(origin, err.what());
  }
}

UpdateRule load_rule_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open rule file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rule_text(buffer.str(), path.string());
}

std::string rule_to_text(const UpdateRule& rule) {
  json doc;
  doc["size"] = rule.size();
  doc["map"] = json::array();
  for (State successor : rule.map()) {
    doc["map"].push_back(successor);
  }
  if (rule.space().has_labels()) {
    doc["labels"] = json::array();
    for (const std::string& label : rule.space().labels()) {
      doc["labels"].push_back(label);
    }
  }
  return doc.dump(2) + "\n";
}

void write_rule_file(const std::filesystem::path& path, const UpdateRule& rule) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write rule file " + path.string());
  }
  out << rule_to_text(rule);
  if (!out) {
    throw IoError("failed while writing rule file " + path.string());
  }
}

}  // namespace qca
