// Per-command configuration: a JSON document merged with command-line flags.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spincorr/io.hpp"

namespace spincorr::cli {

using io::json;

enum class Kind { number, integer, text, triple, numbers, flag };

struct Key {
  std::string name;
  Kind kind;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<Key> keys;
};

/// Validated configuration for one run. Absent keys fall back to the caller's default.
class Config {
 public:
  Config(std::string command, json doc) : command_(std::move(command)), doc_(std::move(doc)) {}

  bool has(const std::string& key) const { return doc_.contains(key); }
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::optional<CorrelationTriple> triple(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  bool flag(const std::string& key) const;

  const json& doc() const { return doc_; }
  /// Hash over the command name and the merged keys.
  std::string hash() const;

 private:
  std::string command_;
  json doc_;
};

/// Converts a flag string into the JSON value of the key's kind.
json parse_flag_value(const Key& key, const std::string& raw);

/// file_doc (may be null) overlaid with flags. Unknown or mistyped keys raise ValidationError.
Config merge_config(const CommandSpec& spec, const json& file_doc, const std::map<std::string, std::string>& flags);

json load_json_file(const std::string& path);

}  // namespace spincorr::cli
