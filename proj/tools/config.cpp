#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace spincorr::cli {

namespace {

double parse_number(const std::string& key, std::string_view raw) {
  double v = 0.0;
  const auto* end = raw.data() + raw.size();
  const auto res = std::from_chars(raw.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("--" + key + ": '" + std::string(raw) + "' is not a number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
  if (out.empty()) throw ValidationError("--" + key + ": empty list");
  return out;
}

void check_kind(const Key& key, const json& v) {
  const auto fail = [&](const char* expected) {
    throw ValidationError("config key '" + key.name + "' must be " + expected);
  };
  switch (key.kind) {
    case Kind::number:
      if (!v.is_number()) fail("a number");
      break;
    case Kind::integer:
      if (!v.is_number_integer()) fail("an integer");
      break;
    case Kind::text:
      if (!v.is_string()) fail("a string");
      break;
    case Kind::flag:
      if (!v.is_boolean()) fail("a boolean");
      break;
    case Kind::triple:
    case Kind::numbers:
      if (!v.is_array() || v.empty()) fail("an array of numbers");
      for (const auto& x : v) {
        if (!x.is_number()) fail("an array of numbers");
      }
      if (key.kind == Kind::triple && v.size() != 3) fail("an array of three numbers");
      break;
  }
}

}  // namespace

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? doc_.at(key).get<double>() : fallback;
}

int Config::integer(const std::string& key, int fallback) const {
  return has(key) ? doc_.at(key).get<int>() : fallback;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? doc_.at(key).get<std::string>() : fallback;
}

std::optional<CorrelationTriple> Config::triple(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const auto& v = doc_.at(key);
  return CorrelationTriple{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::vector<double> Config::numbers(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? doc_.at(key).get<std::vector<double>>() : fallback;
}

bool Config::flag(const std::string& key) const { return has(key) && doc_.at(key).get<bool>(); }

std::string Config::hash() const { return io::config_hash(json{{"command", command_}, {"config", doc_}}); }

json parse_flag_value(const Key& key, const std::string& raw) {
  switch (key.kind) {
    case Kind::number:
      return parse_number(key.name, raw);
    case Kind::integer: {
      int v = 0;
      const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
        throw ValidationError("--" + key.name + ": '" + raw + "' is not an integer");
      }
      return v;
    }
    case Kind::text:
      return raw;
    case Kind::flag:
      if (raw == "true" || raw == "1") return true;
      if (raw == "false" || raw == "0") return false;
      throw ValidationError("--" + key.name + ": expected true or false");
    case Kind::triple: {
      const auto v = parse_list(key.name, raw);
      if (v.size() != 3) throw ValidationError("--" + key.name + ": expected three comma-separated numbers");
      return v;
    }
    case Kind::numbers:
      return parse_list(key.name, raw);
  }
  return nullptr;
}

Config merge_config(const CommandSpec& spec, const json& file_doc, const std::map<std::string, std::string>& flags) {
  json doc = json::object();
  const auto find = [&](const std::string& name) -> const Key* {
    for (const auto& k : spec.keys) {
      if (k.name == name) return &k;
    }
    return nullptr;
  };
  if (!file_doc.is_null()) {
    if (!file_doc.is_object()) throw ValidationError("config file must hold a JSON object");
    for (const auto& [name, value] : file_doc.items()) {
      const Key* key = find(name);
      if (!key) throw ValidationError("unknown config key '" + name + "' for command '" + spec.name + "'");
      check_kind(*key, value);
      doc[name] = value;
    }
  }
  for (const auto& [name, raw] : flags) {
    const Key* key = find(name);
    if (!key) throw ValidationError("unknown option --" + name);
    doc[name] = parse_flag_value(*key, raw);
  }
  return Config(spec.name, std::move(doc));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace spincorr::cli
