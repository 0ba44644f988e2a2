#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "quperman/error.hpp"

namespace quperman::detail {

using Json = nlohmann::ordered_json;

/// Pretty-printed document with LF endings and a trailing newline.
inline std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

inline const Json& require(const Json& obj, std::string_view key, std::string_view what) {
  if (!obj.is_object()) throw InputError(std::string(what) + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string(what) + ": missing field '" + std::string(key) + "'");
  return *it;
}

inline double require_number(const Json& obj, std::string_view key, std::string_view what) {
  const auto& v = require(obj, key, what);
  if (!v.is_number()) throw InputError(std::string(what) + ": field '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

inline long long require_integer(const Json& obj, std::string_view key, std::string_view what) {
  const auto& v = require(obj, key, what);
  if (!v.is_number_integer()) {
    throw InputError(std::string(what) + ": field '" + std::string(key) + "' must be an integer");
  }
  return v.get<long long>();
}

inline std::string require_string(const Json& obj, std::string_view key, std::string_view what) {
  const auto& v = require(obj, key, what);
  if (!v.is_string()) throw InputError(std::string(what) + ": field '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

inline std::optional<double> optional_number(const Json& obj, std::string_view key, std::string_view what) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw InputError(std::string(what) + ": field '" + std::string(key) + "' must be a number");
  return it->get<double>();
}

/// Rejects documents whose `schema` is not `expected`. Another version of
/// the same family is a VersionError.
inline void check_schema(const Json& doc, std::string_view expected, std::string_view what) {
  const auto schema = require_string(doc, "schema", what);
  if (schema == expected) return;
  const auto family = expected.substr(0, expected.find(".v"));
  if (schema.rfind(std::string(family) + ".v", 0) == 0) {
    throw VersionError(std::string(what) + ": unsupported schema version '" + schema + "' (this build reads '" +
                       std::string(expected) + "'); migrate the file first");
  }
  throw InputError(std::string(what) + ": expected schema '" + std::string(expected) + "', found '" + schema + "'");
}

}  // namespace quperman::detail
