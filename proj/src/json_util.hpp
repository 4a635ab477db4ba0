#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lambda_bound/errors.hpp"

namespace lambda_bound::detail {

using Json = nlohmann::ordered_json;

inline int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("line " + std::to_string(line_of_offset(text, err.byte)),
                     err.what());
  }
}

inline const Json& field(const Json& obj, const char* key, const std::string& locus) {
  if (!obj.is_object()) throw ParseError(locus, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(locus, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::int64_t as_int(const Json& v, const std::string& locus) {
  if (!v.is_number_integer()) throw ParseError(locus, "expected an integer");
  return v.get<std::int64_t>();
}

inline const Json& as_array(const Json& v, const std::string& locus) {
  if (!v.is_array()) throw ParseError(locus, "expected an array");
  return v;
}

}  // namespace lambda_bound::detail
