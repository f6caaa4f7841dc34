#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hm {

/// Renders with `%.17g` (17 significant digits), which round-trips every double.
/// Non-finite values render as `nan`, `inf`, `-inf`.
std::string format_number(double v);

/// Minimal ordered JSON value used for reports. Numbers are rendered with
/// format_number so output is bit-exact and stable; NaN/inf become null.
class Json {
 public:
  using Array = std::vector<Json>;
  using Object = std::vector<std::pair<std::string, Json>>;

  Json() : value_(nullptr) {}
  Json(std::nullptr_t) : value_(nullptr) {}
  Json(bool b) : value_(b) {}
  Json(int v) : value_(static_cast<std::int64_t>(v)) {}
  Json(unsigned v) : value_(static_cast<std::int64_t>(v)) {}
  Json(long v) : value_(static_cast<std::int64_t>(v)) {}
  Json(unsigned long v) : value_(static_cast<std::int64_t>(v)) {}
  Json(long long v) : value_(static_cast<std::int64_t>(v)) {}
  Json(unsigned long long v) : value_(static_cast<std::int64_t>(v)) {}
  Json(double v) : value_(v) {}
  Json(const char* s) : value_(std::string(s)) {}
  Json(std::string s) : value_(std::move(s)) {}
  Json(Array a) : value_(std::move(a)) {}
  Json(Object o) : value_(std::move(o)) {}

  static Json array(std::initializer_list<Json> items = {}) { return Json(Array(items)); }
  static Json object() { return Json(Object{}); }

  /// Appends to an object (keys keep insertion order).
  Json& set(std::string key, Json value);
  /// Appends to an array.
  Json& push(Json value);

  /// Pretty-prints with two-space indentation, or on one line when indent < 0.
  std::string dump(int indent = 2) const;

 private:
  void dump_to(std::string& out, int indent, int depth) const;
  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> value_;
};

template <typename T>
Json to_json_array(const std::vector<T>& values) {
  Json::Array a;
  a.reserve(values.size());
  for (const auto& v : values) a.emplace_back(v);
  return Json(std::move(a));
}

}  // namespace hm
