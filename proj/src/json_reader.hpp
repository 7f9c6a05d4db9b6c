#pragma once

// Path-tracking JSON object reader shared by the config and data parsers.

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinres/errors.hpp"

namespace spinres::detail {

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected a JSON object");
  }

  const std::string& path() const { return path_; }
  std::string path_of(const std::string& key) const { return join_path(path_, key); }

  bool has(const std::string& key) const { return j_.contains(key); }

  const nlohmann::json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(path_of(key), "missing required key");
    return j_.at(key);
  }

  const nlohmann::json* maybe(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  double number(const std::string& key) { return as_number(raw(key), path_of(key)); }

  std::optional<double> opt_number(const std::string& key) {
    const auto* v = maybe(key);
    if (!v) return std::nullopt;
    return as_number(*v, path_of(key));
  }

  double number_or(const std::string& key, double fallback) { return opt_number(key).value_or(fallback); }

  int integer_or(const std::string& key, int fallback) {
    const auto* v = maybe(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path_of(key), "expected an integer");
    return v->get<int>();
  }

  std::string string(const std::string& key) { return as_string(raw(key), path_of(key)); }

  std::optional<std::string> opt_string(const std::string& key) {
    const auto* v = maybe(key);
    if (!v) return std::nullopt;
    return as_string(*v, path_of(key));
  }

  std::vector<double> numbers(const std::string& key) {
    const auto* v = maybe(key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(path_of(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) out.push_back(as_number((*v)[i], index_path(path_of(key), i)));
    return out;
  }

  /// Rejects keys nobody asked for.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(path_of(it.key()), "unknown key");
  }

  static double as_number(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path, "expected a finite number");
    return d;
  }

  static std::string as_string(const nlohmann::json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

}  // namespace spinres::detail
