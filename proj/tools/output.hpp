#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vibecho/vibecho.h"

namespace vibecho::cli {

/// Locale-independent scientific notation with 17 significant digits, so
/// values round-trip exactly. Non-finite values print as inf, -inf, nan.
std::string format_number(double value);

/// Flat JSON object writer with stable key order. Non-finite numbers are
/// written as the strings "inf", "-inf" and "nan".
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double value);
  JsonObject& add(const std::string& key, std::size_t value);
  JsonObject& add(const std::string& key, bool value);
  JsonObject& add(const std::string& key, const std::string& value);
  JsonObject& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  JsonObject& add_array(const std::string& key, const std::vector<double>& values);
  /// `json` must already be valid JSON.
  JsonObject& add_raw(const std::string& key, std::string json);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_string(const std::string& text);
std::string json_number(double value);

/// Header t,re_d,im_d,abs_d,ground_pop,excited_pop.
std::string trace_csv(const ve_trace* trace);
/// Header tau,peak,xi,xi_analytic; failed points leave peak and xi as nan.
std::string scan_csv(const ve_scan* scan);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace vibecho::cli
