#include "output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace vibecho::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
  return std::string(buf, result.ptr);
}

std::string json_string(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", static_cast<unsigned>(c));
          out += esc;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_number(double value) {
  if (!std::isfinite(value)) return json_string(format_number(value));
  return format_number(value);
}

JsonObject& JsonObject::add(const std::string& key, double value) {
  fields_.emplace_back(key, json_number(value));
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, std::size_t value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, bool value) {
  fields_.emplace_back(key, value ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, json_string(value));
  return *this;
}

JsonObject& JsonObject::add_array(const std::string& key, const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ", ";
    out += json_number(values[i]);
  }
  fields_.emplace_back(key, out + "]");
  return *this;
}

JsonObject& JsonObject::add_raw(const std::string& key, std::string json) {
  fields_.emplace_back(key, std::move(json));
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{\n";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    out += "  " + json_string(fields_[i].first) + ": " + fields_[i].second;
    out += (i + 1 < fields_.size()) ? ",\n" : "\n";
  }
  return out + "}\n";
}

std::string trace_csv(const ve_trace* trace) {
  std::string out = "t,re_d,im_d,abs_d,ground_pop,excited_pop\n";
  const std::size_t n = ve_trace_size(trace);
  for (std::size_t i = 0; i < n; ++i) {
    ve_sample s{};
    if (ve_trace_sample(trace, i, &s) != VE_OK) throw std::runtime_error(ve_last_error());
    out += format_number(s.time) + ',' + format_number(s.re_dipole) + ',' +
           format_number(s.im_dipole) + ',' + format_number(std::hypot(s.re_dipole, s.im_dipole)) +
           ',' + format_number(s.ground_pop) + ',' + format_number(s.excited_pop) + '\n';
  }
  return out;
}

std::string scan_csv(const ve_scan* scan) {
  std::string out = "tau,peak,xi,xi_analytic\n";
  const std::size_t n = ve_scan_size(scan);
  for (std::size_t i = 0; i < n; ++i) {
    ve_scan_point p{};
    if (ve_scan_point_get(scan, i, &p) != VE_OK) throw std::runtime_error(ve_last_error());
    const double nan = std::nan("");
    out += format_number(p.tau) + ',' + format_number(p.ok ? p.peak : nan) + ',' +
           format_number(p.ok ? p.xi : nan) + ',' + format_number(p.xi_analytic) + '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

}  // namespace vibecho::cli
