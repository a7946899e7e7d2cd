#include "expsum/run_record.hpp"

#include <cstdio>

namespace expsum {

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string format_double_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void RunRecord::add(std::string key, Value value) {
  fields_.emplace_back(std::move(key), std::move(value));
}

std::string RunRecord::json_line() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : fields_) {
    if (!first) out += ",";
    first = false;
    out += "\"" + escape_json(key) + "\":";
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>) {
            out += "\"" + escape_json(v) + "\"";
          } else if constexpr (std::is_same_v<T, double>) {
            out += format_double_17(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::complex<double>>) {
            out += "[" + format_double_17(v.real()) + "," +
                   format_double_17(v.imag()) + "]";
          } else {
            out += std::to_string(v);
          }
        },
        value);
  }
  out += "}";
  return out;
}

std::string RunRecord::csv_header() const {
  std::string out;
  bool first = true;
  for (const auto& [key, value] : fields_) {
    if (!first) out += ",";
    first = false;
    if (std::holds_alternative<std::complex<double>>(value)) {
      out += key + "_re," + key + "_im";
    } else {
      out += key;
    }
  }
  return out;
}

std::string RunRecord::csv_row() const {
  std::string out;
  bool first = true;
  for (const auto& [key, value] : fields_) {
    if (!first) out += ",";
    first = false;
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>) {
            out += "\"" + v + "\"";
          } else if constexpr (std::is_same_v<T, double>) {
            out += format_double_17(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::complex<double>>) {
            out += format_double_17(v.real()) + "," + format_double_17(v.imag());
          } else {
            out += std::to_string(v);
          }
        },
        value);
  }
  return out;
}

}  // namespace expsum
