#include "core/report.hpp"

#include <cmath>
#include <cstdio>

namespace fbh {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
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
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::comma() {
  if (!first_.empty()) {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (!first_.back()) out_ += ",";
    first_.back() = false;
  }
}

void JsonWriter::begin_object() {
  comma();
  out_ += "{";
  first_.push_back(true);
}

void JsonWriter::end_object() {
  out_ += "}";
  first_.pop_back();
}

void JsonWriter::begin_array() {
  comma();
  out_ += "[";
  first_.push_back(true);
}

void JsonWriter::end_array() {
  out_ += "]";
  first_.pop_back();
}

void JsonWriter::key(const std::string& k) {
  if (!first_.back()) out_ += ",";
  first_.back() = false;
  out_ += "\"" + json_escape(k) + "\":";
  pending_key_ = true;
}

void JsonWriter::value(const std::string& s) {
  comma();
  out_ += "\"" + json_escape(s) + "\"";
}

void JsonWriter::value(double v) {
  comma();
  out_ += fmt_double(v);
}

void JsonWriter::value(long long v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(unsigned long long v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool b) {
  comma();
  out_ += b ? "true" : "false";
}

void JsonWriter::value_array(const std::vector<double>& vs) {
  begin_array();
  for (double v : vs) value(v);
  end_array();
}

}  // namespace fbh
