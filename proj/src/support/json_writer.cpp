#include "support/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace focallab {

std::string format_double(double v) {
  // Non-finite values have no JSON representation; reports use null.
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string r;
  r.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': r += "\\\""; break;
      case '\\': r += "\\\\"; break;
      case '\n': r += "\\n"; break;
      case '\t': r += "\\t"; break;
      case '\r': r += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          r += buf;
        } else {
          r += c;
        }
    }
  }
  return r;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_in_scope_.empty()) {
    if (!first_in_scope_.back()) out_ += ',';
    first_in_scope_.back() = false;
  }
}

void JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_in_scope_.push_back(true);
}

void JsonWriter::end_object() {
  out_ += '}';
  first_in_scope_.pop_back();
}

void JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_in_scope_.push_back(true);
}

void JsonWriter::end_array() {
  out_ += ']';
  first_in_scope_.pop_back();
}

void JsonWriter::key(const std::string& name) {
  if (!first_in_scope_.back()) out_ += ',';
  first_in_scope_.back() = false;
  out_ += '"';
  out_ += json_escape(name);
  out_ += "\":";
  pending_key_ = true;
}

void JsonWriter::value(double v) {
  separator();
  out_ += format_double(v);
}

void JsonWriter::value(int v) {
  separator();
  out_ += std::to_string(v);
}

void JsonWriter::value(long long v) {
  separator();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
}

void JsonWriter::value(const char* v) { value(std::string(v)); }

void JsonWriter::value(const std::string& v) {
  separator();
  out_ += '"';
  out_ += json_escape(v);
  out_ += '"';
}

void JsonWriter::null_value() {
  separator();
  out_ += "null";
}

void JsonWriter::raw(const std::string& text) {
  separator();
  out_ += text;
}

}  // namespace focallab
