#include "qdr/jsonout.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qdr {

std::string format_sig17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string json_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 8);
  for (const char ch : raw) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

JsonWriter::JsonWriter(std::ostream& out) : out_(out) {}

void JsonWriter::separator() {
  if (has_item_.empty()) {
    return;
  }
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (has_item_.back()) {
    out_ << ",";
  }
  has_item_.back() = true;
}

void JsonWriter::begin_object() {
  separator();
  out_ << "{";
  has_item_.push_back(false);
}

void JsonWriter::end_object() {
  if (has_item_.empty()) {
    throw std::logic_error("JsonWriter: end_object without begin_object");
  }
  has_item_.pop_back();
  out_ << "}";
}

void JsonWriter::begin_array() {
  separator();
  out_ << "[";
  has_item_.push_back(false);
}

void JsonWriter::end_array() {
  if (has_item_.empty()) {
    throw std::logic_error("JsonWriter: end_array without begin_array");
  }
  has_item_.pop_back();
  out_ << "]";
}

void JsonWriter::key(const std::string& name) {
  separator();
  out_ << "\"" << json_escape(name) << "\":";
  pending_key_ = true;
}

void JsonWriter::string_value(const std::string& value) {
  separator();
  out_ << "\"" << json_escape(value) << "\"";
}

void JsonWriter::number(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("JsonWriter: non-finite number");
  }
  separator();
  out_ << format_sig17(value);
}

void JsonWriter::integer(long long value) {
  separator();
  out_ << value;
}

void JsonWriter::boolean(bool value) {
  separator();
  out_ << (value ? "true" : "false");
}

}  // namespace qdr
