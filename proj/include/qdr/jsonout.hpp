#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qdr {

// Streaming JSON writer with deterministic output: keys appear in insertion
// order and every double is printed with 17 significant digits.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out);

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void string_value(const std::string& value);
  void number(double value);  // throws std::invalid_argument on non-finite
  void integer(long long value);
  void boolean(bool value);

 private:
  void separator();

  std::ostream& out_;
  // One frame per open container: whether a value has been written in it.
  std::vector<bool> has_item_;
  bool pending_key_ = false;
};

// 17-significant-digit formatting shared by the CSV and JSON emitters.
std::string format_sig17(double value);

std::string json_escape(const std::string& raw);

}  // namespace qdr
