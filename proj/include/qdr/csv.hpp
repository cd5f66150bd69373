#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdr {

// Plain comma-separated table: LF line endings, '.' decimal separator, one
// header row, doubles at 17 significant digits. Cells never need quoting
// because emitters only write numbers, plain flags, and blank cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  std::string to_string() const;
};

CsvTable parse_csv(const std::string& text);

}  // namespace qdr
