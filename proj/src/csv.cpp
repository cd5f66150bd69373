#include "qdr/csv.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qdr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (const char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out << ",";
    }
    out << cells[i];
  }
  out << "\n";
}

}  // namespace

void CsvTable::write(std::ostream& out) const {
  write_row(out, header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::logic_error("CsvTable: row width differs from header");
    }
    write_row(out, row);
  }
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      throw std::invalid_argument("parse_csv: CR line ending found");
    }
    if (first) {
      table.header = split_line(line);
      first = false;
    } else {
      table.rows.push_back(split_line(line));
    }
  }
  if (first) {
    throw std::invalid_argument("parse_csv: empty input");
  }
  return table;
}

}  // namespace qdr
