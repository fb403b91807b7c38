#include "billiards/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "billiards/errors.hpp"

namespace billiards {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void join(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << "\n";
}

}  // namespace

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  join(os, header);
  for (const auto& r : rows) join(os, r);
  return os.str();
}

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  bool haveHeader = false;
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    if (!haveHeader) {
      t.header = split(line);
      haveHeader = true;
    } else {
      auto r = split(line);
      if (r.size() != t.header.size())
        throw ParseError(0, "row has " + std::to_string(r.size()) + " cells, header has " +
                                std::to_string(t.header.size()));
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DomainError("no column '" + name + "'");
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw DomainError("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace billiards
