#include "qens/csv.hpp"

#include <cstdio>
#include <stdexcept>
#include <system_error>

namespace qens {

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::filesystem::path destination)
    : destination_(std::move(destination)), temp_path_(destination_) {
  if (destination_.empty()) throw std::invalid_argument("csv destination path is empty");
  const auto parent = destination_.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  temp_path_ += ".tmp";
  out_.open(temp_path_, std::ios::out | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + temp_path_.string() + " for writing");
}

CsvWriter::~CsvWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temp_path_, ec);  // best effort
  }
}

void CsvWriter::write_line(const std::string& line) {
  if (committed_) throw std::runtime_error("csv writer already committed");
  out_ << line << '\n';
  if (!out_) throw std::runtime_error("write failed for " + temp_path_.string());
}

void CsvWriter::commit() {
  if (committed_) return;
  out_.flush();
  if (!out_) throw std::runtime_error("flush failed for " + temp_path_.string());
  out_.close();
  std::filesystem::rename(temp_path_, destination_);
  committed_ = true;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open " + source.string() + " for reading");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace qens
