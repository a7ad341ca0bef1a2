#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qens/types.hpp"

namespace qens {

// 17 significant digits: enough to round-trip a double exactly.
std::string format_real(Real v);

// Line-oriented CSV writer with atomic replace: content is written to a
// sibling temp file and renamed over the destination on commit, so readers
// never observe a partial file. An uncommitted writer cleans up after
// itself.
class CsvWriter {
 public:
  explicit CsvWriter(std::filesystem::path destination);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void write_line(const std::string& line);
  void commit();

 private:
  std::filesystem::path destination_;
  std::filesystem::path temp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

// Rows of comma-split fields. Comment lines (leading '#') and blank lines
// are skipped.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& source);

}  // namespace qens
