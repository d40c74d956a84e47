#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace goc {

/// Fixed-precision formatting so repeated runs are byte-identical.
std::string format_real(double value);

// CSV writer: one comment line (`# tool=... config_hash=... seed=...`), a
// header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& comment, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  CsvWriter& cell(std::uint64_t value);
  CsvWriter& cell(int value) { return cell(static_cast<std::int64_t>(value)); }
  CsvWriter& cell(bool value);
  CsvWriter& cell(const std::string& value);
  CsvWriter& cell(const char* value) { return cell(std::string(value)); }
  CsvWriter& empty();
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Opens for writing or throws std::runtime_error naming the path.
std::ofstream open_output(const std::string& path);

}  // namespace goc
