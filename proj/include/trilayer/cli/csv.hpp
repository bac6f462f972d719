#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trilayer::cli {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// CSV with '#' metadata lines, a header row and LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view line);
  void metadata(std::string_view tag, const std::vector<std::pair<std::string, std::string>>& kv);
  void header(const std::vector<std::string_view>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

/// Writes the whole string to path in binary mode. Throws trilayer::Error.
void write_file(const std::string& path, std::string_view content);

}  // namespace trilayer::cli
