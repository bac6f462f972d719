#include "trilayer/cli/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "trilayer/errors.hpp"

namespace trilayer::cli {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf.data(), ptr);
}

void CsvWriter::comment(std::string_view line) {
  out_ << "# " << line << '\n';
}

void CsvWriter::metadata(std::string_view tag,
                         const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) out_ << "# " << tag << ": " << k << " = " << v << '\n';
}

void CsvWriter::header(const std::vector<std::string_view>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    out_ << (i ? "," : "") << format_double(values[i]);
  }
  out_ << '\n';
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace trilayer::cli
