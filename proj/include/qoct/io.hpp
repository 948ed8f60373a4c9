#ifndef QOCT_IO_HPP
#define QOCT_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qoct {

/// Fixed 12-significant-digit scientific formatting; identical bytes for
/// identical values on every platform.
std::string format_value(double v);

class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t n_columns_;
  bool closed_ = false;
};

/// FNV-1a 64-bit, hex-encoded; used as the manifest's config hash.
std::string fnv1a_hex(const std::string& data);

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace qoct

#endif
