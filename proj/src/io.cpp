#include "qoct/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qoct {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path,
                     const std::vector<std::string>& header)
    : path_(std::move(path)), n_columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_value(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  write_text_file(path_, buffer_);
  closed_ = true;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace qoct
