#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gmc {

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr int kFormatVersion = 1;

// Doubles rendered with 17 significant digits round-trip losslessly.
std::string format_double(double v);

// Leading '#'-prefixed JSON header line carrying the config digest, seed and
// versions, then a CSV header row and rows of 17-significant-digit values.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& header_json,
            const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void close();

 private:
  void* file_{nullptr};
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gmc
