#include "gmcsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmcsim/error.hpp"

namespace gmc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header_json,
                     const std::vector<std::string>& columns) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fail(errc::io_error, "cannot open " + path);
  file_ = f;
  std::fprintf(f, "# %s\n", header_json.c_str());
  for (std::size_t i = 0; i < columns.size(); ++i)
    std::fprintf(f, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::row(const std::vector<double>& values) {
  auto* f = static_cast<std::FILE*>(file_);
  if (!f) fail(errc::io_error, "writer closed");
  for (std::size_t i = 0; i < values.size(); ++i)
    std::fprintf(f, "%s%s", format_double(values[i]).c_str(), i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::close() {
  if (file_) {
    std::fclose(static_cast<std::FILE*>(file_));
    file_ = nullptr;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << contents;
}

}  // namespace gmc
