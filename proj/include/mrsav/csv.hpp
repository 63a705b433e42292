#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace mrsav {

/// Column-oriented CSV with '#'-prefixed metadata lines, '.' decimals and
/// '\n' line endings. Values are written with 17 significant digits so reads
/// round-trip bit-exactly.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void metadata(const std::string& line);  // written before the header
    void row(const std::vector<double>& values);
    void flush();
    const std::string& path() const { return path_; }

  private:
    void write_header_if_needed();
    std::string path_;
    std::vector<std::string> columns_;
    std::ofstream os_;
    bool header_written_ = false;
};

struct CsvTable {
    std::vector<std::string> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // one vector per column

    const std::vector<double>& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    std::size_t rows() const { return columns.empty() ? 0 : data[0].size(); }
};

CsvTable read_csv(const std::string& path);

std::string format_double(double v);

}  // namespace mrsav
