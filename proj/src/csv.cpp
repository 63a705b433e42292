#include "mrsav/csv.hpp"

#include <cstdio>
#include <sstream>

#include "mrsav/errors.hpp"

namespace mrsav {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), columns_(columns), os_(path) {
    if (!os_) throw IoError("cannot open CSV for writing: " + path);
}

void CsvWriter::metadata(const std::string& line) {
    if (header_written_)
        throw IoError("CSV metadata must precede the header: " + path_);
    os_ << "# " << line << "\n";
}

void CsvWriter::write_header_if_needed() {
    if (header_written_) return;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        os_ << (i ? "," : "") << columns_[i];
    os_ << "\n";
    header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw IoError("CSV row width mismatch: " + path_);
    write_header_if_needed();
    for (std::size_t i = 0; i < values.size(); ++i)
        os_ << (i ? "," : "") << format_double(values[i]);
    os_ << "\n";
    if (!os_) throw IoError("CSV write failed: " + path_);
}

void CsvWriter::flush() {
    write_header_if_needed();
    os_.flush();
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return data[i];
    throw IoError("CSV column not found: " + name);
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c == name) return true;
    return false;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open CSV: " + path);
    CsvTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string meta = line.substr(1);
            if (!meta.empty() && meta[0] == ' ') meta.erase(0, 1);
            table.metadata.push_back(meta);
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!header_seen) {
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
            if (table.columns.empty()) throw IoError("CSV has an empty header: " + path);
            table.data.resize(table.columns.size());
            header_seen = true;
            continue;
        }
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= table.columns.size())
                throw IoError("CSV row wider than header: " + path);
            try {
                table.data[col].push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("CSV cell is not a number in " + path + ": '" + cell + "'");
            }
            ++col;
        }
        if (col != table.columns.size())
            throw IoError("CSV row narrower than header: " + path);
    }
    if (!header_seen) throw IoError("CSV has no header: " + path);
    return table;
}

}  // namespace mrsav
