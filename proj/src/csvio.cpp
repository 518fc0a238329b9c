#include "dunkl/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dunkl {

std::string format_double(double v) {
    char buf[40];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::set_meta(const std::string& json_line) { meta_ = "# " + json_line + "\n"; }

void CsvWriter::set_header(const std::vector<std::string>& columns) {
    header_.clear();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) header_ += ',';
        header_ += columns[i];
    }
    header_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(values[i]);
    }
    body_ += '\n';
}

void CsvWriter::add_row_raw(const std::string& line) {
    body_ += line;
    body_ += '\n';
}

const std::string& CsvWriter::str() {
    assembled_ = meta_ + header_ + body_;
    return assembled_;
}

void CsvWriter::write_file(const std::string& path) {
    const std::string& content = str();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace dunkl
