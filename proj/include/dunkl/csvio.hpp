#pragma once

#include <string>
#include <vector>

namespace dunkl {

/// CSV emitter with a '#'-prefixed JSON metadata first line, so every output
/// file is self-describing.  Content is assembled in memory and written in
/// one shot: a failing command leaves no partial file.
class CsvWriter {
  public:
    void set_meta(const std::string& json_line);
    void set_header(const std::vector<std::string>& columns);
    void add_row(const std::vector<double>& values);
    void add_row_raw(const std::string& line);
    const std::string& str();
    void write_file(const std::string& path);

  private:
    std::string meta_;
    std::string header_;
    std::string body_;
    std::string assembled_;
};

/// Deterministic shortest-roundtrip formatting for doubles (%.17g trimmed).
std::string format_double(double v);

}  // namespace dunkl
