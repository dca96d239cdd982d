#pragma once

#include <string>
#include <vector>

namespace qdot {

// Locale-independent formatting with 6 significant digits ('.' decimal).
std::string format_g6(double v);

class CsvWriter {
  public:
    CsvWriter(std::string path, std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void close();  // throws IoError on failure
    ~CsvWriter();

  private:
    std::string path_;
    std::string buffer_;
    std::size_t n_cols_;
    bool closed_ = false;
};

void write_text_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

}  // namespace qdot
