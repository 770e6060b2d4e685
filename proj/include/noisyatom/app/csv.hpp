#pragma once

#include <string>
#include <vector>

namespace noisyatom::app {

// Column-oriented CSV with a header row, LF line endings and '.' decimals.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double>& row);
    std::string str() const;
    void write(const std::string& path) const;

    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace noisyatom::app
