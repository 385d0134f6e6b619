#pragma once

// Tabular output. Numbers are written with 17 significant digits in
// scientific notation; files appear atomically (temp file, then rename).

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gawq {

using CsvCell = std::variant<double, long, std::string>;

std::string format_number(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    // Throws DomainError if the cell count does not match the header.
    void add_row(std::vector<CsvCell> cells);

    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::string> rows_;
};

// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace gawq
