// svg.hpp — minimal deterministic SVG line charts from trajectory CSV files.
#pragma once

#include <string>
#include <vector>

#include "dynamap/types.hpp"

namespace dynamap {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;  // throws ConfigError
};

CsvTable read_csv(const std::string& path);

// Line chart of the selected columns against the first column (t). Pure
// function of the input bytes: no timestamps, fixed palette and formatting.
std::string render_line_chart(const CsvTable& table, const std::vector<std::string>& columns);

void plot_csv(const std::string& csv_path, const std::vector<std::string>& columns,
              const std::string& out_path);

}  // namespace dynamap
