#include "dynamap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dynamap {

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw ConfigError("column not found: '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open CSV file: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty CSV file: " + path);
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.columns.push_back(cell);
    if (table.columns.empty()) throw ConfigError("CSV has no columns: " + path);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        row.reserve(table.columns.size());
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != table.columns.size())
            throw ConfigError("CSV row width mismatch in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// Round tick spacing to 1/2/5 x 10^k.
double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

std::string render_line_chart(const CsvTable& table, const std::vector<std::string>& columns) {
    if (table.rows.empty()) throw ConfigError("plot: CSV has no data rows");
    if (columns.empty()) throw ConfigError("plot: no columns selected");

    const std::size_t tx = 0;
    std::vector<std::size_t> idx;
    for (const auto& c : columns) idx.push_back(table.column_index(c));

    double xmin = table.rows.front()[tx], xmax = xmin;
    double ymin = table.rows.front()[idx[0]], ymax = ymin;
    for (const auto& row : table.rows) {
        xmin = std::min(xmin, row[tx]);
        xmax = std::max(xmax, row[tx]);
        for (std::size_t c : idx) {
            ymin = std::min(ymin, row[c]);
            ymax = std::max(ymax, row[c]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double width = 800, height = 500;
    const double ml = 70, mr = 150, mt = 20, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto sy = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Axes and ticks.
    svg << "<g stroke=\"#333333\" stroke-width=\"1\" font-family=\"monospace\" font-size=\"12\">\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\"/>\n";
    const double xstep = nice_step(xmax - xmin, 6);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12 * xstep; x += xstep) {
        svg << "<line x1=\"" << fmt(sx(x)) << "\" y1=\"" << mt + ph << "\" x2=\"" << fmt(sx(x))
            << "\" y2=\"" << mt + ph + 5 << "\"/>\n";
        svg << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333333\">" << fmt(x)
            << "</text>\n";
    }
    const double ystep = nice_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12 * ystep; y += ystep) {
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(sy(y)) << "\" x2=\"" << ml
            << "\" y2=\"" << fmt(sy(y)) << "\"/>\n";
        svg << "<text x=\"" << ml - 10 << "\" y=\"" << fmt(sy(y) + 4)
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333333\">" << fmt(y)
            << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333333\">"
        << table.columns[tx] << "</text>\n";
    svg << "</g>\n";

    // Series.
    for (std::size_t s = 0; s < idx.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : table.rows)
            svg << fmt(sx(row[tx])) << "," << fmt(sy(row[idx[s]])) << " ";
        svg << "\"/>\n";
    }

    // Legend.
    svg << "<g font-family=\"monospace\" font-size=\"12\">\n";
    for (std::size_t s = 0; s < idx.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const double ly = mt + 10 + 18 * double(s);
        svg << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 30
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << ml + pw + 35 << "\" y=\"" << ly + 4 << "\" fill=\"#333333\">"
            << columns[s] << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void plot_csv(const std::string& csv_path, const std::vector<std::string>& columns,
              const std::string& out_path) {
    const CsvTable table = read_csv(csv_path);
    const std::string svg = render_line_chart(table, columns);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write SVG file: " + out_path);
    out << svg;
}

}  // namespace dynamap
