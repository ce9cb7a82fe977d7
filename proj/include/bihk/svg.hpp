#pragma once

#include <string>
#include <vector>

namespace bihk::svg {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

// Line plot with axes, tick labels and a legend.
std::string line_plot(const std::string& title, const std::vector<Series>& series, bool log_y = false);

// Row-major grid values[r][c] over [x0,x1]x[y0,y1]; cells are coloured by value,
// with sign changes of the value outlined.
std::string heatmap(const std::string& title, const std::vector<std::vector<double>>& values, double x0,
                    double x1, double y0, double y1);

void write_file(const std::string& path, const std::string& content);

}  // namespace bihk::svg
