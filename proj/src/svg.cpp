#include "bihk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "bihk/error.hpp"

namespace bihk::svg {

namespace {

constexpr double kW = 640, kH = 420, kL = 70, kR = 150, kT = 40, kB = 50;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string line_plot(const std::string& title, const std::vector<Series>& series, bool log_y) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    auto ty = [&](double y) { return log_y ? std::log10(std::max(std::abs(y), 1e-300)) : y; };
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, ty(s.y[k]));
            ymax = std::max(ymax, ty(s.y[k]));
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1, ymin -= 1;
    const double pw = kW - kL - kR, ph = kH - kT - kB;
    auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kT + (1 - (ty(y) - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
    o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double xv = xmin + (xmax - xmin) * t / 4, yv = ymin + (ymax - ymin) * t / 4;
        double x = kL + pw * t / 4, y = kT + ph * (1 - t / 4.0);
        o << "<text x=\"" << x << "\" y=\"" << kH - kB + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
          << num(xv) << "</text>\n";
        o << "<text x=\"" << kL - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
          << (log_y ? "1e" + num(yv) : num(yv)) << "</text>\n";
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* col = kColors[si % 7];
        o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) o << px(s.x[k]) << "," << py(s.y[k]) << " ";
        o << "\"/>\n";
        double ly = kT + 16 + 18 * static_cast<double>(si);
        o << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly << "\" x2=\"" << kW - kR + 30 << "\" y2=\"" << ly
          << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << kW - kR + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << escape(s.label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string heatmap(const std::string& title, const std::vector<std::vector<double>>& values, double x0,
                    double x1, double y0, double y1) {
    const std::size_t rows = values.size(), cols = rows ? values[0].size() : 0;
    double vmax = 0;
    for (const auto& r : values)
        for (double v : r) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0) vmax = 1;
    const double pw = kW - kL - kR, ph = kH - kT - kB;
    const double cw = cols ? pw / static_cast<double>(cols) : 0, ch = rows ? ph / static_cast<double>(rows) : 0;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double v = values[r][c];
            // signed log scale: blue negative, red positive
            double s = std::log1p(std::abs(v)) / std::log1p(vmax);
            int shade = static_cast<int>(255 * (1 - s));
            char fill[16];
            if (v >= 0) std::snprintf(fill, sizeof fill, "#ff%02x%02x", shade, shade);
            else std::snprintf(fill, sizeof fill, "#%02x%02xff", shade, shade);
            o << "<rect x=\"" << kL + cw * static_cast<double>(c) << "\" y=\""
              << kT + ch * static_cast<double>(rows - 1 - r) << "\" width=\"" << cw + 0.5 << "\" height=\""
              << ch + 0.5 << "\" fill=\"" << fill << "\"/>\n";
        }
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double cx = kL + cw * (static_cast<double>(c) + 0.5), cy = kT + ch * (static_cast<double>(rows - r) - 0.5);
            bool right = c + 1 < cols && (values[r][c] < 0) != (values[r][c + 1] < 0);
            bool up = r + 1 < rows && (values[r][c] < 0) != (values[r + 1][c] < 0);
            if (right || up) o << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"1.2\" fill=\"black\"/>\n";
        }
    o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << kL << "\" y=\"" << kH - kB + 18 << "\" font-size=\"11\">" << num(x0) << "</text>\n";
    o << "<text x=\"" << kL + pw << "\" y=\"" << kH - kB + 18 << "\" text-anchor=\"end\" font-size=\"11\">"
      << num(x1) << "</text>\n";
    o << "<text x=\"" << kL - 6 << "\" y=\"" << kT + ph << "\" text-anchor=\"end\" font-size=\"11\">" << num(y0)
      << "</text>\n";
    o << "<text x=\"" << kL - 6 << "\" y=\"" << kT + 10 << "\" text-anchor=\"end\" font-size=\"11\">" << num(y1)
      << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace bihk::svg
