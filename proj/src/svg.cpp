#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ccm/harness.hpp"

namespace ccm {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::fixed;
    ss.precision(2);
    ss << v;
    std::string s = ss.str();
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

void plot_svg(const RateMemoryTable& table, const std::string& path) {
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& r : table.rows) series[r.series].emplace_back(r.memory, r.mean_rate);
    if (series.empty()) throw std::invalid_argument("plot_svg: no series to plot");

    double x_max = 0.0, y_max = 0.0;
    for (auto& [name, pts] : series) {
        std::sort(pts.begin(), pts.end());
        for (const auto& [x, y] : pts) {
            x_max = std::max(x_max, x);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max <= 0.0) x_max = 1.0;
    if (y_max <= 0.0) y_max = 1.0;
    y_max *= 1.05;

    const double width = 860, height = 560;
    const double ml = 70, mr = 190, mt = 40, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + x / x_max * pw; };
    auto py = [&](double y) { return mt + ph - y / y_max * ph; };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("plot_svg: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // grid and ticks
    const int ticks = 5;
    out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (int i = 0; i <= ticks; ++i) {
        const double gx = ml + pw * i / ticks;
        const double gy = mt + ph * i / ticks;
        out << "<line x1=\"" << gx << "\" y1=\"" << mt << "\" x2=\"" << gx << "\" y2=\""
            << (mt + ph) << "\"/>\n";
        out << "<line x1=\"" << ml << "\" y1=\"" << gy << "\" x2=\"" << (ml + pw) << "\" y2=\""
            << gy << "\"/>\n";
    }
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (int i = 0; i <= ticks; ++i) {
        const double xv = x_max * i / ticks;
        const double yv = y_max * i / ticks;
        out << "<text x=\"" << (ml + pw * i / ticks) << "\" y=\"" << (mt + ph + 18)
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        out << "<text x=\"" << (ml - 8) << "\" y=\"" << (mt + ph - ph * i / ticks + 4)
            << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    out << "<text x=\"" << (ml + pw / 2) << "\" y=\"" << (height - 14)
        << "\" text-anchor=\"middle\">memory M (files)</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + ph / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (mt + ph / 2)
        << ")\">expected rate R (transmissions / file size)</text>\n";
    out << "</g>\n";

    // axes
    out << "<g stroke=\"black\" stroke-width=\"1.5\">\n"
        << "<line x1=\"" << ml << "\" y1=\"" << (mt + ph) << "\" x2=\"" << (ml + pw)
        << "\" y2=\"" << (mt + ph) << "\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << (mt + ph) << "\"/>\n</g>\n";

    int color = 0;
    double legend_y = mt + 10;
    for (const auto& [name, pts] : series) {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (pts.size() == 1) {
            out << "<circle cx=\"" << px(pts[0].first) << "\" cy=\"" << py(pts[0].second)
                << "\" r=\"4\" fill=\"" << stroke << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << stroke
                << "\" stroke-width=\"2\" points=\"";
            for (const auto& [x, y] : pts) out << px(x) << ',' << py(y) << ' ';
            out << "\"/>\n";
        }
        out << "<line x1=\"" << (ml + pw + 16) << "\" y1=\"" << legend_y << "\" x2=\""
            << (ml + pw + 44) << "\" y2=\"" << legend_y << "\" stroke=\"" << stroke
            << "\" stroke-width=\"2\"/>\n";
        out << "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" << (ml + pw + 50)
            << "\" y=\"" << (legend_y + 4) << "\">" << name << "</text>\n";
        legend_y += 20;
        ++color;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("plot_svg: write failed for " + path);
}

}  // namespace ccm
