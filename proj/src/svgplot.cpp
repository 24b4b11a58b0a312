#include "rbsim/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rbsim {

namespace {

std::string g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Frame {
    static constexpr double width = 800, height = 500;
    static constexpr double left = 70, right = 770, top = 40, bottom = 440;
    double xmin, xmax, ymin, ymax;

    double X(double x) const {
        return left + (x - xmin) / (xmax - xmin) * (right - left);
    }
    double Y(double y) const {
        return bottom - (y - ymin) / (ymax - ymin) * (bottom - top);
    }
};

void polyline(std::ostringstream& o, const Frame& fr,
              const std::vector<std::pair<double, double>>& pts, const char* color,
              bool line) {
    if (line && pts.size() > 1) {
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts)
            o << g6(fr.X(x)) << ',' << g6(fr.Y(y)) << ' ';
        o << "\"/>\n";
    }
    for (const auto& [x, y] : pts)
        o << "<circle cx=\"" << g6(fr.X(x)) << "\" cy=\"" << g6(fr.Y(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
}

void axes(std::ostringstream& o, const Frame& fr, const std::string& xlabel,
          const std::string& ylabel) {
    o << "<rect x=\"" << g6(Frame::left) << "\" y=\"" << g6(Frame::top) << "\" width=\""
      << g6(Frame::right - Frame::left) << "\" height=\"" << g6(Frame::bottom - Frame::top)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = fr.xmin + (fr.xmax - fr.xmin) * i / nticks;
        const double fy = fr.ymin + (fr.ymax - fr.ymin) * i / nticks;
        const double px = fr.X(fx);
        const double py = fr.Y(fy);
        o << "<line x1=\"" << g6(px) << "\" y1=\"" << g6(Frame::bottom) << "\" x2=\"" << g6(px)
          << "\" y2=\"" << g6(Frame::bottom + 6) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << g6(px) << "\" y=\"" << g6(Frame::bottom + 22)
          << "\" font-size=\"13\" text-anchor=\"middle\">" << g6(fx) << "</text>\n";
        o << "<line x1=\"" << g6(Frame::left - 6) << "\" y1=\"" << g6(py) << "\" x2=\""
          << g6(Frame::left) << "\" y2=\"" << g6(py) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << g6(Frame::left - 10) << "\" y=\"" << g6(py + 4)
          << "\" font-size=\"13\" text-anchor=\"end\">" << g6(fy) << "</text>\n";
    }
    o << "<text x=\"" << g6((Frame::left + Frame::right) / 2) << "\" y=\""
      << g6(Frame::bottom + 45) << "\" font-size=\"15\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
    o << "<text x=\"18\" y=\"" << g6((Frame::top + Frame::bottom) / 2)
      << "\" font-size=\"15\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << g6((Frame::top + Frame::bottom) / 2) << ")\">" << ylabel << "</text>\n";
}

} // namespace

std::string render_plot(const SweepResult& r, PlotKind kind) {
    if (r.points.empty())
        throw error("nothing to plot: empty sweep result");

    const bool cm = (r.axis == 'x' || r.axis == 'y');
    const double xs = cm ? 100.0 : 1.0;
    const std::string xlabel =
        std::string("receiver displacement d") + r.axis + (cm ? " (cm)" : " (m)");

    std::vector<std::pair<double, double>> s1, s2;
    for (const SweepPoint& p : r.points) {
        if (kind == PlotKind::power) {
            s1.emplace_back(p.displacement_m * xs, p.beam_power_w);
            s2.emplace_back(p.displacement_m * xs, p.electrical_power_w);
        } else {
            s1.emplace_back(p.displacement_m * xs, p.eta_t);
        }
    }

    Frame fr{};
    fr.xmin = s1.front().first;
    fr.xmax = s1.back().first;
    if (fr.xmin == fr.xmax) {
        fr.xmin -= 1.0;
        fr.xmax += 1.0;
    }
    if (kind == PlotKind::efficiency) {
        fr.ymin = 0.0;
        fr.ymax = 1.0;
    } else {
        fr.ymin = 0.0;
        fr.ymax = 0.0;
        for (const auto& [x, y] : s1) fr.ymax = std::max(fr.ymax, y);
        for (const auto& [x, y] : s2) fr.ymax = std::max(fr.ymax, y);
        if (fr.ymax <= 0.0) fr.ymax = 1.0;
        fr.ymax *= 1.05;
    }

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
    o << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    const bool line = r.points.size() > 1;
    if (kind == PlotKind::power) {
        axes(o, fr, xlabel, "power (W)");
        polyline(o, fr, s1, "#1f77b4", line);
        polyline(o, fr, s2, "#d62728", line);
        o << "<text x=\"690\" y=\"60\" font-size=\"13\" fill=\"#1f77b4\">beam</text>\n";
        o << "<text x=\"690\" y=\"78\" font-size=\"13\" fill=\"#d62728\">electrical</text>\n";
    } else {
        axes(o, fr, xlabel, "transmission efficiency eta_t");
        polyline(o, fr, s1, "#2ca02c", line);
    }
    o << "</svg>\n";
    return o.str();
}

void emit_plot(const SweepResult& result, PlotKind kind, const std::string& path) {
    const std::string svg = render_plot(result, kind);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << svg;
    if (!out)
        throw io_error("error while writing: " + path);
}

} // namespace rbsim
