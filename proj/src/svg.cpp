#include "predprey/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace predprey {

namespace {

constexpr double kPanelWidth = 860.0;
constexpr double kPanelHeight = 340.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 44.0;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void include(const Vec2& p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }

    void pad() {
        if (!(xmin <= xmax)) { xmin = 0.0; xmax = 1.0; }
        if (!(ymin <= ymax)) { ymin = 0.0; ymax = 1.0; }
        const double dx = xmax - xmin, dy = ymax - ymin;
        const double ex = dx > 0.0 ? 0.05 * dx : std::max(1.0, std::abs(xmax)) * 0.05;
        const double ey = dy > 0.0 ? 0.05 * dy : std::max(1.0, std::abs(ymax)) * 0.05;
        xmin -= ex; xmax += ex;
        ymin -= ey; ymax += ey;
    }
};

class Panel {
public:
    Panel(double top, Bounds bounds) : top_(top), b_(bounds) {}

    double sx(double x) const {
        return kMarginLeft + (x - b_.xmin) / (b_.xmax - b_.xmin) *
                                 (kPanelWidth - kMarginLeft - kMarginRight);
    }
    double sy(double y) const {
        return top_ + kMarginTop +
               (b_.ymax - y) / (b_.ymax - b_.ymin) * (kPanelHeight - kMarginTop - kMarginBottom);
    }

    void frame(std::ostream& out, const std::string& title, const std::string& xlabel,
               const std::string& ylabel) const {
        const double x0 = sx(b_.xmin), x1 = sx(b_.xmax);
        const double y0 = sy(b_.ymin), y1 = sy(b_.ymax);
        out << "<rect x='" << px(x0) << "' y='" << px(y1) << "' width='" << px(x1 - x0)
            << "' height='" << px(y0 - y1) << "' fill='white' stroke='#444'/>\n";
        out << "<text x='" << px((x0 + x1) / 2) << "' y='" << px(top_ + 18)
            << "' text-anchor='middle' font-size='14'>" << title << "</text>\n";
        out << "<text x='" << px((x0 + x1) / 2) << "' y='" << px(y0 + 34)
            << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
        out << "<text x='" << px(x0 - 52) << "' y='" << px((y0 + y1) / 2)
            << "' text-anchor='middle' font-size='12' transform='rotate(-90 " << px(x0 - 52)
            << " " << px((y0 + y1) / 2) << ")'>" << ylabel << "</text>\n";
        for (int i = 0; i <= 4; ++i) {
            const double fx = b_.xmin + (b_.xmax - b_.xmin) * i / 4.0;
            const double fy = b_.ymin + (b_.ymax - b_.ymin) * i / 4.0;
            out << "<line x1='" << px(sx(fx)) << "' y1='" << px(y0) << "' x2='" << px(sx(fx))
                << "' y2='" << px(y0 + 4) << "' stroke='#444'/>\n";
            out << "<text x='" << px(sx(fx)) << "' y='" << px(y0 + 16)
                << "' text-anchor='middle' font-size='10'>" << tick_label(fx) << "</text>\n";
            out << "<line x1='" << px(x0 - 4) << "' y1='" << px(sy(fy)) << "' x2='" << px(x0)
                << "' y2='" << px(sy(fy)) << "' stroke='#444'/>\n";
            out << "<text x='" << px(x0 - 6) << "' y='" << px(sy(fy) + 3)
                << "' text-anchor='end' font-size='10'>" << tick_label(fy) << "</text>\n";
        }
    }

    void polyline(std::ostream& out, const PlotSeries& series) const {
        if (series.points.empty()) return;
        out << "<polyline fill='none' stroke='" << series.color << "' stroke-width='1.2' points='";
        for (const auto& p : series.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            out << px(sx(p.x)) << ',' << px(sy(p.y)) << ' ';
        }
        out << "'/>\n";
    }

    void marker(std::ostream& out, const PlotMarker& m) const {
        out << "<circle cx='" << px(sx(m.at.x)) << "' cy='" << px(sy(m.at.y))
            << "' r='4' fill='black'/>\n";
        out << "<text x='" << px(sx(m.at.x) + 6) << "' y='" << px(sy(m.at.y) - 6)
            << "' font-size='11'>" << m.label << "</text>\n";
    }

    void legend(std::ostream& out, std::span<const PlotSeries> series) const {
        double lx = sx(b_.xmax) - 130.0;
        double ly = top_ + kMarginTop + 12.0;
        for (const auto& s : series) {
            if (s.points.empty()) continue;
            out << "<line x1='" << px(lx) << "' y1='" << px(ly - 4) << "' x2='" << px(lx + 24)
                << "' y2='" << px(ly - 4) << "' stroke='" << s.color << "' stroke-width='2'/>\n";
            out << "<text x='" << px(lx + 30) << "' y='" << px(ly) << "' font-size='11'>"
                << s.label << "</text>\n";
            ly += 14.0;
        }
    }

private:
    double top_;
    Bounds b_;
};

} // namespace

void write_scenario_svg(std::ostream& out, const std::string& title,
                        std::span<const PlotSeries> time_series,
                        std::span<const PlotSeries> phase_series,
                        std::span<const PlotMarker> equilibria) {
    const double height = 2.0 * kPanelHeight + 30.0;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kPanelWidth << "' height='"
        << height << "' font-family='sans-serif'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << px(kPanelWidth / 2) << "' y='20' text-anchor='middle' font-size='16'>"
        << title << "</text>\n";

    Bounds tb;
    for (const auto& s : time_series) {
        for (const auto& p : s.points) tb.include(p);
    }
    tb.pad();
    Panel top(30.0, tb);
    top.frame(out, "population vs time", "t", "density");
    for (const auto& s : time_series) top.polyline(out, s);
    top.legend(out, time_series);

    Bounds pb;
    for (const auto& s : phase_series) {
        for (const auto& p : s.points) pb.include(p);
    }
    for (const auto& m : equilibria) pb.include(m.at);
    pb.pad();
    Panel bottom(30.0 + kPanelHeight, pb);
    bottom.frame(out, "phase portrait", "prey x", "predator y");
    for (const auto& s : phase_series) bottom.polyline(out, s);
    for (const auto& m : equilibria) bottom.marker(out, m);
    bottom.legend(out, phase_series);

    out << "</svg>\n";
}

} // namespace predprey
