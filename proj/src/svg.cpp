#include "softgait/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace softgait::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string line(double x1, double y1, double x2, double y2, const char* stroke, double width) {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

std::string text(double x, double y, const std::string& s, int size, const char* anchor) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
           "\" font-family=\"sans-serif\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

constexpr const char* kSeriesColor[3] = {"#4878cf", "#6acc65", "#d65f5f"};
constexpr const char* kSeriesName[3] = {"dx (BL/cycle)", "dy (BL/cycle)", "dtheta (rad/cycle)"};

}  // namespace

std::string bar_chart(const std::string& title, const std::vector<BarGroup>& groups) {
    const double width = 640, height = 400;
    const double left = 60, right = 20, top = 50, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double limit = 0.01;
    for (const BarGroup& g : groups) {
        for (int i = 0; i < 3; ++i) limit = std::max(limit, std::abs(g.values[i]) + g.errors[i]);
    }
    limit *= 1.15;
    const double mid_y = top + plot_h / 2;
    const auto y_of = [&](double v) { return mid_y - v / limit * (plot_h / 2); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                      "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                      num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += text(width / 2, 24, title, 15, "middle");
    out += line(left, mid_y, width - right, mid_y, "#444444", 1.0);  // zero line
    out += line(left, top, left, top + plot_h, "#444444", 1.0);
    for (int tick = -2; tick <= 2; ++tick) {
        const double v = limit / 2 * tick;
        out += text(left - 6, y_of(v) + 4, num(v), 10, "end");
        if (tick != 0) out += line(left, y_of(v), width - right, y_of(v), "#dddddd", 0.5);
    }

    const double group_w = groups.empty() ? plot_w : plot_w / groups.size();
    const double bar_w = group_w / 4.5;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const BarGroup& g = groups[gi];
        const double gx = left + group_w * gi + group_w / 2;
        for (int i = 0; i < 3; ++i) {
            const double bx = gx + (i - 1) * bar_w - bar_w / 2;
            const double v = g.values[i];
            const double y0 = y_of(std::max(v, 0.0));
            const double h = std::abs(y_of(v) - mid_y);
            out += "<rect x=\"" + num(bx) + "\" y=\"" + num(y0) + "\" width=\"" + num(bar_w) +
                   "\" height=\"" + num(std::max(h, 0.5)) + "\" fill=\"" + kSeriesColor[i] +
                   "\"/>\n";
            const double cx = bx + bar_w / 2;
            out += line(cx, y_of(v - g.errors[i]), cx, y_of(v + g.errors[i]), "#222222", 1.0);
        }
        out += text(gx, height - bottom + 18, g.label, 11, "middle");
    }
    for (int i = 0; i < 3; ++i) {
        const double lx = left + 10 + 180.0 * i;
        out += "<rect x=\"" + num(lx) + "\" y=\"" + num(height - 24.0) +
               "\" width=\"12\" height=\"12\" fill=\"" + kSeriesColor[i] + "\"/>\n";
        out += text(lx + 16, height - 14, kSeriesName[i], 10, "start");
    }
    out += "</svg>\n";
    return out;
}

std::string trajectory_plot(const std::string& title, const std::vector<Point>& actual,
                            const std::vector<Point>& target) {
    const double width = 520, height = 520;
    const double margin = 50;

    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    const auto widen = [&](const std::vector<Point>& pts) {
        for (const Point& p : pts) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    };
    widen(actual);
    widen(target);
    const double span = std::max({max_x - min_x, max_y - min_y, 0.05}) * 1.1;
    const double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
    const double scale = (width - 2 * margin) / span;
    const auto px = [&](double x) { return width / 2 + (x - cx) * scale; };
    const auto py = [&](double y) { return height / 2 - (y - cy) * scale; };

    const auto polyline = [&](const std::vector<Point>& pts, const char* stroke, double w,
                              const char* dash) {
        if (pts.empty()) return std::string();
        std::string s = "<polyline fill=\"none\" stroke=\"";
        s += stroke;
        s += "\" stroke-width=\"" + num(w) + "\"";
        if (dash[0]) s += std::string(" stroke-dasharray=\"") + dash + "\"";
        s += " points=\"";
        for (const Point& p : pts) s += num(px(p.x)) + "," + num(py(p.y)) + " ";
        s += "\"/>\n";
        return s;
    };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                      "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                      num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += text(width / 2, 24, title, 15, "middle");
    out += polyline(target, "#999999", 1.5, "6,4");
    out += polyline(actual, "#4878cf", 2.0, "");
    if (!actual.empty()) {
        out += "<circle cx=\"" + num(px(actual.front().x)) + "\" cy=\"" + num(py(actual.front().y)) +
               "\" r=\"4\" fill=\"#6acc65\"/>\n";
        out += "<circle cx=\"" + num(px(actual.back().x)) + "\" cy=\"" + num(py(actual.back().y)) +
               "\" r=\"4\" fill=\"#d65f5f\"/>\n";
    }
    out += text(margin, height - 12, "dashed: target   solid: executed", 10, "start");
    out += "</svg>\n";
    return out;
}

}  // namespace softgait::svg
