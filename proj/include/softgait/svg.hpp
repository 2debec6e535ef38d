#pragma once

#include <array>
#include <string>
#include <vector>

namespace softgait::svg {

struct BarGroup {
    std::string label;
    std::array<double, 3> values{};  // dx BL/cycle, dy BL/cycle, dtheta rad/cycle
    std::array<double, 3> errors{};  // one stddev
};

/// Grouped bar chart with error whiskers (one group per gait axis).
std::string bar_chart(const std::string& title, const std::vector<BarGroup>& groups);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Top-down trajectory plot: executed path over the target polyline.
std::string trajectory_plot(const std::string& title, const std::vector<Point>& actual,
                            const std::vector<Point>& target);

}  // namespace softgait::svg
