#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace softgait {

/// Per-gait-cycle body-frame motion: dx, dy in body lengths, dtheta in rad.
struct BodyDisplacement {
    double dx = 0.0;
    double dy = 0.0;
    double dtheta = 0.0;

    bool operator==(const BodyDisplacement&) const = default;
};

/// The six reward weights: (a, b, c) linear on (dx, dy, dtheta) and
/// (d, e, f) on their absolute values.
struct RewardCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
    double f = 0.0;

    bool operator==(const RewardCoefficients&) const = default;
};

/// The six body-centered motion directions a gait can be trained for.
enum class GaitAxis { PlusX, MinusX, PlusY, MinusY, PlusTheta, MinusTheta };

inline constexpr std::array<GaitAxis, 6> kAllAxes = {
    GaitAxis::PlusX,  GaitAxis::MinusX,     GaitAxis::PlusY,
    GaitAxis::MinusY, GaitAxis::PlusTheta,  GaitAxis::MinusTheta,
};

/// r = a*dx + b*dy + c*dtheta + d*|dx| + e*|dy| + f*|dtheta|
double reward(const BodyDisplacement& v, const RewardCoefficients& k);

/// Stock training coefficients per axis: +-1 on the primary axis, -0.1 on
/// the absolute terms of the two off-axes.
RewardCoefficients preset(GaitAxis axis);

std::string_view axis_name(GaitAxis axis);             // "+x", "-theta", ...
std::string_view axis_token(GaitAxis axis);            // "plus_x", ... (filenames)
std::optional<GaitAxis> parse_axis(std::string_view name);
bool axis_is_translation(GaitAxis axis);

}  // namespace softgait
