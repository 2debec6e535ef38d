#include "softgait/reward.hpp"

#include <cmath>

namespace softgait {

double reward(const BodyDisplacement& v, const RewardCoefficients& k) {
    return k.a * v.dx + k.b * v.dy + k.c * v.dtheta +
           k.d * std::abs(v.dx) + k.e * std::abs(v.dy) + k.f * std::abs(v.dtheta);
}

RewardCoefficients preset(GaitAxis axis) {
    switch (axis) {
        case GaitAxis::PlusX:      return {1.0, 0.0, 0.0, 0.0, -0.1, -0.1};
        case GaitAxis::MinusX:     return {-1.0, 0.0, 0.0, 0.0, -0.1, -0.1};
        case GaitAxis::PlusY:      return {0.0, 1.0, 0.0, -0.1, 0.0, -0.1};
        case GaitAxis::MinusY:     return {0.0, -1.0, 0.0, -0.1, 0.0, -0.1};
        case GaitAxis::PlusTheta:  return {0.0, 0.0, 1.0, -0.1, -0.1, 0.0};
        case GaitAxis::MinusTheta: return {0.0, 0.0, -1.0, -0.1, -0.1, 0.0};
    }
    return {};
}

std::string_view axis_name(GaitAxis axis) {
    switch (axis) {
        case GaitAxis::PlusX: return "+x";
        case GaitAxis::MinusX: return "-x";
        case GaitAxis::PlusY: return "+y";
        case GaitAxis::MinusY: return "-y";
        case GaitAxis::PlusTheta: return "+theta";
        case GaitAxis::MinusTheta: return "-theta";
    }
    return "?";
}

std::string_view axis_token(GaitAxis axis) {
    switch (axis) {
        case GaitAxis::PlusX: return "plus_x";
        case GaitAxis::MinusX: return "minus_x";
        case GaitAxis::PlusY: return "plus_y";
        case GaitAxis::MinusY: return "minus_y";
        case GaitAxis::PlusTheta: return "plus_theta";
        case GaitAxis::MinusTheta: return "minus_theta";
    }
    return "?";
}

std::optional<GaitAxis> parse_axis(std::string_view name) {
    for (GaitAxis axis : kAllAxes) {
        if (name == axis_name(axis) || name == axis_token(axis)) return axis;
    }
    return std::nullopt;
}

bool axis_is_translation(GaitAxis axis) {
    return axis != GaitAxis::PlusTheta && axis != GaitAxis::MinusTheta;
}

}  // namespace softgait
