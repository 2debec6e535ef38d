#pragma once

#include <cmath>
#include <numbers>

namespace softgait {

/// Planar pose. theta is kept normalized to (-pi, pi].
struct Pose2D {
    double x = 0.0;      // m
    double y = 0.0;      // m
    double theta = 0.0;  // rad

    bool operator==(const Pose2D&) const = default;
};

/// Body twist applied over one gait cycle.
struct Twist2D {
    double vx = 0.0;     // m
    double vy = 0.0;     // m
    double omega = 0.0;  // rad

    bool operator==(const Twist2D&) const = default;
};

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    t = std::fmod(t + std::numbers::pi, two_pi);
    if (t <= 0.0) t += two_pi;
    return t - std::numbers::pi;
}

/// Pose composition a * b (b expressed in the frame of a).
inline Pose2D compose(const Pose2D& a, const Pose2D& b) {
    const double c = std::cos(a.theta);
    const double s = std::sin(a.theta);
    return {a.x + c * b.x - s * b.y,
            a.y + s * b.x + c * b.y,
            normalize_angle(a.theta + b.theta)};
}

/// Relative pose a^-1 * b: where b sits in the frame of a.
inline Pose2D between(const Pose2D& a, const Pose2D& b) {
    const double c = std::cos(a.theta);
    const double s = std::sin(a.theta);
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return {c * dx + s * dy,
            -s * dx + c * dy,
            normalize_angle(b.theta - a.theta)};
}

/// SE(2) exponential: relative pose reached by integrating a constant twist
/// over one cycle. Series expansion below 1e-4 avoids the (1-cos w)/w
/// cancellation.
inline Pose2D se2_exp(const Twist2D& xi) {
    const double w = xi.omega;
    double s, c1;  // sin(w)/w and (1-cos(w))/w
    if (std::abs(w) < 1e-4) {
        const double w2 = w * w;
        s = 1.0 - w2 / 6.0;
        c1 = w / 2.0 - w * w2 / 24.0;
    } else {
        s = std::sin(w) / w;
        c1 = (1.0 - std::cos(w)) / w;
    }
    return {s * xi.vx - c1 * xi.vy,
            c1 * xi.vx + s * xi.vy,
            normalize_angle(w)};
}

}  // namespace softgait
