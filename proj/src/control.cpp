#include "softgait/control.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "softgait/errors.hpp"

namespace softgait {

namespace {

constexpr double kTiny = 1e-12;

enum class DriftComp { X, Y, Theta };

double component(const Pose2D& drift, DriftComp c) {
    switch (c) {
        case DriftComp::X: return drift.x;
        case DriftComp::Y: return drift.y;
        case DriftComp::Theta: return drift.theta;
    }
    return 0.0;
}

double tolerance_of(const DriftTolerance& tol, DriftComp c) {
    switch (c) {
        case DriftComp::X: return tol.x_tol;
        case DriftComp::Y: return tol.y_tol;
        case DriftComp::Theta: return tol.theta_tol;
    }
    return 0.0;
}

std::array<DriftComp, 2> monitored_components(TrajectorySegment::Kind kind) {
    if (kind == TrajectorySegment::Kind::Translation)
        return {DriftComp::Y, DriftComp::Theta};
    return {DriftComp::X, DriftComp::Y};
}

/// Mean on-axis displacement per cycle in segment units (m or rad), signed.
double on_axis_per_cycle(const GaitSet& gs, GaitAxis axis, TrajectorySegment::Kind kind) {
    const auto it = gs.mean_velocity.find(axis);
    if (it == gs.mean_velocity.end()) return 0.0;
    if (kind == TrajectorySegment::Kind::Translation) return it->second.dx * kBodyLengthM;
    return it->second.dtheta;
}

/// Expected first-order change of the segment-frame drift when one cycle of
/// `axis` runs from relative heading `rel_theta`.
Pose2D expected_drift_delta(const GaitSet& gs, GaitAxis axis, double rel_theta) {
    const auto it = gs.mean_velocity.find(axis);
    if (it == gs.mean_velocity.end()) return {};
    const double vx = it->second.dx * kBodyLengthM;
    const double vy = it->second.dy * kBodyLengthM;
    const double c = std::cos(rel_theta);
    const double s = std::sin(rel_theta);
    return {c * vx - s * vy, s * vx + c * vy, it->second.dtheta};
}

struct SegmentRun {
    SimRobot& robot;
    const GaitSet& gs;
    const TrajectorySegment& seg;
    const ControlParams& params;
    int segment_index;
    std::vector<TraceEntry>& entries;

    Pose2D frame;            // segment frame = pose at segment start
    Pose2D drift;            // current pose relative to the frame
    double unwrapped = 0.0;  // accumulated heading change, wrap-safe
    double prev_rel_theta = 0.0;
    std::int64_t remaining = 0;
    EvaluationConfig step_cfg;

    SegmentRun(SimRobot& r, const GaitSet& g, const TrajectorySegment& s, const ControlParams& p,
               int idx, std::vector<TraceEntry>& out)
        : robot(r), gs(g), seg(s), params(p), segment_index(idx), entries(out) {
        frame = robot.pose();
        step_cfg = {params.step_delay_s, 1, 0.0};
        const double per_cycle = std::abs(on_axis_per_cycle(gs, primary_axis(seg), seg.kind));
        if (per_cycle > kTiny) {
            remaining = static_cast<std::int64_t>(
                std::ceil(params.budget_factor * std::abs(seg.magnitude) / per_cycle));
            remaining = std::max<std::int64_t>(remaining, params.check_every);
        } else {
            remaining = params.fallback_budget;
        }
    }

    double progress() const {
        if (seg.kind == TrajectorySegment::Kind::Translation)
            return (seg.magnitude >= 0 ? 1.0 : -1.0) * drift.x;
        return (seg.magnitude >= 0 ? 1.0 : -1.0) * unwrapped;
    }

    bool complete() const { return progress() >= std::abs(seg.magnitude); }

    void run_cycle(GaitAxis axis, bool corrective) {
        const ExecResult r = robot.execute_gait(gs.gaits.at(axis), step_cfg);
        drift = between(frame, robot.pose());
        unwrapped += normalize_angle(drift.theta - prev_rel_theta);
        prev_rel_theta = drift.theta;
        entries.push_back({r.per_cycle.back().time_s, robot.pose(), axis, drift, corrective, false,
                           segment_index});
        --remaining;
    }

    double deadband(DriftComp c) const {
        return params.deadband_fraction * tolerance_of(params.tolerance, c);
    }

    /// Monitored component with the largest tolerance-normalized magnitude
    /// above `threshold_fraction` of its tolerance, if any.
    std::optional<DriftComp> worst_component(double threshold_fraction) const {
        std::optional<DriftComp> worst;
        double worst_excess = threshold_fraction;
        for (DriftComp c : monitored_components(seg.kind)) {
            const double excess = std::abs(component(drift, c)) / tolerance_of(params.tolerance, c);
            if (excess > worst_excess) {
                worst_excess = excess;
                worst = c;
            }
        }
        return worst;
    }

    /// Corrective gait expected to shrink the targeted component the most.
    /// Empty when no candidate improves on the current value.
    std::optional<GaitAxis> pick_corrective(DriftComp target) const {
        std::vector<GaitAxis> candidates;
        if (target == DriftComp::Theta) {
            candidates = {GaitAxis::PlusTheta, GaitAxis::MinusTheta};
        } else if (seg.kind == TrajectorySegment::Kind::Translation) {
            candidates = {GaitAxis::PlusY, GaitAxis::MinusY};
        } else {
            candidates = {GaitAxis::PlusX, GaitAxis::MinusX, GaitAxis::PlusY, GaitAxis::MinusY};
        }
        const double current = component(drift, target);
        std::optional<GaitAxis> best;
        double best_after = std::abs(current);
        for (GaitAxis axis : candidates) {
            const Pose2D delta = expected_drift_delta(gs, axis, drift.theta);
            const double after = std::abs(current + component(delta, target));
            if (after < best_after - kTiny) {
                best_after = after;
                best = axis;
            }
        }
        return best;
    }

    /// Runs corrective episodes until every monitored component sits below
    /// threshold_fraction of its tolerance (or nothing can improve). Returns
    /// false when the budget runs out.
    bool correction_chain(double threshold_fraction) {
        while (true) {
            const auto target = worst_component(threshold_fraction);
            if (!target) return true;
            bool executed = false;
            while (std::abs(component(drift, *target)) > deadband(*target)) {
                const auto axis = pick_corrective(*target);
                if (!axis) break;
                if (remaining <= 0) return false;
                run_cycle(*axis, true);
                executed = true;
            }
            if (!executed) return true;  // nothing improvable; give up on this target
        }
    }

    /// Returns true when the segment completed, false on budget exhaustion.
    bool run() {
        const GaitAxis primary = primary_axis(seg);
        while (true) {
            for (int b = 0; b < params.check_every; ++b) {
                if (remaining <= 0) return false;
                run_cycle(primary, false);
                if (complete()) {
                    settle();
                    return true;
                }
            }
            entries.back().drift_checked = true;
            if (!correction_chain(1.0)) return false;
            if (complete()) {
                settle();
                return true;
            }
        }
    }

    /// Arrive clean: corrects residual drift down to the deadband before the
    /// next segment starts, budget permitting.
    void settle() { correction_chain(params.deadband_fraction); }
};

void require_axes(const GaitSet& gs) {
    for (GaitAxis axis : kAllAxes) {
        if (!gs.gaits.count(axis) || !gs.mean_velocity.count(axis))
            throw ConfigError("gait set is missing axis " + std::string(axis_name(axis)));
    }
}

}  // namespace

GaitAxis primary_axis(const TrajectorySegment& seg) {
    if (seg.kind == TrajectorySegment::Kind::Translation)
        return seg.magnitude >= 0 ? GaitAxis::PlusX : GaitAxis::MinusX;
    return seg.magnitude >= 0 ? GaitAxis::PlusTheta : GaitAxis::MinusTheta;
}

std::vector<std::string> validate_gait_set(const GaitSet& gs) {
    std::vector<std::string> problems;
    for (GaitAxis axis : kAllAxes) {
        if (!gs.gaits.count(axis)) {
            problems.push_back("missing gait for axis " + std::string(axis_name(axis)));
            continue;
        }
        const auto mv = gs.mean_velocity.find(axis);
        if (mv == gs.mean_velocity.end()) {
            problems.push_back("missing mean velocity for axis " + std::string(axis_name(axis)));
            continue;
        }
        if (reward(mv->second, preset(axis)) <= 0) {
            problems.push_back("axis " + std::string(axis_name(axis)) +
                               " has non-positive reward under its preset");
        }
    }
    return problems;
}

VelocityStats measure_mean_velocity(SimRobot& robot, const GaitAssignment& g,
                                    const EvaluationConfig& eval, int n_cycles) {
    if (n_cycles < 2) throw ConfigError("measure_mean_velocity needs n_cycles >= 2");
    EvaluationConfig cfg = eval;
    cfg.cycles_per_eval = n_cycles;
    cfg.per_eval_overhead_s = 0.0;
    const ExecResult r = robot.execute_gait(g, cfg);

    std::vector<BodyDisplacement> per;
    per.reserve(r.per_cycle.size());
    Pose2D prev = r.before;
    for (const CyclePoint& cp : r.per_cycle) {
        per.push_back(body_frame_displacement(prev, cp.pose, 1));
        prev = cp.pose;
    }

    VelocityStats stats;
    for (const BodyDisplacement& d : per) {
        stats.mean.dx += d.dx;
        stats.mean.dy += d.dy;
        stats.mean.dtheta += d.dtheta;
    }
    const double n = static_cast<double>(per.size());
    stats.mean.dx /= n;
    stats.mean.dy /= n;
    stats.mean.dtheta /= n;
    double sx = 0, sy = 0, st = 0;
    for (const BodyDisplacement& d : per) {
        sx += (d.dx - stats.mean.dx) * (d.dx - stats.mean.dx);
        sy += (d.dy - stats.mean.dy) * (d.dy - stats.mean.dy);
        st += (d.dtheta - stats.mean.dtheta) * (d.dtheta - stats.mean.dtheta);
    }
    stats.stddev = {std::sqrt(sx / (n - 1)), std::sqrt(sy / (n - 1)), std::sqrt(st / (n - 1))};
    return stats;
}

TraceResult follow_segment(SimRobot& robot, const GaitSet& gs, const TrajectorySegment& seg,
                           const ControlParams& params, int segment_index) {
    if (seg.magnitude == 0.0) throw ConfigError("segment magnitude must be nonzero");
    if (params.check_every < 1) throw ConfigError("check_every must be >= 1");
    require_axes(gs);

    TraceResult result;
    SegmentRun run(robot, gs, seg, params, segment_index, result.entries);
    const bool completed = run.run();
    result.status = completed ? TraceStatus::Completed : TraceStatus::BudgetExhausted;
    result.failed_segment = completed ? -1 : segment_index;
    result.final_pose = robot.pose();
    return result;
}

TraceResult trace_path(SimRobot& robot, const GaitSet& gs,
                       const std::vector<TrajectorySegment>& segments,
                       const ControlParams& params) {
    if (segments.empty()) throw ConfigError("trace_path needs at least one segment");
    require_axes(gs);

    TraceResult result;
    for (int i = 0; i < static_cast<int>(segments.size()); ++i) {
        if (segments[i].magnitude == 0.0) throw ConfigError("segment magnitude must be nonzero");
        SegmentRun run(robot, gs, segments[i], params, i, result.entries);
        if (!run.run()) {
            result.status = TraceStatus::BudgetExhausted;
            result.failed_segment = i;
            break;
        }
    }
    result.final_pose = robot.pose();
    return result;
}

std::vector<TrajectorySegment> letter_n(double height_m, double width_m) {
    if (height_m <= 0 || width_m <= 0) throw ConfigError("letter_n needs positive height and width");
    const double diagonal = std::hypot(height_m, width_m);
    const double turn = std::numbers::pi - std::atan2(width_m, height_m);
    using Kind = TrajectorySegment::Kind;
    return {{Kind::Translation, height_m},
            {Kind::Rotation, -turn},
            {Kind::Translation, diagonal},
            {Kind::Rotation, turn},
            {Kind::Translation, height_m}};
}

std::vector<PlanStep> open_loop_plan(const GaitSet& gs,
                                     const std::vector<TrajectorySegment>& segments) {
    require_axes(gs);
    std::vector<PlanStep> plan;
    plan.reserve(segments.size());
    for (const TrajectorySegment& seg : segments) {
        if (seg.magnitude == 0.0) throw ConfigError("segment magnitude must be nonzero");
        const GaitAxis axis = primary_axis(seg);
        const double per_cycle = on_axis_per_cycle(gs, axis, seg.kind);
        if (std::abs(per_cycle) < kTiny)
            throw PlanningError("axis " + std::string(axis_name(axis)) +
                                " has zero mean on-axis velocity");
        const double cycles = seg.magnitude / per_cycle;
        if (cycles < 0)
            throw PlanningError("axis " + std::string(axis_name(axis)) +
                                " moves against the segment direction");
        plan.push_back({axis, static_cast<int>(std::llround(cycles))});
    }
    return plan;
}

TraceResult execute_open_loop(SimRobot& robot, const GaitSet& gs,
                              const std::vector<TrajectorySegment>& segments,
                              const ControlParams& params) {
    const std::vector<PlanStep> plan = open_loop_plan(gs, segments);
    const EvaluationConfig step_cfg{params.step_delay_s, 1, 0.0};

    TraceResult result;
    for (int i = 0; i < static_cast<int>(plan.size()); ++i) {
        const Pose2D frame = robot.pose();
        for (int c = 0; c < plan[i].cycles; ++c) {
            const ExecResult r = robot.execute_gait(gs.gaits.at(plan[i].axis), step_cfg);
            const Pose2D drift = between(frame, robot.pose());
            result.entries.push_back(
                {r.per_cycle.back().time_s, robot.pose(), plan[i].axis, drift, false, false, i});
        }
    }
    result.final_pose = robot.pose();
    return result;
}

Pose2D ideal_end_pose(const Pose2D& start, const std::vector<TrajectorySegment>& segments) {
    Pose2D pose = start;
    for (const TrajectorySegment& seg : segments) {
        if (seg.kind == TrajectorySegment::Kind::Translation) {
            pose = compose(pose, {seg.magnitude, 0.0, 0.0});
        } else {
            pose = compose(pose, {0.0, 0.0, seg.magnitude});
        }
    }
    return pose;
}

}  // namespace softgait
