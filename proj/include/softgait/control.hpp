#pragma once

#include <map>
#include <string>
#include <vector>

#include "softgait/gait.hpp"
#include "softgait/pose2.hpp"
#include "softgait/reward.hpp"
#include "softgait/sim.hpp"

namespace softgait {

/// The six axis gaits plus their measured mean velocities (BL/cycle,
/// rad/cycle). A usable set has every axis present with positive reward
/// under that axis's preset.
struct GaitSet {
    std::map<GaitAxis, GaitAssignment> gaits;
    std::map<GaitAxis, BodyDisplacement> mean_velocity;
};

/// Returns one message per violated gait-set requirement; empty when usable.
std::vector<std::string> validate_gait_set(const GaitSet& gs);

/// A trajectory piece: pure translation along body x (meters) or pure
/// rotation about z (radians). Magnitude is signed and nonzero.
struct TrajectorySegment {
    enum class Kind { Translation, Rotation };
    Kind kind = Kind::Translation;
    double magnitude = 0.0;
};

struct DriftTolerance {
    double x_tol = 0.05;      // m
    double y_tol = 0.05;      // m
    double theta_tol = 0.05;  // rad
};

struct ControlParams {
    DriftTolerance tolerance;
    int check_every = 4;             // primary cycles per drift evaluation
    double deadband_fraction = 0.2;  // correction stops at this fraction of tolerance
    double budget_factor = 10.0;     // cycle budget = factor x open-loop estimate
    int fallback_budget = 64;        // budget when a gait has no usable mean velocity
    double step_delay_s = 0.1;       // simulated step timing for the run
};

/// One executed gait cycle. `drift` is the robot's pose relative to the
/// frame established at the segment start.
struct TraceEntry {
    double time_s = 0.0;
    Pose2D pose;              // world frame
    GaitAxis axis = GaitAxis::PlusX;
    Pose2D drift;             // segment frame
    bool corrective = false;
    bool drift_checked = false;  // a scheduled drift evaluation happened here
    int segment_index = 0;
};

enum class TraceStatus { Completed, BudgetExhausted };

struct TraceResult {
    std::vector<TraceEntry> entries;
    TraceStatus status = TraceStatus::Completed;
    int failed_segment = -1;
    Pose2D final_pose;
};

struct VelocityStats {
    BodyDisplacement mean;
    BodyDisplacement stddev;  // sample standard deviation
};

/// Runs n_cycles of one gait and averages the per-cycle body-frame
/// displacements. n_cycles >= 2.
VelocityStats measure_mean_velocity(SimRobot& robot, const GaitAssignment& g,
                                    const EvaluationConfig& eval, int n_cycles);

/// Closed-loop tracking of one segment: primary-gait batches of check_every
/// cycles with a drift evaluation after each batch. When a monitored drift
/// component exceeds its tolerance, opposing corrective gaits run until the
/// component falls inside the deadband. Translation segments monitor
/// (y, theta) and correct with {+y,-y,+theta,-theta}; rotation segments
/// monitor (x, y) and correct with {+x,-x,+y,-y}.
TraceResult follow_segment(SimRobot& robot, const GaitSet& gs, const TrajectorySegment& seg,
                           const ControlParams& params, int segment_index = 0);

/// Follows segments in order, each in the frame established at its start.
TraceResult trace_path(SimRobot& robot, const GaitSet& gs,
                       const std::vector<TrajectorySegment>& segments,
                       const ControlParams& params);

/// Segment list tracing a capital N: up the left stroke, down the diagonal
/// (toward the robot's right, -y), up the right stroke. Turn magnitudes come
/// from atan2(width, height).
std::vector<TrajectorySegment> letter_n(double height_m, double width_m);

struct PlanStep {
    GaitAxis axis = GaitAxis::PlusX;
    int cycles = 0;
};

/// Open-loop schedule: per segment, round(magnitude / mean on-axis
/// displacement per cycle) cycles of the primary gait. No feedback.
std::vector<PlanStep> open_loop_plan(const GaitSet& gs,
                                     const std::vector<TrajectorySegment>& segments);

/// Executes the open-loop plan, producing a trace in the same format as the
/// closed-loop runs.
TraceResult execute_open_loop(SimRobot& robot, const GaitSet& gs,
                              const std::vector<TrajectorySegment>& segments,
                              const ControlParams& params);

/// Pose reached by following the segments exactly, starting from `start`.
Pose2D ideal_end_pose(const Pose2D& start, const std::vector<TrajectorySegment>& segments);

/// Primary gait for a segment (Plus/MinusX for translations, Plus/MinusTheta
/// for rotations, by magnitude sign).
GaitAxis primary_axis(const TrajectorySegment& seg);

}  // namespace softgait
