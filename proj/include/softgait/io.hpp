#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "softgait/control.hpp"
#include "softgait/gait.hpp"
#include "softgait/reward.hpp"
#include "softgait/search.hpp"
#include "softgait/sim.hpp"

namespace softgait {

struct SearchConfig {
    std::vector<int> leg_order = {0, 1, 2, 3};
    int rounds = 1;   // total training rounds; rounds > 1 adds refinement passes
    int repeats = 1;  // evaluations averaged per candidate
};

struct ControlConfig {
    DriftTolerance tolerance;
    int check_every = 4;
    double deadband_fraction = 0.2;
    double budget_factor = 10.0;
    int velocity_cycles = 32;  // cycles used to measure a gait's mean velocity
};

/// Everything a run needs; commands are pure functions of a RunConfig plus
/// their input files.
struct RunConfig {
    SimConfig sim;
    EvaluationConfig eval;
    bool auto_cycles = true;  // when set, cycles_per_eval defaults per axis (3 translation, 1 rotation)
    SearchConfig search;
    ControlConfig control;
    std::map<GaitAxis, RewardCoefficients> reward_overrides;
};

/// Evaluation config for one training axis, applying the per-axis default
/// cycle count unless the config pinned one explicitly.
EvaluationConfig eval_for_axis(const RunConfig& config, GaitAxis axis);

RewardCoefficients coefficients_for_axis(const RunConfig& config, GaitAxis axis);

RunConfig load_run_config(const std::filesystem::path& file);
RunConfig parse_run_config(const std::string& text);
std::string dump_run_config(const RunConfig& config);
void save_run_config(const RunConfig& config, const std::filesystem::path& file);

std::vector<TrajectorySegment> load_plan(const std::filesystem::path& file);
std::vector<TrajectorySegment> parse_plan(const std::string& text);
std::string dump_plan(const std::vector<TrajectorySegment>& segments);
void save_plan(const std::vector<TrajectorySegment>& segments, const std::filesystem::path& file);

void save_gait(const GaitAssignment& g, const std::filesystem::path& file,
               const std::string& provenance = "");
GaitAssignment load_gait(const std::filesystem::path& file);

/// Shortest round-trip decimal representation (std::to_chars); keeps every
/// CSV byte-stable under replay.
std::string format_double(double v);

std::string training_log_csv(const TrainingLog& log);
std::string trace_csv(const std::vector<TraceEntry>& entries);
std::string cycles_csv(const std::vector<CycleRow>& rows);

struct VelocityRow {
    std::string label;
    VelocityStats stats;
    int n_cycles = 0;
};
std::string velocities_csv(const std::vector<VelocityRow>& rows);

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, const std::string& content);

}  // namespace softgait
