#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "softgait/gait.hpp"
#include "softgait/pose2.hpp"
#include "softgait/reward.hpp"
#include "softgait/rng.hpp"

namespace softgait {

/// Per-axis scale triple (x m, y m, theta rad).
struct XYTheta {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    bool operator==(const XYTheta&) const = default;
};

/// Seeded hardware stand-in parameters. Defaults are desk-scale values sized
/// so that gaits the search actually selects (sums of near-best entries over
/// four legs) move in the sub-0.1 BL/cycle range, with noise at 10% of the
/// effect scale.
struct SimConfig {
    std::uint64_t seed = 42;
    XYTheta effect_scale{0.0015, 0.0015, 0.008};    // latent-table generation scale
    XYTheta noise_sigma{0.00015, 0.00015, 0.0008};  // per-cycle Gaussian noise
    double wear_rate = 0.0;                         // random-walk scale per cycle, relative to effect_scale
    double max_step_translation = 0.005;            // m, per-leg per-cycle clamp
    double max_step_rotation = 0.03;                // rad, per-leg per-cycle clamp
};

/// Evaluation timing: a cycle is 3 steps at step_delay each; the clock is
/// simulated, nothing sleeps.
struct EvaluationConfig {
    double step_delay_s = 0.1;
    int cycles_per_eval = 3;
    double per_eval_overhead_s = 0.0;
};

/// Latent per-(leg, primitive-pair) body twist per gait cycle. Entry (0,0)
/// is zero on every leg: an all-neutral cycle moves nothing.
struct LatentEffectTable {
    std::array<std::array<Twist2D, kPairsPerLeg>, kNumLegs> entries{};

    static int index(const PrimitivePair& p) { return p.first * kNumPrimitives + p.second; }
    const Twist2D& at(int leg, const PrimitivePair& p) const { return entries[leg][index(p)]; }
    Twist2D& at(int leg, const PrimitivePair& p) { return entries[leg][index(p)]; }
};

/// Accumulated actuator wear: a per-entry perturbation twist random-walked
/// on the entries a gait actually uses.
struct WearState {
    std::uint64_t cumulative_cycles = 0;
    std::array<std::array<Twist2D, kPairsPerLeg>, kNumLegs> drift{};
};

struct CyclePoint {
    Pose2D pose;      // world pose after the cycle
    double time_s;    // simulated clock at the end of the cycle
};

struct ExecResult {
    Pose2D before;
    Pose2D after;
    std::vector<CyclePoint> per_cycle;
    double elapsed_s = 0.0;
};

/// Seeded stochastic SE(2) stand-in for the walking robot. Single-owner
/// mutable state: no concurrent calls on one instance; distinct instances
/// may run fully in parallel.
class SimRobot {
public:
    explicit SimRobot(const SimConfig& config);

    /// Runs cycles_per_eval gait cycles. Each cycle sums the four legs'
    /// effective twists, adds Gaussian noise, advances the pose by one SE(2)
    /// exponential, then random-walks wear on the four entries used.
    ExecResult execute_gait(const GaitAssignment& g, const EvaluationConfig& cfg);

    /// Moves the robot; wear, table and random stream are untouched.
    void reset_pose(const Pose2D& p);

    /// Scenario hook: adds a twist to one latent entry (clamped to the step
    /// bounds). Used to script known drift rates.
    void perturb_entry(int leg, const PrimitivePair& p, const Twist2D& delta);

    /// Latent entry + accumulated wear, clamped to the step bounds. This is
    /// the per-leg contribution actually applied during execution.
    Twist2D effective_entry(int leg, const PrimitivePair& p) const;

    const Pose2D& pose() const { return pose_; }
    const LatentEffectTable& table() const { return table_; }
    const WearState& wear() const { return wear_; }
    std::uint64_t eval_count() const { return evals_; }
    double clock_s() const { return clock_; }
    const SimConfig& config() const { return config_; }

private:
    SimConfig config_;
    Pose2D pose_;
    LatentEffectTable table_;
    WearState wear_;
    Rng rng_;
    std::uint64_t evals_ = 0;
    double clock_ = 0.0;
    bool noise_enabled_ = false;
    bool wear_enabled_ = false;
};

/// Expresses (after - before) in the frame of `before`, per cycle, with
/// translation converted to body lengths.
BodyDisplacement body_frame_displacement(const Pose2D& before, const Pose2D& after, int cycles);

}  // namespace softgait
