#include "softgait/sim.hpp"

#include <algorithm>
#include <cmath>

#include "softgait/errors.hpp"

namespace softgait {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
}

double clamp_abs(double v, double bound) { return std::clamp(v, -bound, bound); }

}  // namespace

SimRobot::SimRobot(const SimConfig& config) : config_(config), rng_(config.seed) {
    require(config.effect_scale.x >= 0 && config.effect_scale.y >= 0 && config.effect_scale.theta >= 0,
            "effect_scale components must be >= 0");
    require(config.noise_sigma.x >= 0 && config.noise_sigma.y >= 0 && config.noise_sigma.theta >= 0,
            "noise_sigma components must be >= 0");
    require(config.wear_rate >= 0, "wear_rate must be >= 0");
    require(config.max_step_translation >= 0 && config.max_step_rotation >= 0,
            "step bounds must be >= 0");

    noise_enabled_ = config.noise_sigma.x > 0 || config.noise_sigma.y > 0 || config.noise_sigma.theta > 0;
    wear_enabled_ = config.wear_rate > 0;

    // Draw the latent table in a fixed order so a seed pins it exactly.
    for (int leg = 0; leg < kNumLegs; ++leg) {
        for (int first = 0; first < kNumPrimitives; ++first) {
            for (int second = 0; second < kNumPrimitives; ++second) {
                Twist2D t{config.effect_scale.x * rng_.gaussian(),
                          config.effect_scale.y * rng_.gaussian(),
                          config.effect_scale.theta * rng_.gaussian()};
                t.vx = clamp_abs(t.vx, config.max_step_translation);
                t.vy = clamp_abs(t.vy, config.max_step_translation);
                t.omega = clamp_abs(t.omega, config.max_step_rotation);
                table_.at(leg, {first, second}) = t;
            }
        }
        table_.at(leg, {0, 0}) = {};  // an all-neutral cycle moves nothing
    }
}

Twist2D SimRobot::effective_entry(int leg, const PrimitivePair& p) const {
    const Twist2D& base = table_.at(leg, p);
    const Twist2D& d = wear_.drift[leg][LatentEffectTable::index(p)];
    return {clamp_abs(base.vx + d.vx, config_.max_step_translation),
            clamp_abs(base.vy + d.vy, config_.max_step_translation),
            clamp_abs(base.omega + d.omega, config_.max_step_rotation)};
}

ExecResult SimRobot::execute_gait(const GaitAssignment& g, const EvaluationConfig& cfg) {
    require(valid(g), "gait assignment has primitive ids outside [0, 7)");
    require(cfg.step_delay_s > 0, "step_delay_s must be > 0");
    require(cfg.cycles_per_eval >= 1, "cycles_per_eval must be >= 1");
    require(cfg.per_eval_overhead_s >= 0, "per_eval_overhead_s must be >= 0");

    ExecResult result;
    result.before = pose_;
    result.per_cycle.reserve(cfg.cycles_per_eval);
    const double cycle_time = kStepsPerCycle * cfg.step_delay_s;

    for (int cycle = 0; cycle < cfg.cycles_per_eval; ++cycle) {
        Twist2D xi{};
        for (int leg = 0; leg < kNumLegs; ++leg) {
            const Twist2D e = effective_entry(leg, g.pairs[leg]);
            xi.vx += e.vx;
            xi.vy += e.vy;
            xi.omega += e.omega;
        }
        if (noise_enabled_) {
            xi.vx += config_.noise_sigma.x * rng_.gaussian();
            xi.vy += config_.noise_sigma.y * rng_.gaussian();
            xi.omega += config_.noise_sigma.theta * rng_.gaussian();
        }
        pose_ = compose(pose_, se2_exp(xi));

        if (wear_enabled_) {
            for (int leg = 0; leg < kNumLegs; ++leg) {
                const PrimitivePair& p = g.pairs[leg];
                if (p.first == 0 && p.second == 0) continue;  // neutral legs never wear in
                Twist2D& d = wear_.drift[leg][LatentEffectTable::index(p)];
                d.vx += config_.wear_rate * config_.effect_scale.x * rng_.gaussian();
                d.vy += config_.wear_rate * config_.effect_scale.y * rng_.gaussian();
                d.omega += config_.wear_rate * config_.effect_scale.theta * rng_.gaussian();
            }
        }

        ++wear_.cumulative_cycles;
        clock_ += cycle_time;
        result.per_cycle.push_back({pose_, clock_});
    }

    clock_ += cfg.per_eval_overhead_s;
    ++evals_;
    result.after = pose_;
    result.elapsed_s = cfg.cycles_per_eval * cycle_time + cfg.per_eval_overhead_s;
    return result;
}

void SimRobot::reset_pose(const Pose2D& p) {
    pose_ = {p.x, p.y, normalize_angle(p.theta)};
}

void SimRobot::perturb_entry(int leg, const PrimitivePair& p, const Twist2D& delta) {
    require(leg >= 0 && leg < kNumLegs, "leg index out of range");
    require(p.first != 0 || p.second != 0, "pair (0,0) stays zero: all-neutral cycles never move");
    Twist2D& t = table_.at(leg, p);
    t.vx = clamp_abs(t.vx + delta.vx, config_.max_step_translation);
    t.vy = clamp_abs(t.vy + delta.vy, config_.max_step_translation);
    t.omega = clamp_abs(t.omega + delta.omega, config_.max_step_rotation);
}

BodyDisplacement body_frame_displacement(const Pose2D& before, const Pose2D& after, int cycles) {
    require(cycles >= 1, "cycles must be >= 1");
    const Pose2D rel = between(before, after);
    const double n = static_cast<double>(cycles);
    return {rel.x / (n * kBodyLengthM), rel.y / (n * kBodyLengthM), rel.theta / n};
}

}  // namespace softgait
