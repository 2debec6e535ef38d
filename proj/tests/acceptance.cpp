// Acceptance suite: one pass/fail line per criterion. Exits nonzero when any
// criterion fails. Runs everything in-process against temp directories.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "softgait/commands.hpp"
#include "softgait/control.hpp"
#include "softgait/io.hpp"
#include "softgait/oracle.hpp"

namespace fs = std::filesystem;
using namespace softgait;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::string info;

    void require(bool ok, const std::string& msg) {
        if (!ok) failures.push_back(msg);
    }
    void note(const std::string& s) { info += info.empty() ? s : "; " + s; }
};

SimConfig deterministic_sim(std::uint64_t seed) {
    SimConfig c;
    c.seed = seed;
    c.noise_sigma = {0, 0, 0};
    c.wear_rate = 0;
    return c;
}

EvaluationConfig eval_cfg(GaitAxis axis) {
    return {0.1, axis_is_translation(axis) ? 3 : 1, 0.0};
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// Criterion 1: budget exactness.

void criterion_budget(Check& c) {
    struct Stub : Evaluator {
        BodyDisplacement do_evaluate(const GaitAssignment&) override { return {0.1, 0, 0}; }
    };
    for (int n_legs = 1; n_legs <= 4; ++n_legs) {
        for (int n_prims = 1; n_prims <= 7; ++n_prims) {
            Stub ev;
            SearchOptions opts;
            opts.leg_order.clear();
            for (int leg = 0; leg < n_legs; ++leg) opts.leg_order.push_back(leg);
            opts.n_prims = n_prims;
            tree_search(ev, preset(GaitAxis::PlusX), neutral_assignment(), opts);
            const std::uint64_t expect =
                static_cast<std::uint64_t>(n_legs) * n_prims * n_prims;
            c.require(ev.calls() == expect,
                      "count mismatch at (" + std::to_string(n_legs) + "," +
                          std::to_string(n_prims) + "): " + std::to_string(ev.calls()));
            c.require(evals_required(n_legs, n_prims) == expect, "evals_required mismatch");
        }
    }
    Stub ev;
    tree_search(ev, preset(GaitAxis::PlusX), neutral_assignment());
    c.require(ev.calls() == 196, "full search must issue exactly 196 evaluations");
    c.note("(4,7) issued exactly 196 evaluations");
}

// ---------------------------------------------------------------------------
// Criterion 2: greedy-oracle equivalence against an independent
// reimplementation of the per-leg exhaustive greedy pass.

GaitAssignment reference_greedy(Evaluator& ev, const RewardCoefficients& k,
                                const std::vector<int>& legs, int n_prims) {
    GaitAssignment base, best;
    double best_reward = -std::numeric_limits<double>::infinity();
    for (int leg : legs) {
        for (int a = 0; a < n_prims; ++a) {
            for (int b = 0; b < n_prims; ++b) {
                GaitAssignment trial = base;
                trial.pairs[leg] = {a, b};
                const double r = reward(ev.evaluate(trial), k);
                if (r > best_reward) {
                    best_reward = r;
                    best = trial;
                }
            }
        }
        base = best;
    }
    return best;
}

void criterion_greedy_equivalence(Check& c) {
    int matches = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const GaitAxis axis = kAllAxes[seed % kAllAxes.size()];
        const SimConfig sim = deterministic_sim(seed);
        SearchOptions opts;
        opts.leg_order = {0, 1};
        opts.n_prims = 3;

        auto tree_ev = make_sim_evaluator(sim, eval_cfg(axis), true);
        const SearchResult tree = tree_search(*tree_ev, preset(axis), neutral_assignment(), opts);

        auto ref_ev = make_sim_evaluator(sim, eval_cfg(axis), true);
        const GaitAssignment ref = reference_greedy(*ref_ev, preset(axis), {0, 1}, 3);

        if (tree.best == ref) {
            ++matches;
        } else {
            c.require(false, "mismatch at seed " + std::to_string(seed));
        }
    }
    c.note(std::to_string(matches) + "/50 seeds bitwise-equal");
}

// ---------------------------------------------------------------------------
// Criterion 3: full 5,764,801-candidate sweeps, tree <= oracle, gap reported.

void criterion_global_oracle(Check& c) {
    const RewardCoefficients k = preset(GaitAxis::PlusX);
    std::string gaps;
    double worst_time = 0;
    for (std::uint64_t seed = 11; seed < 16; ++seed) {
        const SimConfig sim = deterministic_sim(seed);
        const EvaluationConfig ec = eval_cfg(GaitAxis::PlusX);
        const EvaluatorFactory factory = [&]() { return make_sim_evaluator(sim, ec, true); };

        const auto start = std::chrono::steady_clock::now();
        const OracleResult oracle = brute_force_oracle(factory, k, {4, 7});
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        worst_time = std::max(worst_time, secs);

        auto tree_ev = make_sim_evaluator(sim, ec, true);
        const SearchResult tree = tree_search(*tree_ev, k, neutral_assignment());

        c.require(oracle.candidates == 5764801, "sweep must cover 5,764,801 candidates");
        c.require(secs < 300.0, "sweep exceeded 5 minutes: " + fmt(secs) + " s");
        c.require(tree.best_reward <= oracle.best_reward,
                  "tree reward exceeds the oracle at seed " + std::to_string(seed));
        const double gap = (oracle.best_reward - tree.best_reward) / std::abs(oracle.best_reward);
        gaps += (gaps.empty() ? "" : " ") + fmt(gap);
    }
    c.note("optimality gaps [" + gaps + "], slowest sweep " + fmt(worst_time) + " s");
}

// ---------------------------------------------------------------------------
// Criterion 4: refinement monotonicity, noise-free, 3 rounds, all presets.

void criterion_refinement(Check& c) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (GaitAxis axis : kAllAxes) {
            const RewardCoefficients k = preset(axis);
            auto ev = make_sim_evaluator(deterministic_sim(200 + seed), eval_cfg(axis), true);
            const SearchResult start = tree_search(*ev, k, neutral_assignment());
            const SearchResult refined = refine(*ev, k, start.best, 3);

            std::vector<double> seeds;
            for (const TrainingRecord& rec : refined.log.records) {
                if (rec.leg == -1) seeds.push_back(rec.reward);
            }
            c.require(seeds.size() == 3, "expected 3 seed measurements");
            bool monotone = seeds.size() == 3 && seeds[0] >= start.best_reward &&
                            seeds[1] >= seeds[0] && seeds[2] >= seeds[1] &&
                            refined.best_reward >= seeds[2];
            c.require(monotone, "non-monotone refinement at seed " + std::to_string(200 + seed) +
                                    " axis " + std::string(axis_name(axis)));
            ++checked;
        }
    }
    c.note(std::to_string(checked) + " seed/axis refinements all non-decreasing");
}

// ---------------------------------------------------------------------------
// Criterion 5: reward algebra.

void criterion_reward(Check& c) {
    const auto match = [&](GaitAxis axis, RewardCoefficients k) {
        c.require(preset(axis) == k,
                  "preset mismatch for axis " + std::string(axis_name(axis)));
    };
    match(GaitAxis::PlusX, {1, 0, 0, 0, -0.1, -0.1});
    match(GaitAxis::MinusX, {-1, 0, 0, 0, -0.1, -0.1});
    match(GaitAxis::PlusY, {0, 1, 0, -0.1, 0, -0.1});
    match(GaitAxis::MinusY, {0, -1, 0, -0.1, 0, -0.1});
    match(GaitAxis::PlusTheta, {0, 0, 1, -0.1, -0.1, 0});
    match(GaitAxis::MinusTheta, {0, 0, -1, -0.1, -0.1, 0});

    c.require(std::abs(reward({0.5, 0.1, -0.2}, preset(GaitAxis::PlusX)) - 0.47) < 1e-12,
              "forward example must equal 0.47");
    c.require(std::abs(reward({0.1, -0.1, 0.3}, preset(GaitAxis::PlusTheta)) - 0.28) < 1e-12,
              "left-turn example must equal 0.28");
    c.require(reward({0, 0, 0}, preset(GaitAxis::MinusY)) == 0.0, "zero displacement scores 0");

    std::mt19937_64 rng(99);
    const auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
        const BodyDisplacement v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const RewardCoefficients k{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2),
                                   uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
        const double a = uniform(1e-3, 10.0);
        const double lhs = reward({a * v.dx, a * v.dy, a * v.dtheta}, k);
        const double rhs = a * reward(v, k);
        if (std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs))) ++ok;
    }
    c.require(ok == 1000, "positive homogeneity failed on " + std::to_string(1000 - ok) + " samples");
    c.note("presets exact, examples within 1e-12, homogeneity 1000/1000");
}

// ---------------------------------------------------------------------------
// Criterion 6: gait structure on 1000 random assignments.

void criterion_gait_structure(Check& c) {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 1000; ++i) {
        GaitAssignment g;
        for (int leg = 0; leg < kNumLegs; ++leg) {
            g.pairs[leg] = {static_cast<int>(rng() % kNumPrimitives),
                            static_cast<int>(rng() % kNumPrimitives)};
        }
        const Gait gait = make_gait(g);
        for (ServoState s : gait.steps[2]) {
            c.require(s == ServoState::Neutral, "third step must be all-neutral");
        }
        for (const Step& step : gait.steps) {
            for (double t : servo_targets(step)) {
                c.require(t == -1.25 || t == 0.0 || t == 1.25,
                          "servo target outside {-1.25, 0, +1.25}");
            }
        }
    }
    c.note("1000 assignments: neutral third step, targets in {-1.25, 0, +1.25} rad");
}

// ---------------------------------------------------------------------------
// Shared scenario plumbing for criteria 7 and 8.

GaitAssignment train_axis(const SimConfig& sim, GaitAxis axis) {
    SimRobot robot(sim);
    SimEvaluator ev(robot, eval_cfg(axis));
    return tree_search(ev, preset(axis), neutral_assignment()).best;
}

GaitSet build_gait_set(const SimConfig& sim) {
    GaitSet gs;
    for (GaitAxis axis : kAllAxes) {
        gs.gaits[axis] = train_axis(sim, axis);
        SimRobot meas(sim);
        gs.mean_velocity[axis] =
            measure_mean_velocity(meas, gs.gaits[axis], {0.1, 1, 0}, 32).mean;
    }
    return gs;
}

ControlParams scenario_params() {
    ControlParams p;
    p.step_delay_s = 0.1;
    return p;
}

double position_error(const Pose2D& pose, const Pose2D& target) {
    return std::hypot(pose.x - target.x, pose.y - target.y);
}

// Criterion 7: closed-loop N with an injected +theta bias on the +x gait.

/// Adds +theta bias to the entries a gait uses until its net heading rate
/// reaches `target` rad/cycle (the clamp can absorb part of each injection).
/// Returns the reached rate.
double inject_theta_bias(SimRobot& robot, const GaitAssignment& g, double target) {
    const auto net_rate = [&]() {
        double omega = 0;
        for (int leg = 0; leg < kNumLegs; ++leg) omega += robot.effective_entry(leg, g.pairs[leg]).omega;
        return omega;
    };
    for (int attempt = 0; attempt < 8 && net_rate() < target; ++attempt) {
        for (int leg = 0; leg < kNumLegs; ++leg) {
            const PrimitivePair p = g.pairs[leg];
            if (p == PrimitivePair{0, 0}) continue;
            robot.perturb_entry(leg, p, {0, 0, (target - net_rate()) / 2});
        }
    }
    return net_rate();
}

void criterion_closed_loop_n(Check& c) {
    SimConfig sim;  // default desk-scale config, wear off
    sim.seed = 71;
    const GaitSet gs = build_gait_set(sim);
    const auto problems = validate_gait_set(gs);
    for (const std::string& p : problems) c.require(false, "gait set: " + p);
    if (!problems.empty()) return;

    // Net +theta rate of at least 0.02 rad/cycle on the +x gait: over 0.05
    // rad per 4-cycle batch, so every drift evaluation sees it.
    SimRobot robot(sim);
    const double rate = inject_theta_bias(robot, gs.gaits.at(GaitAxis::PlusX), 0.02);
    c.require(rate >= 0.0126, "injected heading drift below 0.05 rad per 4 cycles: " + fmt(rate));

    const ControlParams params = scenario_params();
    const auto segments = letter_n(0.30, 0.225);
    const TraceResult r = trace_path(robot, gs, segments, params);
    c.require(r.status == TraceStatus::Completed, "closed-loop N did not complete");

    bool saw_minus_theta = false;
    int checks = 0;
    double worst_reading = 0;
    const double bound_xy = 4 * sim.max_step_translation + 5 * sim.noise_sigma.y;
    const double bound_theta = 4 * sim.max_step_rotation + 5 * sim.noise_sigma.theta;
    for (const TraceEntry& e : r.entries) {
        const bool rotation_segment =
            segments[e.segment_index].kind == TrajectorySegment::Kind::Rotation;
        if (e.corrective) {
            if (rotation_segment) {
                c.require(e.axis != GaitAxis::PlusTheta && e.axis != GaitAxis::MinusTheta,
                          "theta correction inside a rotation segment");
            } else {
                c.require(e.axis != GaitAxis::PlusX && e.axis != GaitAxis::MinusX,
                          "x correction inside a translation segment");
                saw_minus_theta |= e.axis == GaitAxis::MinusTheta;
            }
        }
        if (e.drift_checked) {
            ++checks;
            if (rotation_segment) {
                c.require(std::abs(e.drift.x) <=
                              params.tolerance.x_tol + params.check_every * bound_xy,
                          "x drift reading out of bounds");
                c.require(std::abs(e.drift.y) <=
                              params.tolerance.y_tol + params.check_every * bound_xy,
                          "y drift reading out of bounds");
                worst_reading = std::max(worst_reading, std::abs(e.drift.x));
            } else {
                c.require(std::abs(e.drift.y) <=
                              params.tolerance.y_tol + params.check_every * bound_xy,
                          "y drift reading out of bounds");
                c.require(std::abs(e.drift.theta) <=
                              params.tolerance.theta_tol + params.check_every * bound_theta,
                          "theta drift reading out of bounds");
                worst_reading = std::max(worst_reading, std::abs(e.drift.theta));
            }
        }
    }
    c.require(checks > 0, "no drift evaluations happened");
    c.require(saw_minus_theta, "injected +theta drift never drew a -theta correction");
    c.note("completed in " + std::to_string(r.entries.size()) + " cycles, " +
           std::to_string(checks) + " drift checks, worst checked reading " + fmt(worst_reading));
}

// Criterion 8: open- vs closed-loop under wear, 20 paired seeded runs.

void criterion_wear_comparison(Check& c) {
    const auto segments = letter_n(0.30, 0.225);
    const ControlParams params = scenario_params();
    int wins = 0, runs = 0;
    std::string detail;
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        SimConfig train_sim;
        train_sim.seed = seed;  // default noise, wear off for training
        const GaitSet gs = build_gait_set(train_sim);
        if (!validate_gait_set(gs).empty()) {
            c.require(false, "gait set invalid at seed " + std::to_string(seed));
            continue;
        }
        SimConfig run_sim = train_sim;
        run_sim.wear_rate = 0.05;

        const Pose2D target = ideal_end_pose({}, segments);
        SimRobot closed_robot(run_sim);
        const TraceResult closed = trace_path(closed_robot, gs, segments, params);
        SimRobot open_robot(run_sim);
        const TraceResult open = execute_open_loop(open_robot, gs, segments, params);

        const double closed_err = position_error(closed.final_pose, target);
        const double open_err = position_error(open.final_pose, target);
        ++runs;
        if (closed_err < open_err) ++wins;
    }
    c.require(runs == 20, "expected 20 paired runs");
    c.require(wins * 10 >= runs * 9,
              "closed loop won only " + std::to_string(wins) + "/" + std::to_string(runs));
    c.note("closed-loop beat open-loop in " + std::to_string(wins) + "/" + std::to_string(runs) +
           " paired runs");
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical replay of every command.

bool files_identical(const fs::path& a, const fs::path& b) {
    return read_file(a) == read_file(b);
}

void compare_dirs(Check& c, const fs::path& a, const fs::path& b, const std::string& what) {
    std::vector<std::string> names_a, names_b;
    for (const auto& e : fs::directory_iterator(a)) names_a.push_back(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(b)) names_b.push_back(e.path().filename().string());
    std::sort(names_a.begin(), names_a.end());
    std::sort(names_b.begin(), names_b.end());
    c.require(names_a == names_b, what + ": directory listings differ");
    c.require(!names_a.empty(), what + ": no outputs written");
    for (const std::string& name : names_a) {
        if (!fs::exists(b / name)) continue;
        c.require(files_identical(a / name, b / name), what + ": " + name + " differs");
    }
}

void criterion_determinism(Check& c) {
    const fs::path root = fs::temp_directory_path() / "softgait_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    RunConfig config;  // default: seed 42, noisy sim
    config.search.rounds = 2;

    const int t1 = cmd_train(config, GaitAxis::PlusX, root / "train1", nullptr);
    const int t2 = cmd_train(config, GaitAxis::PlusX, root / "train2", nullptr);
    c.require(t1 == kOk && t2 == kOk, "cmd_train failed");
    compare_dirs(c, root / "train1", root / "train2", "train");

    const fs::path trained_gait = root / "train1" / gait_file_name(GaitAxis::PlusX);
    const int v1 = cmd_velocities(config, {trained_gait}, root / "vel1", nullptr);
    const int v2 = cmd_velocities(config, {trained_gait}, root / "vel2", nullptr);
    c.require(v1 == kOk && v2 == kOk, "cmd_velocities failed");
    compare_dirs(c, root / "vel1", root / "vel2", "velocities");

    // Gait-set directory for tracing, trained once.
    const fs::path gaits_dir = root / "gaits";
    fs::create_directories(gaits_dir);
    const GaitSet gs = build_gait_set(config.sim);
    for (GaitAxis axis : kAllAxes) save_gait(gs.gaits.at(axis), gaits_dir / gait_file_name(axis));
    const fs::path plan_file = root / "plan.json";
    c.require(cmd_plan(0.30, 0.225, plan_file, nullptr) == kOk, "cmd_plan failed");

    const int tr1 = cmd_trace(config, gaits_dir, plan_file, true, root / "trace1", nullptr);
    const int tr2 = cmd_trace(config, gaits_dir, plan_file, true, root / "trace2", nullptr);
    c.require(tr1 == kOk && tr2 == kOk, "cmd_trace failed");
    compare_dirs(c, root / "trace1", root / "trace2", "trace");

    const fs::path neutral_file = root / "neutral.json";
    save_gait(neutral_assignment(), neutral_file);
    const int r1 = cmd_race(config, trained_gait, neutral_file, 100, root / "race1", nullptr);
    const int r2 = cmd_race(config, trained_gait, neutral_file, 100, root / "race2", nullptr);
    c.require(r1 == kOk && r2 == kOk, "cmd_race failed");
    compare_dirs(c, root / "race1", root / "race2", "race");

    RunConfig oracle_config;
    oracle_config.sim = deterministic_sim(2);
    const int o1 = cmd_oracle(oracle_config, GaitAxis::PlusX, {2, 3}, root / "oracle1", nullptr);
    const int o2 = cmd_oracle(oracle_config, GaitAxis::PlusX, {2, 3}, root / "oracle2", nullptr);
    c.require(o1 == kOk && o2 == kOk, "cmd_oracle failed");
    compare_dirs(c, root / "oracle1", root / "oracle2", "oracle");

    c.note("train, velocities, trace, race, oracle replay byte-identical");
}

// ---------------------------------------------------------------------------
// Criterion 10: substituted hardware claims.

void criterion_substitutions(Check& c) {
    const double est = estimate_training_time({0.1, 3, 0}, 4, 7, 1);
    c.require(std::abs(est - 176.4) <= 1.0, "step-time arithmetic must give 176.4 s, got " + fmt(est));
    c.require(std::abs(est - 176.4) <= 1e-9, "estimate should be exact");

    // Trained +x vs. the all-neutral baseline on a noisy sim: the neutral
    // gait only random-walks, so the trained gait must cover more ground.
    const fs::path root = fs::temp_directory_path() / "softgait_acceptance" / "race_check";
    fs::create_directories(root);
    RunConfig config;
    config.sim.seed = 42;
    const GaitAssignment trained = train_axis(config.sim, GaitAxis::PlusX);
    save_gait(trained, root / "trained.json");
    save_gait(neutral_assignment(), root / "neutral.json");
    const int rc =
        cmd_race(config, root / "trained.json", root / "neutral.json", 100, root / "out", nullptr);
    c.require(rc == kOk, "cmd_race failed");

    const std::string summary = read_file(root / "out" / "race_summary.txt");
    const auto pos = summary.find("ratio_a_over_b: ");
    c.require(pos != std::string::npos, "race summary lacks the ratio line");
    double ratio = 0;
    if (pos != std::string::npos) ratio = std::stod(summary.substr(pos + 16));
    c.require(ratio > 1.0, "trained-vs-neutral ratio must exceed 1, got " + fmt(ratio));

    const std::string csv = read_file(root / "out" / "race.csv");
    c.require(csv.find("bl_per_s") != std::string::npos, "race CSV must report BL/s");
    c.note("estimate 176.4 s exact; race ratio " + fmt(ratio) + " with BL/s reported");
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "budget exactness (n_legs x n_prims^2)", criterion_budget},
        {2, "greedy-oracle equivalence (50 seeds, 2x3)", criterion_greedy_equivalence},
        {3, "global-oracle sanity (5 full sweeps)", criterion_global_oracle},
        {4, "refinement monotonicity (20 seeds x 6 presets)", criterion_refinement},
        {5, "reward algebra", criterion_reward},
        {6, "gait structure (1000 assignments)", criterion_gait_structure},
        {7, "closed-loop N with injected drift", criterion_closed_loop_n},
        {8, "open vs closed loop under wear", criterion_wear_comparison},
        {9, "replay determinism", criterion_determinism},
        {10, "substituted hardware claims", criterion_substitutions},
    };

    int failed = 0;
    for (const Criterion& crit : criteria) {
        Check check;
        try {
            crit.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        if (check.failures.empty()) {
            std::cout << "PASS  " << crit.id << "  " << crit.name;
            if (!check.info.empty()) std::cout << "  [" << check.info << "]";
            std::cout << '\n';
        } else {
            ++failed;
            std::cout << "FAIL  " << crit.id << "  " << crit.name << '\n';
            for (const std::string& f : check.failures) std::cout << "      - " << f << '\n';
        }
    }
    if (failed) std::cout << failed << " criterion(s) failed\n";
    return failed == 0 ? 0 : 1;
}
