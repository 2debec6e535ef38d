#include "softgait/commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "softgait/errors.hpp"
#include "softgait/svg.hpp"

namespace softgait {

namespace fs = std::filesystem;

namespace {

void say(std::ostream* log, const std::string& msg) {
    if (log) *log << msg << '\n';
}

int config_failure(std::ostream* log, const std::string& msg) {
    say(log, "error: " + msg);
    return kConfigErrorCode;
}

/// Commands report bad inputs through exit codes, not exceptions.
template <typename Body>
int guarded(std::ostream* log, Body&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return config_failure(log, e.what());
    } catch (const ConfigError& e) {
        return config_failure(log, e.what());
    } catch (const PlanningError& e) {
        return config_failure(log, e.what());
    }
}

std::string assignment_string(const GaitAssignment& g) {
    std::string s;
    for (int leg = 0; leg < kNumLegs; ++leg) {
        if (leg) s += ';';
        s += std::to_string(g.pairs[leg].first) + ',' + std::to_string(g.pairs[leg].second);
    }
    return s;
}

ControlParams control_params(const RunConfig& config) {
    ControlParams p;
    p.tolerance = config.control.tolerance;
    p.check_every = config.control.check_every;
    p.deadband_fraction = config.control.deadband_fraction;
    p.budget_factor = config.control.budget_factor;
    p.step_delay_s = config.eval.step_delay_s;
    return p;
}

/// Measures a gait's mean velocity on a pristine robot drawn from the run
/// config, so the measurement does not disturb the run robot.
VelocityStats measure_on_fresh_robot(const RunConfig& config, const GaitAssignment& g) {
    SimRobot robot(config.sim);
    EvaluationConfig ec = config.eval;
    return measure_mean_velocity(robot, g, ec, config.control.velocity_cycles);
}

GaitSet load_gait_set(const RunConfig& config, const fs::path& dir) {
    GaitSet gs;
    for (GaitAxis axis : kAllAxes) {
        const fs::path file = dir / gait_file_name(axis);
        gs.gaits[axis] = load_gait(file);
        gs.mean_velocity[axis] = measure_on_fresh_robot(config, gs.gaits[axis]).mean;
    }
    return gs;
}

std::vector<svg::Point> trace_points(const std::vector<TraceEntry>& entries) {
    std::vector<svg::Point> pts;
    pts.reserve(entries.size() + 1);
    pts.push_back({0.0, 0.0});
    for (const TraceEntry& e : entries) pts.push_back({e.pose.x, e.pose.y});
    return pts;
}

std::vector<svg::Point> target_points(const std::vector<TrajectorySegment>& segments) {
    std::vector<svg::Point> pts;
    Pose2D pose;
    pts.push_back({pose.x, pose.y});
    for (const TrajectorySegment& seg : segments) {
        pose = seg.kind == TrajectorySegment::Kind::Translation
                   ? compose(pose, {seg.magnitude, 0.0, 0.0})
                   : compose(pose, {0.0, 0.0, seg.magnitude});
        pts.push_back({pose.x, pose.y});
    }
    return pts;
}

}  // namespace

fs::path gait_file_name(GaitAxis axis) {
    return fs::path("gait_" + std::string(axis_token(axis)) + ".json");
}

int cmd_train(const RunConfig& config, GaitAxis axis, const fs::path& out_dir, std::ostream* log) {
    return guarded(log, [&]() -> int {
        fs::create_directories(out_dir);
        save_run_config(config, out_dir / "run_config.json");

        if (config.search.rounds < 1) return config_failure(log, "rounds must be >= 1");
        const EvaluationConfig ec = eval_for_axis(config, axis);
        const RewardCoefficients k = coefficients_for_axis(config, axis);
        const SearchOptions opts{config.search.leg_order, kNumPrimitives, config.search.repeats};

        SimRobot robot(config.sim);
        SimEvaluator ev(robot, ec);
        std::vector<CycleRow> cycles;
        ev.set_cycle_sink(&cycles);

        SearchResult result = tree_search(ev, k, neutral_assignment(), opts);
        TrainingLog full_log = std::move(result.log);
        for (int round = 1; round < config.search.rounds && result.status == SearchStatus::Complete;
             ++round) {
            SearchResult refined = refine(ev, k, result.best, 1, opts);
            full_log.records.insert(full_log.records.end(), refined.log.records.begin(),
                                    refined.log.records.end());
            result.best = refined.best;
            result.best_reward = refined.best_reward;
            result.status = refined.status;
        }
        full_log.meta.eval = ec;
        full_log.meta.seed = config.sim.seed;

        write_file(out_dir / "training_log.csv", training_log_csv(full_log));
        write_file(out_dir / "cycles.csv", cycles_csv(cycles));

        if (result.status == SearchStatus::Aborted) {
            say(log, "error: evaluator failed; partial log written");
            return kSearchAbortedCode;
        }

        std::ostringstream prov;
        prov << "train axis=" << axis_name(axis) << " seed=" << config.sim.seed
             << " rounds=" << config.search.rounds;
        save_gait(result.best, out_dir / gait_file_name(axis), prov.str());

        const double estimate =
            estimate_training_time(ec, kNumLegs, kNumPrimitives, config.search.rounds);
        std::ostringstream summary;
        summary << "axis: " << axis_name(axis) << '\n'
                << "seed: " << config.sim.seed << '\n'
                << "rounds: " << config.search.rounds << '\n'
                << "evaluations: " << ev.calls() << '\n'
                << "best_reward: " << format_double(result.best_reward) << '\n'
                << "assignment: " << assignment_string(result.best) << '\n'
                << "estimated_training_time_s: " << format_double(estimate) << '\n';
        write_file(out_dir / "summary.txt", summary.str());
        say(log, "trained " + std::string(axis_name(axis)) + ": reward " +
                     format_double(result.best_reward) + " in " + std::to_string(ev.calls()) +
                     " evaluations (estimated " + format_double(estimate) + " s on hardware)");
        return kOk;
    });
}

int cmd_oracle(const RunConfig& config, GaitAxis axis, const SearchSpace& space,
               const fs::path& out_dir, std::ostream* log) {
    return guarded(log, [&]() -> int {
        const bool stochastic = config.sim.noise_sigma.x > 0 || config.sim.noise_sigma.y > 0 ||
                                config.sim.noise_sigma.theta > 0 || config.sim.wear_rate > 0;
        if (stochastic)
            return config_failure(log,
                                  "oracle requires a deterministic sim (zero noise_sigma and wear_rate)");
        if (space.n_legs > static_cast<int>(config.search.leg_order.size()))
            return config_failure(log, "leg_order is shorter than the requested oracle space");

        fs::create_directories(out_dir);
        save_run_config(config, out_dir / "run_config.json");

        const EvaluationConfig ec = eval_for_axis(config, axis);
        const RewardCoefficients k = coefficients_for_axis(config, axis);

        SearchOptions opts;
        opts.leg_order.assign(config.search.leg_order.begin(),
                              config.search.leg_order.begin() + space.n_legs);
        opts.n_prims = space.n_prims;
        opts.repeats = 1;

        auto tree_ev = make_sim_evaluator(config.sim, ec, /*reset_pose_each_eval=*/true);
        const SearchResult tree = tree_search(*tree_ev, k, neutral_assignment(), opts);

        const EvaluatorFactory factory = [&config, &ec]() {
            return make_sim_evaluator(config.sim, ec, /*reset_pose_each_eval=*/true);
        };
        const auto start = std::chrono::steady_clock::now();
        const OracleResult oracle = brute_force_oracle(factory, k, space);
        const double sweep_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const double gap = std::abs(oracle.best_reward) < 1e-15
                               ? 0.0
                               : (oracle.best_reward - tree.best_reward) / std::abs(oracle.best_reward);

        std::string csv =
            "n_legs,n_prims,candidates,oracle_reward,tree_reward,gap,oracle_assignment,tree_assignment\n";
        csv += std::to_string(space.n_legs) + ',' + std::to_string(space.n_prims) + ',' +
               std::to_string(oracle.candidates) + ',' + format_double(oracle.best_reward) + ',' +
               format_double(tree.best_reward) + ',' + format_double(gap) + ',' +
               assignment_string(oracle.best) + ',' + assignment_string(tree.best) + '\n';
        write_file(out_dir / "oracle_report.csv", csv);
        save_gait(oracle.best, out_dir / "oracle_gait.json", "oracle sweep");
        save_gait(tree.best, out_dir / "tree_gait.json", "tree search");

        say(log, "oracle: " + std::to_string(oracle.candidates) + " candidates in " +
                     format_double(sweep_s) + " s; oracle reward " +
                     format_double(oracle.best_reward) + ", tree reward " +
                     format_double(tree.best_reward) + ", gap " + format_double(gap));
        return kOk;
    });
}

int cmd_velocities(const RunConfig& config, const std::vector<fs::path>& gait_files,
                   const fs::path& out_dir, std::ostream* log) {
    return guarded(log, [&]() -> int {
        if (gait_files.empty()) return config_failure(log, "no gait files given");
        fs::create_directories(out_dir);
        save_run_config(config, out_dir / "run_config.json");

        std::vector<VelocityRow> rows;
        std::vector<svg::BarGroup> groups;
        for (const fs::path& file : gait_files) {
            const GaitAssignment g = load_gait(file);
            const VelocityStats stats = measure_on_fresh_robot(config, g);
            const std::string label = file.stem().string();
            rows.push_back({label, stats, config.control.velocity_cycles});
            groups.push_back({label,
                              {stats.mean.dx, stats.mean.dy, stats.mean.dtheta},
                              {stats.stddev.dx, stats.stddev.dy, stats.stddev.dtheta}});
        }
        write_file(out_dir / "velocities.csv", velocities_csv(rows));
        write_file(out_dir / "velocities.svg",
                   svg::bar_chart("Mean velocity per gait (BL/cycle, rad/cycle)", groups));
        say(log, "measured " + std::to_string(rows.size()) + " gait(s) over " +
                     std::to_string(config.control.velocity_cycles) + " cycles each");
        return kOk;
    });
}

int cmd_trace(const RunConfig& config, const fs::path& gaitset_dir, const fs::path& plan_file,
              bool closed_loop, const fs::path& out_dir, std::ostream* log) {
    return guarded(log, [&]() -> int {
        const std::vector<TrajectorySegment> segments = load_plan(plan_file);
        const GaitSet gs = load_gait_set(config, gaitset_dir);
        const std::vector<std::string> problems = validate_gait_set(gs);
        if (!problems.empty()) {
            for (const std::string& p : problems) say(log, "error: " + p);
            return kConfigErrorCode;
        }

        fs::create_directories(out_dir);
        save_run_config(config, out_dir / "run_config.json");

        SimRobot robot(config.sim);
        const ControlParams params = control_params(config);
        TraceResult result;
        if (closed_loop) {
            result = trace_path(robot, gs, segments, params);
        } else {
            result = execute_open_loop(robot, gs, segments, params);
        }

        write_file(out_dir / "trace.csv", trace_csv(result.entries));
        write_file(out_dir / "trace.svg",
                   svg::trajectory_plot(closed_loop ? "Closed-loop trace" : "Open-loop trace",
                                        trace_points(result.entries), target_points(segments)));

        const Pose2D target = ideal_end_pose({}, segments);
        const double err = std::hypot(result.final_pose.x - target.x, result.final_pose.y - target.y);
        std::size_t corrective = 0;
        for (const TraceEntry& e : result.entries) corrective += e.corrective ? 1 : 0;

        std::ostringstream summary;
        summary << "mode: " << (closed_loop ? "closed" : "open") << '\n'
                << "status: "
                << (result.status == TraceStatus::Completed ? "completed" : "budget_exhausted") << '\n'
                << "segments: " << segments.size() << '\n'
                << "cycles: " << result.entries.size() << '\n'
                << "corrective_cycles: " << corrective << '\n'
                << "final_pose: " << format_double(result.final_pose.x) << ' '
                << format_double(result.final_pose.y) << ' ' << format_double(result.final_pose.theta)
                << '\n'
                << "target_pose: " << format_double(target.x) << ' ' << format_double(target.y) << ' '
                << format_double(target.theta) << '\n'
                << "final_position_error_m: " << format_double(err) << '\n';
        write_file(out_dir / "trace_summary.txt", summary.str());

        say(log, std::string(closed_loop ? "closed" : "open") + "-loop trace: " +
                     std::to_string(result.entries.size()) + " cycles, final position error " +
                     format_double(err) + " m");
        if (result.status == TraceStatus::BudgetExhausted) {
            say(log, "error: cycle budget exhausted on segment " +
                         std::to_string(result.failed_segment) + "; partial trace written");
            return kBudgetExhaustedCode;
        }
        return kOk;
    });
}

int cmd_race(const RunConfig& config, const fs::path& gait_a, const fs::path& gait_b, int cycles,
             const fs::path& out_dir, std::ostream* log) {
    return guarded(log, [&]() -> int {
        if (cycles < 1) return config_failure(log, "race needs cycles >= 1");
        fs::create_directories(out_dir);
        save_run_config(config, out_dir / "run_config.json");

        struct Entry {
            std::string label;
            double dist_m;
            double elapsed_s;
        };
        std::vector<Entry> entries;
        for (const fs::path& file : {gait_a, gait_b}) {
            const GaitAssignment g = load_gait(file);
            SimRobot robot(config.sim);
            EvaluationConfig ec = config.eval;
            ec.cycles_per_eval = cycles;
            const ExecResult r = robot.execute_gait(g, ec);
            entries.push_back({file.stem().string(), std::hypot(r.after.x, r.after.y), r.elapsed_s});
        }

        std::string csv = "gait,net_displacement_m,net_displacement_bl,bl_per_s,cycles,sim_time_s\n";
        for (const Entry& e : entries) {
            csv += e.label + ',' + format_double(e.dist_m) + ',' +
                   format_double(e.dist_m / kBodyLengthM) + ',' +
                   format_double(e.dist_m / kBodyLengthM / e.elapsed_s) + ',' +
                   std::to_string(cycles) + ',' + format_double(e.elapsed_s) + '\n';
        }
        write_file(out_dir / "race.csv", csv);

        const double ratio = entries[1].dist_m == 0.0
                                 ? std::numeric_limits<double>::infinity()
                                 : entries[0].dist_m / entries[1].dist_m;
        std::ostringstream summary;
        summary << "gait_a: " << entries[0].label << " " << format_double(entries[0].dist_m) << " m ("
                << format_double(entries[0].dist_m / kBodyLengthM / entries[0].elapsed_s) << " BL/s)\n"
                << "gait_b: " << entries[1].label << " " << format_double(entries[1].dist_m) << " m ("
                << format_double(entries[1].dist_m / kBodyLengthM / entries[1].elapsed_s) << " BL/s)\n"
                << "ratio_a_over_b: " << format_double(ratio) << '\n';
        write_file(out_dir / "race_summary.txt", summary.str());
        say(log, "race over " + std::to_string(cycles) + " cycles: " + entries[0].label + " " +
                     format_double(entries[0].dist_m) + " m vs " + entries[1].label + " " +
                     format_double(entries[1].dist_m) + " m (ratio " + format_double(ratio) + ")");
        return kOk;
    });
}

int cmd_plan(double height_m, double width_m, const fs::path& out_file, std::ostream* log) {
    return guarded(log, [&]() -> int {
        const std::vector<TrajectorySegment> segments = letter_n(height_m, width_m);
        if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
        save_plan(segments, out_file);
        say(log, "wrote " + std::to_string(segments.size()) + "-segment N plan to " + out_file.string());
        return kOk;
    });
}

}  // namespace softgait
