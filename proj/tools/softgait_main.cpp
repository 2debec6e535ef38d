// softgait — gait generation and closed-loop scheduling for a simulated
// soft quadruped.
//
// Subcommands:
//   train       search for one axis gait and write it with its training log
//   oracle      exhaustive sweep vs. tree search on a deterministic sim
//   velocities  measure mean velocity per gait file (CSV + bar chart)
//   trace       follow a plan file open- or closed-loop with a gait set
//   race        run two gaits for N cycles and compare net displacement
//   plan        write a letter-N plan file
//
// Exit codes: 0 ok, 1 error, 2 config error, 3 search aborted, 4 budget
// exhausted.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softgait/commands.hpp"
#include "softgait/errors.hpp"

namespace {

using namespace softgait;

struct Common {
    std::string config_file;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, Common& common, bool with_out = true) {
    cmd->add_option("--config", common.config_file, "Run-configuration JSON file");
    if (with_out) cmd->add_option("--out", common.out_dir, "Output directory");
    cmd->add_option("--seed", common.seed, "Override the simulator seed")
        ->each([&common](const std::string&) { common.seed_set = true; });
}

RunConfig resolve_config(const Common& common) {
    RunConfig config;
    if (!common.config_file.empty()) config = load_run_config(common.config_file);
    if (common.seed_set) config.sim.seed = common.seed;
    return config;
}

GaitAxis resolve_axis(const std::string& name) {
    const auto axis = parse_axis(name);
    if (!axis) throw ConfigError("unknown axis '" + name + "' (use +x -x +y -y +theta -theta)");
    return *axis;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soft quadruped gait generation toolkit"};
    app.require_subcommand(1);

    Common common;
    std::string axis_arg = "+x";
    int rounds = 0;
    int legs = 4, prims = 7;
    std::vector<std::string> gait_files;
    std::string gaits_dir, plan_file, mode = "closed";
    std::string gait_a, gait_b;
    int race_cycles = 100;
    double height = 0.30, width = 0.225;
    std::string plan_out = "plan.json";

    CLI::App* train = app.add_subcommand("train", "search a gait for one axis");
    add_common(train, common);
    train->add_option("--axis", axis_arg, "gait axis (+x -x +y -y +theta -theta)");
    train->add_option("--rounds", rounds, "total training rounds (>= 1)")
        ->check(CLI::PositiveNumber);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force sweep vs. tree search");
    add_common(oracle, common);
    oracle->add_option("--axis", axis_arg, "gait axis");
    oracle->add_option("--legs", legs, "legs in the swept space (1-4)");
    oracle->add_option("--prims", prims, "primitives in the swept space (1-7)");

    CLI::App* velocities = app.add_subcommand("velocities", "measure mean velocities per gait");
    add_common(velocities, common);
    velocities->add_option("gaits", gait_files, "gait JSON files")->required();

    CLI::App* trace = app.add_subcommand("trace", "follow a plan with a gait set");
    add_common(trace, common);
    trace->add_option("--gaits", gaits_dir, "directory holding the six gait_<axis>.json files")
        ->required();
    trace->add_option("--plan", plan_file, "plan JSON file")->required();
    trace->add_option("--mode", mode, "open or closed")->check(CLI::IsMember({"open", "closed"}));

    CLI::App* race = app.add_subcommand("race", "compare two gaits over N cycles");
    add_common(race, common);
    race->add_option("gait_a", gait_a, "first gait file")->required();
    race->add_option("gait_b", gait_b, "second gait file")->required();
    race->add_option("--cycles", race_cycles, "cycles per gait");

    CLI::App* plan = app.add_subcommand("plan", "write a letter-N plan file");
    plan->add_option("--height", height, "N height in meters");
    plan->add_option("--width", width, "N width in meters");
    plan->add_option("--out", plan_out, "output plan file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigErrorCode;
    }

    try {
        if (train->parsed()) {
            RunConfig config = resolve_config(common);
            if (rounds > 0) config.search.rounds = rounds;
            return cmd_train(config, resolve_axis(axis_arg), common.out_dir, &std::cout);
        }
        if (oracle->parsed()) {
            return cmd_oracle(resolve_config(common), resolve_axis(axis_arg), {legs, prims},
                              common.out_dir, &std::cout);
        }
        if (velocities->parsed()) {
            std::vector<std::filesystem::path> files(gait_files.begin(), gait_files.end());
            return cmd_velocities(resolve_config(common), files, common.out_dir, &std::cout);
        }
        if (trace->parsed()) {
            return cmd_trace(resolve_config(common), gaits_dir, plan_file, mode == "closed",
                             common.out_dir, &std::cout);
        }
        if (race->parsed()) {
            return cmd_race(resolve_config(common), gait_a, gait_b, race_cycles, common.out_dir,
                            &std::cout);
        }
        if (plan->parsed()) {
            return cmd_plan(height, width, plan_out, &std::cout);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigErrorCode;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigErrorCode;
    } catch (const PlanningError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigErrorCode;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
