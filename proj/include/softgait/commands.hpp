#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "softgait/io.hpp"
#include "softgait/oracle.hpp"

namespace softgait {

/// Process exit codes shared by the CLI and the command functions.
enum ExitCode {
    kOk = 0,
    kError = 1,
    kConfigErrorCode = 2,
    kSearchAbortedCode = 3,
    kBudgetExhaustedCode = 4,
};

/// Every command is a pure function of its RunConfig plus input files and
/// writes deterministic artifacts into out_dir. `log` may be null to run
/// silently.
int cmd_train(const RunConfig& config, GaitAxis axis, const std::filesystem::path& out_dir,
              std::ostream* log);

int cmd_oracle(const RunConfig& config, GaitAxis axis, const SearchSpace& space,
               const std::filesystem::path& out_dir, std::ostream* log);

int cmd_velocities(const RunConfig& config, const std::vector<std::filesystem::path>& gait_files,
                   const std::filesystem::path& out_dir, std::ostream* log);

int cmd_trace(const RunConfig& config, const std::filesystem::path& gaitset_dir,
              const std::filesystem::path& plan_file, bool closed_loop,
              const std::filesystem::path& out_dir, std::ostream* log);

int cmd_race(const RunConfig& config, const std::filesystem::path& gait_a,
             const std::filesystem::path& gait_b, int cycles,
             const std::filesystem::path& out_dir, std::ostream* log);

int cmd_plan(double height_m, double width_m, const std::filesystem::path& out_file,
             std::ostream* log);

/// Gait file name used inside a gait-set directory: gait_<axis token>.json.
std::filesystem::path gait_file_name(GaitAxis axis);

}  // namespace softgait
