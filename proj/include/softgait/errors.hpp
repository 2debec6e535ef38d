#pragma once

#include <stdexcept>

namespace softgait {

/// Malformed or unversioned input document (gait file, plan, config).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value or violated call precondition.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by an Evaluator when a gait evaluation cannot be completed.
/// Searches catch this and return the log accumulated so far.
struct EvaluatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Open-loop planning failure (e.g. a gait with zero mean on-axis velocity).
struct PlanningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace softgait
