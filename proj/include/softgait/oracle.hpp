#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "softgait/gait.hpp"
#include "softgait/reward.hpp"
#include "softgait/search.hpp"

namespace softgait {

/// Produces independent evaluator instances so sweep threads never share
/// state. Each instance must be deterministic and per-candidate
/// side-effect-free (a noise-free, wear-free SimEvaluator with pose reset
/// qualifies).
using EvaluatorFactory = std::function<std::unique_ptr<Evaluator>()>;

/// Sub-space swept by the oracle: the first n_legs legs range over the first
/// n_prims primitives; the remaining legs stay neutral.
struct SearchSpace {
    int n_legs = kNumLegs;
    int n_prims = kNumPrimitives;

    std::uint64_t total_assignments() const;  // n_prims^(2 * n_legs)
};

struct OracleResult {
    GaitAssignment best;
    double best_reward = 0.0;
    std::uint64_t candidates = 0;
};

/// Decodes a lexicographic rank into an assignment; rank 0 is all-neutral,
/// leg 0's first primitive is the most significant digit.
GaitAssignment assignment_from_rank(std::uint64_t rank, const SearchSpace& space);

/// Serial reference sweep, kept for testing: first strictly-greater reward
/// wins, so ties resolve to the lexicographically smallest assignment.
OracleResult oracle_sweep_serial(const EvaluatorFactory& factory, const RewardCoefficients& k,
                                 const SearchSpace& space = {});

/// OpenMP sweep over the same candidate ordering. Thread-local bests merge
/// by (reward, rank), reproducing the serial tie-breaking exactly.
OracleResult oracle_sweep_parallel(const EvaluatorFactory& factory, const RewardCoefficients& k,
                                   const SearchSpace& space = {});

/// Exhaustive global argmax; parallel when OpenMP is available.
OracleResult brute_force_oracle(const EvaluatorFactory& factory, const RewardCoefficients& k,
                                const SearchSpace& space = {});

}  // namespace softgait
