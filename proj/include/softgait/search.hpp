#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "softgait/gait.hpp"
#include "softgait/reward.hpp"
#include "softgait/sim.hpp"

namespace softgait {

/// Gait evaluation contract: assignment in, body-frame displacement out.
/// Side effects (wear, pose advance) are permitted; invocations are counted.
/// Implementations signal failure by throwing EvaluatorError.
class Evaluator {
public:
    virtual ~Evaluator() = default;

    BodyDisplacement evaluate(const GaitAssignment& g) {
        ++calls_;
        return do_evaluate(g);
    }

    std::uint64_t calls() const { return calls_; }

private:
    virtual BodyDisplacement do_evaluate(const GaitAssignment& g) = 0;

    std::uint64_t calls_ = 0;
};

/// Row captured for every per-cycle pose during evaluation (CSV export).
struct CycleRow {
    std::uint64_t eval_id = 0;
    int cycle = 0;
    Pose2D pose;
    double time_s = 0.0;
};

/// Evaluator backed by a SimRobot. With reset_pose_each_eval the robot is
/// moved to the origin before every evaluation, which makes a noise-free,
/// wear-free evaluation a pure function of the assignment (the mode the
/// brute-force oracle requires).
class SimEvaluator : public Evaluator {
public:
    SimEvaluator(SimRobot& robot, const EvaluationConfig& cfg, bool reset_pose_each_eval = false)
        : robot_(robot), cfg_(cfg), reset_(reset_pose_each_eval) {}

    void set_cycle_sink(std::vector<CycleRow>* sink) { sink_ = sink; }
    const EvaluationConfig& eval_config() const { return cfg_; }
    SimRobot& robot() { return robot_; }

private:
    BodyDisplacement do_evaluate(const GaitAssignment& g) override;

    SimRobot& robot_;
    EvaluationConfig cfg_;
    bool reset_;
    std::vector<CycleRow>* sink_ = nullptr;
};

/// Owning variant for factories: constructs a fresh robot per evaluator.
std::unique_ptr<Evaluator> make_sim_evaluator(const SimConfig& sim, const EvaluationConfig& eval,
                                              bool reset_pose_each_eval = false);

/// One record per candidate tested. leg = -1 marks a whole-gait seed
/// measurement taken at the start of a refinement round.
struct TrainingRecord {
    std::uint64_t eval_index = 0;
    int leg = 0;
    int pair_first = 0;
    int pair_second = 0;
    BodyDisplacement displacement;
    double reward = 0.0;
    bool accepted = false;
};

struct TrainingMeta {
    RewardCoefficients coefficients;
    EvaluationConfig eval;
    std::vector<int> leg_order;
    std::uint64_t seed = 0;
    int repeats = 1;
};

struct TrainingLog {
    std::vector<TrainingRecord> records;
    TrainingMeta meta;
};

enum class SearchStatus { Complete, Aborted };

struct SearchResult {
    GaitAssignment best;
    double best_reward = 0.0;
    TrainingLog log;
    SearchStatus status = SearchStatus::Complete;
};

struct SearchOptions {
    std::vector<int> leg_order = {0, 1, 2, 3};  // search order; may cover a leg subset
    int n_prims = kNumPrimitives;               // primitives considered, ids [0, n_prims)
    int repeats = 1;                            // evaluations averaged per candidate
};

/// Evaluations needed for one full sweep: n_legs * n_prims^2.
std::uint64_t evals_required(int n_legs, int n_prims);

/// Greedy per-leg tree search. For each leg in order, tries all n_prims^2
/// pairs in lexicographic order on top of the best gait so far, accepting
/// strictly greater rewards; the best reward persists across legs. Exactly
/// evals_required(...) candidates are tested (times `repeats`).
SearchResult tree_search(Evaluator& ev, const RewardCoefficients& k, const GaitAssignment& initial,
                         const SearchOptions& opts = {});

/// Re-runs the per-leg sweep seeded with an existing gait. Each round first
/// re-measures the incumbent (one extra evaluation) and uses that as the
/// reward to beat, so a round never trades the incumbent for a worse gait.
SearchResult refine(Evaluator& ev, const RewardCoefficients& k, const GaitAssignment& existing,
                    int rounds, const SearchOptions& opts = {});

/// Simulated wall-clock for a training run of `rounds` total rounds (round 1
/// is the initial search; later rounds are refinements, each adding one seed
/// evaluation).
double estimate_training_time(const EvaluationConfig& cfg, int n_legs, int n_prims, int rounds);

}  // namespace softgait
