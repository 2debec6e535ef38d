#include "softgait/search.hpp"

#include <limits>

#include "softgait/errors.hpp"

namespace softgait {

namespace {

void validate_options(const SearchOptions& opts) {
    if (opts.leg_order.empty()) throw ConfigError("leg_order must not be empty");
    bool seen[kNumLegs] = {};
    for (int leg : opts.leg_order) {
        if (leg < 0 || leg >= kNumLegs) throw ConfigError("leg_order entries must lie in [0, 4)");
        if (seen[leg]) throw ConfigError("leg_order must not repeat a leg");
        seen[leg] = true;
    }
    if (opts.n_prims < 1 || opts.n_prims > kNumPrimitives)
        throw ConfigError("n_prims must lie in [1, 7]");
    if (opts.repeats < 1) throw ConfigError("repeats must be >= 1");
}

struct Candidate {
    BodyDisplacement displacement;
    double reward = 0.0;
};

Candidate evaluate_candidate(Evaluator& ev, const RewardCoefficients& k, const GaitAssignment& g,
                             int repeats) {
    Candidate c;
    for (int i = 0; i < repeats; ++i) {
        const BodyDisplacement d = ev.evaluate(g);
        c.displacement.dx += d.dx;
        c.displacement.dy += d.dy;
        c.displacement.dtheta += d.dtheta;
        c.reward += reward(d, k);
    }
    const double n = static_cast<double>(repeats);
    c.displacement.dx /= n;
    c.displacement.dy /= n;
    c.displacement.dtheta /= n;
    c.reward /= n;
    return c;
}

struct SweepState {
    GaitAssignment current;
    GaitAssignment best;
    double best_reward = -std::numeric_limits<double>::infinity();
};

/// One pass over every leg in order; the core of Algorithm-style search.
void sweep_legs(Evaluator& ev, const RewardCoefficients& k, const SearchOptions& opts,
                SweepState& state, TrainingLog& log) {
    for (int leg : opts.leg_order) {
        for (int a = 0; a < opts.n_prims; ++a) {
            for (int b = 0; b < opts.n_prims; ++b) {
                state.current.pairs[leg] = {a, b};
                const Candidate c = evaluate_candidate(ev, k, state.current, opts.repeats);
                const bool accepted = c.reward > state.best_reward;
                if (accepted) {
                    state.best_reward = c.reward;
                    state.best = state.current;
                }
                log.records.push_back({ev.calls() - 1, leg, a, b, c.displacement, c.reward, accepted});
            }
        }
        state.current = state.best;
    }
}

TrainingMeta make_meta(const RewardCoefficients& k, const SearchOptions& opts) {
    return {k, {}, opts.leg_order, 0, opts.repeats};
}

}  // namespace

BodyDisplacement SimEvaluator::do_evaluate(const GaitAssignment& g) {
    if (reset_) robot_.reset_pose({});
    const ExecResult r = robot_.execute_gait(g, cfg_);
    if (sink_) {
        const std::uint64_t eval_id = robot_.eval_count() - 1;
        for (int i = 0; i < static_cast<int>(r.per_cycle.size()); ++i) {
            sink_->push_back({eval_id, i, r.per_cycle[i].pose, r.per_cycle[i].time_s});
        }
    }
    return body_frame_displacement(r.before, r.after, cfg_.cycles_per_eval);
}

std::unique_ptr<Evaluator> make_sim_evaluator(const SimConfig& sim, const EvaluationConfig& eval,
                                              bool reset_pose_each_eval) {
    struct OwningSimEvaluator : Evaluator {
        OwningSimEvaluator(const SimConfig& sc, const EvaluationConfig& ec, bool reset)
            : robot(sc), inner(robot, ec, reset) {}
        BodyDisplacement do_evaluate(const GaitAssignment& g) override { return inner.evaluate(g); }
        SimRobot robot;
        SimEvaluator inner;
    };
    return std::make_unique<OwningSimEvaluator>(sim, eval, reset_pose_each_eval);
}

std::uint64_t evals_required(int n_legs, int n_prims) {
    if (n_legs < 1 || n_prims < 1) throw ConfigError("evals_required needs n_legs, n_prims >= 1");
    return static_cast<std::uint64_t>(n_legs) * static_cast<std::uint64_t>(n_prims) *
           static_cast<std::uint64_t>(n_prims);
}

SearchResult tree_search(Evaluator& ev, const RewardCoefficients& k, const GaitAssignment& initial,
                         const SearchOptions& opts) {
    validate_options(opts);
    SearchResult result;
    result.log.meta = make_meta(k, opts);
    SweepState state{initial, initial, -std::numeric_limits<double>::infinity()};
    try {
        sweep_legs(ev, k, opts, state, result.log);
    } catch (const EvaluatorError&) {
        result.status = SearchStatus::Aborted;
    }
    result.best = state.best;
    result.best_reward = state.best_reward;
    return result;
}

SearchResult refine(Evaluator& ev, const RewardCoefficients& k, const GaitAssignment& existing,
                    int rounds, const SearchOptions& opts) {
    validate_options(opts);
    if (rounds < 1) throw ConfigError("refine needs rounds >= 1");

    SearchResult result;
    result.log.meta = make_meta(k, opts);
    GaitAssignment incumbent = existing;
    result.best = existing;
    result.best_reward = -std::numeric_limits<double>::infinity();

    for (int round = 0; round < rounds; ++round) {
        SweepState state;
        try {
            // Seed the reward to beat with a fresh measurement of the incumbent.
            const Candidate seed = evaluate_candidate(ev, k, incumbent, opts.repeats);
            result.log.records.push_back(
                {ev.calls() - 1, -1, -1, -1, seed.displacement, seed.reward, true});
            state = {incumbent, incumbent, seed.reward};
            sweep_legs(ev, k, opts, state, result.log);
        } catch (const EvaluatorError&) {
            result.status = SearchStatus::Aborted;
            return result;
        }
        incumbent = state.best;
        result.best = state.best;
        result.best_reward = state.best_reward;
    }
    return result;
}

double estimate_training_time(const EvaluationConfig& cfg, int n_legs, int n_prims, int rounds) {
    if (rounds < 1) throw ConfigError("rounds must be >= 1");
    const double per_eval =
        cfg.cycles_per_eval * kStepsPerCycle * cfg.step_delay_s + cfg.per_eval_overhead_s;
    const std::uint64_t sweep_evals =
        static_cast<std::uint64_t>(rounds) * evals_required(n_legs, n_prims);
    const std::uint64_t seed_evals = rounds > 1 ? static_cast<std::uint64_t>(rounds - 1) : 0;
    return static_cast<double>(sweep_evals + seed_evals) * per_eval;
}

}  // namespace softgait
