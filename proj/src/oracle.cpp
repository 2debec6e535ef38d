#include "softgait/oracle.hpp"

#include <limits>

#include "softgait/errors.hpp"

namespace softgait {

namespace {

void validate_space(const SearchSpace& space) {
    if (space.n_legs < 1 || space.n_legs > kNumLegs)
        throw ConfigError("oracle n_legs must lie in [1, 4]");
    if (space.n_prims < 1 || space.n_prims > kNumPrimitives)
        throw ConfigError("oracle n_prims must lie in [1, 7]");
}

struct Best {
    double reward = -std::numeric_limits<double>::infinity();
    std::uint64_t rank = 0;
    bool any = false;

    void offer(double r, std::uint64_t i) {
        if (!any || r > reward || (r == reward && i < rank)) {
            reward = r;
            rank = i;
            any = true;
        }
    }

    void merge(const Best& other) {
        if (other.any) offer(other.reward, other.rank);
    }
};

OracleResult finish(const Best& best, const SearchSpace& space) {
    OracleResult result;
    result.best = assignment_from_rank(best.rank, space);
    result.best_reward = best.reward;
    result.candidates = space.total_assignments();
    return result;
}

}  // namespace

std::uint64_t SearchSpace::total_assignments() const {
    std::uint64_t total = 1;
    for (int i = 0; i < 2 * n_legs; ++i) total *= static_cast<std::uint64_t>(n_prims);
    return total;
}

GaitAssignment assignment_from_rank(std::uint64_t rank, const SearchSpace& space) {
    GaitAssignment g;
    const auto n = static_cast<std::uint64_t>(space.n_prims);
    for (int slot = 2 * space.n_legs - 1; slot >= 0; --slot) {
        const int digit = static_cast<int>(rank % n);
        rank /= n;
        const int leg = slot / 2;
        if (slot % 2 == 0) {
            g.pairs[leg].first = digit;
        } else {
            g.pairs[leg].second = digit;
        }
    }
    return g;
}

OracleResult oracle_sweep_serial(const EvaluatorFactory& factory, const RewardCoefficients& k,
                                 const SearchSpace& space) {
    validate_space(space);
    const std::uint64_t total = space.total_assignments();
    auto ev = factory();
    Best best;
    for (std::uint64_t i = 0; i < total; ++i) {
        const GaitAssignment g = assignment_from_rank(i, space);
        const double r = reward(ev->evaluate(g), k);
        if (!best.any || r > best.reward) best.offer(r, i);
    }
    return finish(best, space);
}

OracleResult oracle_sweep_parallel(const EvaluatorFactory& factory, const RewardCoefficients& k,
                                   const SearchSpace& space) {
#ifdef _OPENMP
    validate_space(space);
    const auto total = static_cast<std::int64_t>(space.total_assignments());
    Best global;
    #pragma omp parallel
    {
        auto ev = factory();
        Best local;
        #pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < total; ++i) {
            const GaitAssignment g = assignment_from_rank(static_cast<std::uint64_t>(i), space);
            const double r = reward(ev->evaluate(g), k);
            local.offer(r, static_cast<std::uint64_t>(i));
        }
        #pragma omp critical
        global.merge(local);
    }
    return finish(global, space);
#else
    return oracle_sweep_serial(factory, k, space);
#endif
}

OracleResult brute_force_oracle(const EvaluatorFactory& factory, const RewardCoefficients& k,
                                const SearchSpace& space) {
    return oracle_sweep_parallel(factory, k, space);
}

}  // namespace softgait
