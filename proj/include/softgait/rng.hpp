#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace softgait {

// Deterministic random stream used by the simulator. The raw mt19937_64
// sequence is pinned by the standard; the distributions are hand-rolled
// because std::uniform_real_distribution / std::normal_distribution output
// is implementation-defined, which would break byte-identical replays
// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double gaussian() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace softgait
