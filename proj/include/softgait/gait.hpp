#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace softgait {

inline constexpr int kNumLegs = 4;
inline constexpr int kServosPerLeg = 4;
inline constexpr int kNumServos = kNumLegs * kServosPerLeg;
inline constexpr int kNumPrimitives = 7;
inline constexpr int kPairsPerLeg = kNumPrimitives * kNumPrimitives;  // 49
inline constexpr int kStepsPerCycle = 3;

/// Servos are limited to 80% of nominal travel.
inline constexpr double kServoTravelRad = 1.25;

/// Robot body length; linear motion is reported in body lengths (BL).
inline constexpr double kBodyLengthM = 0.15;

/// Three-valued servo command. No intermediate positions exist. Neutral is
/// the default so value-initialized steps are the rest position.
enum class ServoState : std::uint8_t { Neutral, Left, Right };

/// Numeric encoding: fully left 0, centered 0.5, fully right 1.
double servo_encoding(ServoState s);

/// Single-letter encoding used by the gait file format.
char servo_char(ServoState s);

/// A 4-servo configuration for one leg.
struct Primitive {
    int id = 0;
    std::array<ServoState, kServosPerLeg> servos{};
};

/// The 7 canonical primitives: neutral, extension, contraction and the four
/// tilts. p0 is all-Neutral.
const std::array<Primitive, kNumPrimitives>& primitive_table();

/// FNV-1a 64 hash of the canonical primitive table; recorded in gait files.
std::uint64_t primitive_table_hash();

/// Ordered two-step primitive sequence assigned to one leg. 49 per leg.
struct PrimitivePair {
    int first = 0;
    int second = 0;

    bool operator==(const PrimitivePair&) const = default;
    auto operator<=>(const PrimitivePair&) const = default;
};

/// One pair per leg, leg-major A..D. The searchable object.
struct GaitAssignment {
    std::array<PrimitivePair, kNumLegs> pairs{};

    bool operator==(const GaitAssignment&) const = default;
};

inline GaitAssignment neutral_assignment() { return {}; }

/// True when every primitive id lies in [0, kNumPrimitives).
bool valid(const GaitAssignment& g);

/// One full set of 16 servo positions, leg-major A,B,C,D x servo 1-4.
using Step = std::array<ServoState, kNumServos>;

/// Three steps per cycle; the final step is always all-Neutral so gaits can
/// be sequenced arbitrarily.
struct Gait {
    std::array<Step, kStepsPerCycle> steps{};
};

/// Servo angle commands in radians, within [-1.25, +1.25].
using ServoTargets = std::array<double, kNumServos>;

/// Expands an assignment into its three steps: each leg's first primitive,
/// each leg's second primitive, then the all-Neutral return step.
Gait make_gait(const GaitAssignment& assignment);

/// Maps states to angles: Left -> -1.25 rad, Neutral -> 0, Right -> +1.25 rad.
ServoTargets servo_targets(const Step& step);

/// Versioned structured-text gait document (JSON). Records format version,
/// the primitive table with its hash, and the assignment.
std::string serialize_gait(const GaitAssignment& g, const std::string& provenance = "");

/// Inverse of serialize_gait. Throws ParseError on malformed, unversioned or
/// mismatched-table documents.
GaitAssignment deserialize_gait(const std::string& text);

}  // namespace softgait
