#include "softgait/gait.hpp"

#include <json.hpp>

#include "softgait/errors.hpp"

namespace softgait {

namespace {

using json = nlohmann::ordered_json;

constexpr int kGaitFormatVersion = 1;
constexpr const char* kGaitFormatName = "softgait-gait";

constexpr ServoState L = ServoState::Left;
constexpr ServoState N = ServoState::Neutral;
constexpr ServoState R = ServoState::Right;

std::string table_row(const Primitive& p) {
    std::string row;
    for (ServoState s : p.servos) row.push_back(servo_char(s));
    return row;
}

ServoState state_from_char(char c) {
    switch (c) {
        case 'L': return ServoState::Left;
        case 'N': return ServoState::Neutral;
        case 'R': return ServoState::Right;
        default: throw ParseError(std::string("unknown servo state '") + c + "'");
    }
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string canonical_table_string() {
    std::string s;
    for (const Primitive& p : primitive_table()) {
        if (!s.empty()) s.push_back(';');
        s += table_row(p);
    }
    return s;
}

}  // namespace

double servo_encoding(ServoState s) {
    switch (s) {
        case ServoState::Left: return 0.0;
        case ServoState::Neutral: return 0.5;
        case ServoState::Right: return 1.0;
    }
    return 0.5;
}

char servo_char(ServoState s) {
    switch (s) {
        case ServoState::Left: return 'L';
        case ServoState::Neutral: return 'N';
        case ServoState::Right: return 'R';
    }
    return 'N';
}

const std::array<Primitive, kNumPrimitives>& primitive_table() {
    // Neutral, linear extension, linear contraction, four tilts. Chosen to
    // span the extreme leg motions; the search only assumes the primitives
    // induce different behaviors.
    static const std::array<Primitive, kNumPrimitives> table = {{
        {0, {N, N, N, N}},
        {1, {R, R, R, R}},
        {2, {L, L, L, L}},
        {3, {R, R, L, L}},
        {4, {L, L, R, R}},
        {5, {R, L, R, L}},
        {6, {L, R, L, R}},
    }};
    return table;
}

std::uint64_t primitive_table_hash() {
    static const std::uint64_t h = fnv1a64(canonical_table_string());
    return h;
}

bool valid(const GaitAssignment& g) {
    for (const PrimitivePair& p : g.pairs) {
        if (p.first < 0 || p.first >= kNumPrimitives) return false;
        if (p.second < 0 || p.second >= kNumPrimitives) return false;
    }
    return true;
}

Gait make_gait(const GaitAssignment& assignment) {
    const auto& table = primitive_table();
    Gait gait;
    for (int leg = 0; leg < kNumLegs; ++leg) {
        const PrimitivePair& pair = assignment.pairs[leg];
        const Primitive& a = table[pair.first];
        const Primitive& b = table[pair.second];
        for (int s = 0; s < kServosPerLeg; ++s) {
            gait.steps[0][leg * kServosPerLeg + s] = a.servos[s];
            gait.steps[1][leg * kServosPerLeg + s] = b.servos[s];
            gait.steps[2][leg * kServosPerLeg + s] = ServoState::Neutral;
        }
    }
    return gait;
}

ServoTargets servo_targets(const Step& step) {
    ServoTargets targets{};
    for (int i = 0; i < kNumServos; ++i) {
        switch (step[i]) {
            case ServoState::Left: targets[i] = -kServoTravelRad; break;
            case ServoState::Neutral: targets[i] = 0.0; break;
            case ServoState::Right: targets[i] = kServoTravelRad; break;
        }
    }
    return targets;
}

std::string serialize_gait(const GaitAssignment& g, const std::string& provenance) {
    if (!valid(g)) throw ConfigError("gait assignment has primitive ids outside [0, 7)");
    json doc;
    doc["format"] = kGaitFormatName;
    doc["version"] = kGaitFormatVersion;
    json table = json::array();
    for (const Primitive& p : primitive_table()) table.push_back(table_row(p));
    doc["primitive_table"] = std::move(table);
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(primitive_table_hash()));
    doc["primitive_table_hash"] = hash;
    json pairs = json::array();
    for (const PrimitivePair& p : g.pairs) pairs.push_back({p.first, p.second});
    doc["assignment"] = std::move(pairs);
    if (!provenance.empty()) doc["provenance"] = provenance;
    return doc.dump(2) + "\n";
}

GaitAssignment deserialize_gait(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("gait document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("gait document is not a JSON object");
    if (!doc.contains("format") || doc["format"] != kGaitFormatName)
        throw ParseError("gait document has a missing or unknown format tag");
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw ParseError("gait document is unversioned");
    if (doc["version"].get<int>() != kGaitFormatVersion)
        throw ParseError("unsupported gait document version " + doc["version"].dump());

    if (!doc.contains("primitive_table") || !doc["primitive_table"].is_array() ||
        doc["primitive_table"].size() != kNumPrimitives)
        throw ParseError("gait document lacks the 7-row primitive table");
    const auto& canonical = primitive_table();
    for (int i = 0; i < kNumPrimitives; ++i) {
        const std::string row = doc["primitive_table"][i].get<std::string>();
        if (row.size() != kServosPerLeg)
            throw ParseError("primitive table row has wrong width");
        for (int s = 0; s < kServosPerLeg; ++s) {
            if (state_from_char(row[s]) != canonical[i].servos[s])
                throw ParseError("primitive table does not match the canonical table");
        }
    }
    if (doc.contains("primitive_table_hash")) {
        char expect[32];
        std::snprintf(expect, sizeof(expect), "%016llx",
                      static_cast<unsigned long long>(primitive_table_hash()));
        if (doc["primitive_table_hash"].get<std::string>() != expect)
            throw ParseError("primitive table hash mismatch");
    }

    if (!doc.contains("assignment") || !doc["assignment"].is_array() ||
        doc["assignment"].size() != kNumLegs)
        throw ParseError("gait document lacks a 4-leg assignment");
    GaitAssignment g;
    for (int leg = 0; leg < kNumLegs; ++leg) {
        const auto& pair = doc["assignment"][leg];
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError("assignment entries must be [first, second] pairs");
        g.pairs[leg].first = pair[0].get<int>();
        g.pairs[leg].second = pair[1].get<int>();
    }
    if (!valid(g)) throw ParseError("assignment has primitive ids outside [0, 7)");
    return g;
}

}  // namespace softgait
