#include "softgait/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "softgait/errors.hpp"

namespace softgait {

namespace {

using json = nlohmann::ordered_json;

constexpr int kConfigVersion = 1;
constexpr const char* kConfigFormat = "softgait-config";
constexpr int kPlanVersion = 1;
constexpr const char* kPlanFormat = "softgait-plan";

json parse_document(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

void check_header(const json& doc, const char* format, int version, const char* what) {
    if (!doc.is_object()) throw ParseError(std::string(what) + " is not a JSON object");
    if (!doc.contains("format") || doc["format"] != format)
        throw ParseError(std::string(what) + " has a missing or unknown format tag");
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw ParseError(std::string(what) + " is unversioned");
    if (doc["version"].get<int>() != version)
        throw ParseError(std::string(what) + " has unsupported version " + doc["version"].dump());
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const char* where) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ParseError("unknown key '" + item.key() + "' in " + where);
    }
}

XYTheta xytheta_from(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(std::string(where) + " must be a [x, y, theta] array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json xytheta_to(const XYTheta& v) { return json::array({v.x, v.y, v.theta}); }

std::string csv_field(double v) { return format_double(v); }

}  // namespace

EvaluationConfig eval_for_axis(const RunConfig& config, GaitAxis axis) {
    EvaluationConfig cfg = config.eval;
    if (config.auto_cycles) cfg.cycles_per_eval = axis_is_translation(axis) ? 3 : 1;
    return cfg;
}

RewardCoefficients coefficients_for_axis(const RunConfig& config, GaitAxis axis) {
    const auto it = config.reward_overrides.find(axis);
    return it != config.reward_overrides.end() ? it->second : preset(axis);
}

RunConfig parse_run_config(const std::string& text) {
    const json doc = parse_document(text, "run config");
    check_header(doc, kConfigFormat, kConfigVersion, "run config");
    reject_unknown_keys(doc, {"format", "version", "sim", "eval", "search", "control", "reward"},
                        "run config");

    RunConfig config;
    if (doc.contains("sim")) {
        const json& sim = doc["sim"];
        reject_unknown_keys(sim,
                            {"seed", "effect_scale", "noise_sigma", "wear_rate",
                             "max_step_translation", "max_step_rotation"},
                            "sim section");
        if (sim.contains("seed")) config.sim.seed = sim["seed"].get<std::uint64_t>();
        if (sim.contains("effect_scale"))
            config.sim.effect_scale = xytheta_from(sim["effect_scale"], "effect_scale");
        if (sim.contains("noise_sigma"))
            config.sim.noise_sigma = xytheta_from(sim["noise_sigma"], "noise_sigma");
        if (sim.contains("wear_rate")) config.sim.wear_rate = sim["wear_rate"].get<double>();
        if (sim.contains("max_step_translation"))
            config.sim.max_step_translation = sim["max_step_translation"].get<double>();
        if (sim.contains("max_step_rotation"))
            config.sim.max_step_rotation = sim["max_step_rotation"].get<double>();
    }
    if (doc.contains("eval")) {
        const json& ev = doc["eval"];
        reject_unknown_keys(ev, {"step_delay_s", "cycles_per_eval", "per_eval_overhead_s"},
                            "eval section");
        if (ev.contains("step_delay_s")) config.eval.step_delay_s = ev["step_delay_s"].get<double>();
        if (ev.contains("cycles_per_eval")) {
            config.eval.cycles_per_eval = ev["cycles_per_eval"].get<int>();
            config.auto_cycles = false;
        }
        if (ev.contains("per_eval_overhead_s"))
            config.eval.per_eval_overhead_s = ev["per_eval_overhead_s"].get<double>();
    }
    if (doc.contains("search")) {
        const json& se = doc["search"];
        reject_unknown_keys(se, {"leg_order", "rounds", "repeats"}, "search section");
        if (se.contains("leg_order")) {
            config.search.leg_order.clear();
            for (const auto& v : se["leg_order"]) config.search.leg_order.push_back(v.get<int>());
        }
        if (se.contains("rounds")) config.search.rounds = se["rounds"].get<int>();
        if (se.contains("repeats")) config.search.repeats = se["repeats"].get<int>();
    }
    if (doc.contains("control")) {
        const json& ct = doc["control"];
        reject_unknown_keys(ct,
                            {"tolerance", "check_every", "deadband_fraction", "budget_factor",
                             "velocity_cycles"},
                            "control section");
        if (ct.contains("tolerance")) {
            const XYTheta t = xytheta_from(ct["tolerance"], "tolerance");
            config.control.tolerance = {t.x, t.y, t.theta};
        }
        if (ct.contains("check_every")) config.control.check_every = ct["check_every"].get<int>();
        if (ct.contains("deadband_fraction"))
            config.control.deadband_fraction = ct["deadband_fraction"].get<double>();
        if (ct.contains("budget_factor"))
            config.control.budget_factor = ct["budget_factor"].get<double>();
        if (ct.contains("velocity_cycles"))
            config.control.velocity_cycles = ct["velocity_cycles"].get<int>();
    }
    if (doc.contains("reward")) {
        for (const auto& item : doc["reward"].items()) {
            const auto axis = parse_axis(item.key());
            if (!axis) throw ParseError("unknown axis '" + item.key() + "' in reward section");
            const json& k = item.value();
            reject_unknown_keys(k, {"a", "b", "c", "d", "e", "f"}, "reward coefficients");
            RewardCoefficients rc;
            rc.a = k.value("a", 0.0);
            rc.b = k.value("b", 0.0);
            rc.c = k.value("c", 0.0);
            rc.d = k.value("d", 0.0);
            rc.e = k.value("e", 0.0);
            rc.f = k.value("f", 0.0);
            config.reward_overrides[*axis] = rc;
        }
    }
    return config;
}

std::string dump_run_config(const RunConfig& config) {
    json doc;
    doc["format"] = kConfigFormat;
    doc["version"] = kConfigVersion;
    json sim;
    sim["seed"] = config.sim.seed;
    sim["effect_scale"] = xytheta_to(config.sim.effect_scale);
    sim["noise_sigma"] = xytheta_to(config.sim.noise_sigma);
    sim["wear_rate"] = config.sim.wear_rate;
    sim["max_step_translation"] = config.sim.max_step_translation;
    sim["max_step_rotation"] = config.sim.max_step_rotation;
    doc["sim"] = std::move(sim);
    json ev;
    ev["step_delay_s"] = config.eval.step_delay_s;
    if (!config.auto_cycles) ev["cycles_per_eval"] = config.eval.cycles_per_eval;
    ev["per_eval_overhead_s"] = config.eval.per_eval_overhead_s;
    doc["eval"] = std::move(ev);
    json se;
    se["leg_order"] = config.search.leg_order;
    se["rounds"] = config.search.rounds;
    se["repeats"] = config.search.repeats;
    doc["search"] = std::move(se);
    json ct;
    ct["tolerance"] = json::array({config.control.tolerance.x_tol, config.control.tolerance.y_tol,
                                   config.control.tolerance.theta_tol});
    ct["check_every"] = config.control.check_every;
    ct["deadband_fraction"] = config.control.deadband_fraction;
    ct["budget_factor"] = config.control.budget_factor;
    ct["velocity_cycles"] = config.control.velocity_cycles;
    doc["control"] = std::move(ct);
    if (!config.reward_overrides.empty()) {
        json rw;
        for (const auto& [axis, k] : config.reward_overrides) {
            rw[std::string(axis_name(axis))] = {{"a", k.a}, {"b", k.b}, {"c", k.c},
                                                {"d", k.d}, {"e", k.e}, {"f", k.f}};
        }
        doc["reward"] = std::move(rw);
    }
    return doc.dump(2) + "\n";
}

RunConfig load_run_config(const std::filesystem::path& file) {
    return parse_run_config(read_file(file));
}

void save_run_config(const RunConfig& config, const std::filesystem::path& file) {
    write_file(file, dump_run_config(config));
}

std::vector<TrajectorySegment> parse_plan(const std::string& text) {
    const json doc = parse_document(text, "plan");
    check_header(doc, kPlanFormat, kPlanVersion, "plan");
    reject_unknown_keys(doc, {"format", "version", "segments"}, "plan");
    if (!doc.contains("segments") || !doc["segments"].is_array())
        throw ParseError("plan lacks a segments array");
    if (doc["segments"].empty()) throw ParseError("plan has no segments");

    std::vector<TrajectorySegment> segments;
    for (const json& s : doc["segments"]) {
        reject_unknown_keys(s, {"kind", "magnitude"}, "plan segment");
        if (!s.contains("kind") || !s.contains("magnitude"))
            throw ParseError("plan segment needs kind and magnitude");
        const std::string kind = s["kind"].get<std::string>();
        TrajectorySegment seg;
        if (kind == "translation") {
            seg.kind = TrajectorySegment::Kind::Translation;
        } else if (kind == "rotation") {
            seg.kind = TrajectorySegment::Kind::Rotation;
        } else {
            throw ParseError("plan segment kind must be translation or rotation");
        }
        seg.magnitude = s["magnitude"].get<double>();
        if (seg.magnitude == 0.0) throw ParseError("plan segment magnitude must be nonzero");
        segments.push_back(seg);
    }
    return segments;
}

std::string dump_plan(const std::vector<TrajectorySegment>& segments) {
    json doc;
    doc["format"] = kPlanFormat;
    doc["version"] = kPlanVersion;
    json list = json::array();
    for (const TrajectorySegment& s : segments) {
        list.push_back({{"kind", s.kind == TrajectorySegment::Kind::Translation ? "translation"
                                                                                : "rotation"},
                        {"magnitude", s.magnitude}});
    }
    doc["segments"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::vector<TrajectorySegment> load_plan(const std::filesystem::path& file) {
    return parse_plan(read_file(file));
}

void save_plan(const std::vector<TrajectorySegment>& segments, const std::filesystem::path& file) {
    write_file(file, dump_plan(segments));
}

void save_gait(const GaitAssignment& g, const std::filesystem::path& file,
               const std::string& provenance) {
    write_file(file, serialize_gait(g, provenance));
}

GaitAssignment load_gait(const std::filesystem::path& file) {
    return deserialize_gait(read_file(file));
}

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string training_log_csv(const TrainingLog& log) {
    std::string out = "eval_index,leg,pair_first,pair_second,dx_bl,dy_bl,dtheta_rad,reward,accepted\n";
    for (const TrainingRecord& r : log.records) {
        out += std::to_string(r.eval_index) + ',' + std::to_string(r.leg) + ',' +
               std::to_string(r.pair_first) + ',' + std::to_string(r.pair_second) + ',' +
               csv_field(r.displacement.dx) + ',' + csv_field(r.displacement.dy) + ',' +
               csv_field(r.displacement.dtheta) + ',' + csv_field(r.reward) + ',' +
               (r.accepted ? '1' : '0') + '\n';
    }
    return out;
}

std::string trace_csv(const std::vector<TraceEntry>& entries) {
    std::string out = "time_s,x_m,y_m,theta_rad,axis,corrective_flag,drift_x,drift_y,drift_theta\n";
    for (const TraceEntry& e : entries) {
        out += csv_field(e.time_s) + ',' + csv_field(e.pose.x) + ',' + csv_field(e.pose.y) + ',' +
               csv_field(e.pose.theta) + ',' + std::string(axis_name(e.axis)) + ',' +
               (e.corrective ? '1' : '0') + ',' + csv_field(e.drift.x) + ',' +
               csv_field(e.drift.y) + ',' + csv_field(e.drift.theta) + '\n';
    }
    return out;
}

std::string cycles_csv(const std::vector<CycleRow>& rows) {
    std::string out = "eval_id,cycle,x_m,y_m,theta_rad,sim_time_s\n";
    for (const CycleRow& r : rows) {
        out += std::to_string(r.eval_id) + ',' + std::to_string(r.cycle) + ',' +
               csv_field(r.pose.x) + ',' + csv_field(r.pose.y) + ',' + csv_field(r.pose.theta) +
               ',' + csv_field(r.time_s) + '\n';
    }
    return out;
}

std::string velocities_csv(const std::vector<VelocityRow>& rows) {
    std::string out =
        "axis,mean_dx_bl,mean_dy_bl,mean_dtheta_rad,std_dx_bl,std_dy_bl,std_dtheta_rad,n_cycles\n";
    for (const VelocityRow& r : rows) {
        out += r.label + ',' + csv_field(r.stats.mean.dx) + ',' + csv_field(r.stats.mean.dy) + ',' +
               csv_field(r.stats.mean.dtheta) + ',' + csv_field(r.stats.stddev.dx) + ',' +
               csv_field(r.stats.stddev.dy) + ',' + csv_field(r.stats.stddev.dtheta) + ',' +
               std::to_string(r.n_cycles) + '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + file.string());
    out << content;
}

}  // namespace softgait
