#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "softgait/errors.hpp"
#include "softgait/io.hpp"

using namespace softgait;

TEST_CASE("run config round trip with defaults") {
    RunConfig config;
    config.sim.seed = 99;
    config.search.rounds = 2;
    config.reward_overrides[GaitAxis::PlusX] = {1, 0, 0, 0, -0.2, -0.2};
    const RunConfig back = parse_run_config(dump_run_config(config));
    CHECK(back.sim.seed == 99);
    CHECK(back.sim.effect_scale == config.sim.effect_scale);
    CHECK(back.search.rounds == 2);
    CHECK(back.auto_cycles);
    CHECK(back.reward_overrides.at(GaitAxis::PlusX).e == -0.2);
}

TEST_CASE("explicit cycles_per_eval disables the per-axis default") {
    RunConfig config;
    config.auto_cycles = false;
    config.eval.cycles_per_eval = 5;
    const RunConfig back = parse_run_config(dump_run_config(config));
    CHECK(!back.auto_cycles);
    CHECK(back.eval.cycles_per_eval == 5);
    CHECK(eval_for_axis(back, GaitAxis::PlusTheta).cycles_per_eval == 5);
}

TEST_CASE("per-axis cycle defaults: translation 3, rotation 1") {
    const RunConfig config;
    CHECK(eval_for_axis(config, GaitAxis::PlusX).cycles_per_eval == 3);
    CHECK(eval_for_axis(config, GaitAxis::MinusY).cycles_per_eval == 3);
    CHECK(eval_for_axis(config, GaitAxis::PlusTheta).cycles_per_eval == 1);
    CHECK(eval_for_axis(config, GaitAxis::MinusTheta).cycles_per_eval == 1);
}

TEST_CASE("config parse errors") {
    CHECK_THROWS_AS(parse_run_config("nope"), ParseError);
    CHECK_THROWS_AS(parse_run_config("{}"), ParseError);
    CHECK_THROWS_AS(
        parse_run_config(R"({"format":"softgait-config","version":2})"), ParseError);
    CHECK_THROWS_AS(
        parse_run_config(R"({"format":"softgait-config","version":1,"simm":{}})"), ParseError);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"format":"softgait-config","version":1,"sim":{"sneed":3}})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"format":"softgait-config","version":1,"reward":{"+z":{"a":1}}})"),
        ParseError);
}

TEST_CASE("plan round trip and validation") {
    const std::vector<TrajectorySegment> segments = {
        {TrajectorySegment::Kind::Translation, 0.30},
        {TrajectorySegment::Kind::Rotation, -2.5},
    };
    const auto back = parse_plan(dump_plan(segments));
    REQUIRE(back.size() == 2);
    CHECK(back[0].kind == TrajectorySegment::Kind::Translation);
    CHECK(back[0].magnitude == 0.30);
    CHECK(back[1].magnitude == -2.5);

    CHECK_THROWS_AS(parse_plan(R"({"format":"softgait-plan","version":1,"segments":[]})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_plan(
            R"({"format":"softgait-plan","version":1,"segments":[{"kind":"translation","magnitude":0}]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_plan(
            R"({"format":"softgait-plan","version":1,"segments":[{"kind":"spiral","magnitude":1}]})"),
        ParseError);
}

TEST_CASE("format_double is a shortest round-trip form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-1.25) == "-1.25");
    CHECK(format_double(0.0) == "0");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("training log CSV layout") {
    TrainingLog log;
    log.records.push_back({0, 0, 1, 2, {0.5, -0.25, 0.125}, 0.4625, true});
    log.records.push_back({1, -1, -1, -1, {0, 0, 0}, 0.0, false});
    const std::string csv = training_log_csv(log);
    CHECK(csv ==
          "eval_index,leg,pair_first,pair_second,dx_bl,dy_bl,dtheta_rad,reward,accepted\n"
          "0,0,1,2,0.5,-0.25,0.125,0.4625,1\n"
          "1,-1,-1,-1,0,0,0,0,0\n");
}

TEST_CASE("trace CSV layout") {
    std::vector<TraceEntry> entries;
    entries.push_back({0.3, {0.01, 0.0, 0.5}, GaitAxis::PlusX, {0.25, -0.5, 0.125}, true, false, 0});
    const std::string csv = trace_csv(entries);
    CHECK(csv ==
          "time_s,x_m,y_m,theta_rad,axis,corrective_flag,drift_x,drift_y,drift_theta\n"
          "0.3,0.01,0,0.5,+x,1,0.25,-0.5,0.125\n");
}

TEST_CASE("cycles CSV layout") {
    std::vector<CycleRow> rows;
    rows.push_back({7, 2, {1.5, -2.0, 0.25}, 0.9});
    CHECK(cycles_csv(rows) ==
          "eval_id,cycle,x_m,y_m,theta_rad,sim_time_s\n"
          "7,2,1.5,-2,0.25,0.9\n");
}

TEST_CASE("gait file round trips through disk") {
    const auto dir = std::filesystem::temp_directory_path() / "softgait_io_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "gait.json";
    GaitAssignment g;
    g.pairs[2] = {6, 4};
    save_gait(g, file, "unit test");
    CHECK(load_gait(file) == g);
    std::filesystem::remove_all(dir);
}

TEST_CASE("missing files raise ParseError") {
    CHECK_THROWS_AS(load_gait("/nonexistent/gait.json"), ParseError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ParseError);
}
