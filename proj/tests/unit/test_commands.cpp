#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include <roadsafe/commands.hpp>
#include <roadsafe/io.hpp>

using namespace roadsafe;

namespace {

std::string simulated_csv(const scenario_file& s = {}) {
    std::ostringstream out;
    commands::simulate(out, s);
    return out.str();
}

commands::ingest_result ingest_text(const std::string& text, const run_config& cfg = {}) {
    std::istringstream in(text);
    return commands::ingest(in, cfg);
}

std::string fused_text(const std::string& csv, const run_config& cfg = {}) {
    const auto ing = ingest_text(csv, cfg);
    std::ostringstream out;
    write_fused_trace(out, commands::fuse(ing.sensors, cfg));
    return out.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Ingest, MinimalFileGivesFourTracks) {
    const auto r = ingest_text(std::string(sensor_csv_header) + "\n0.0,2.0,2.0,2.0,2.0\n0.1,1.9,1.9,1.9,1.9\n0.2,1.8,1.8,1.8,1.8\n");
    EXPECT_TRUE(r.has_tracker);
    EXPECT_EQ(r.rows, 3u);
    for (auto id: {sensor_id::rsu, sensor_id::camera_aw, sensor_id::camera_drone, sensor_id::tracker}) {
        EXPECT_TRUE(r.sensors.contains(id));
    }
    EXPECT_EQ(r.sensors.grid().count, 21u);
}

TEST(Ingest, EmptyCameraColumnsStillRun) {
    std::string csv = std::string(sensor_csv_header) + "\n";
    for (int i = 0; i <= 30; ++i) csv += format_decimal(i * 0.1) + "," + format_decimal(3.0 - 0.05 * i) + ",,," +
                                         format_decimal(3.0 - 0.05 * i) + "\n";
    const auto r = ingest_text(csv);
    EXPECT_EQ(r.sensors.at(sensor_id::camera_aw).distance.present_count(), 0u);
    EXPECT_EQ(r.sensors.at(sensor_id::camera_drone).distance.present_count(), 0u);
    EXPECT_EQ(r.sensors.at(sensor_id::rsu).distance.present_count(), r.sensors.grid().count);
    const auto trace = commands::fuse(r.sensors, {});
    for (const auto& p: trace.points) EXPECT_EQ(p.available_count, 1);
    const auto rows = commands::evaluate(r, trace, {});
    EXPECT_FALSE(rows[1].report);
    EXPECT_FALSE(rows[1].error.empty());
    EXPECT_TRUE(rows[0].report);
    const auto table = commands::format_report_table(rows);
    EXPECT_NE(table.find("n/a"), std::string::npos);
}

TEST(Ingest, ShuffledTimestampsRejected) {
    const std::string csv = std::string(sensor_csv_header) + "\n0.1,1,1,1,1\n0.0,1,1,1,1\n";
    EXPECT_THROW(ingest_text(csv), non_monotone_error);
}

TEST(Simulate, OutputIsIngestibleAndDeterministic) {
    const auto a = simulated_csv();
    EXPECT_EQ(a, simulated_csv());
    EXPECT_EQ(lines(a).front(), sensor_csv_header);
    const auto r = ingest_text(a);
    EXPECT_TRUE(r.has_tracker);
    scenario_file other;
    other.scenario.seed = 2;
    EXPECT_NE(a, simulated_csv(other));
}

TEST(Simulate, RoundTripReproducesSensorSet) {
    const scenario_file s;
    const auto run = generate_run(s.scenario, s.sensors, {}, {});
    const auto r = ingest_text(simulated_csv(s));
    EXPECT_EQ(r.sensors.grid().count, run.sensors.grid().count);
    for (auto id: fused_sensors) {
        const auto& x = r.sensors.at(id).distance;
        const auto& y = run.sensors.at(id).distance;
        for (std::size_t i = 0; i < x.size(); ++i) {
            ASSERT_EQ(x[i].present(), y[i].present()) << to_string(id) << " " << i;
            if (x[i].value) EXPECT_NEAR(*x[i].value, *y[i].value, 1e-6);
        }
    }
}

TEST(Fuse, ByteIdenticalReruns) {
    const auto csv = simulated_csv();
    EXPECT_EQ(fused_text(csv), fused_text(csv));
    EXPECT_EQ(lines(fused_text(csv)).front(), fused_trace_header);
}

TEST(Fuse, ZeroNoiseDecisionsAgreeWithTracker) {
    scenario_file s;
    s.scenario.truth_rate_hz = s.scenario.rsu_rate_hz = s.scenario.camera_rate_hz = 100.0;
    s.sensors = {sensor_model::ideal(sensor_model::kind::range_multiplicative),
                 sensor_model::ideal(sensor_model::kind::camera_pinhole),
                 sensor_model::ideal(sensor_model::kind::camera_pinhole)};
    run_config cfg;
    cfg.pipeline.smooth_window_rsu = cfg.pipeline.smooth_window_camera = 1;
    const auto r = ingest_text(simulated_csv(s), cfg);
    const auto trace = commands::fuse(r.sensors, cfg);
    const auto& truth = trace.per_sensor.at(sensor_id::tracker);
    std::size_t compared = 0;
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        if (!truth[i].g || std::abs(*truth[i].g - 1.0) < 0.01) continue;
        const auto& p = trace.points[i];
        if (p.decision_distance == decision::unknown) continue;
        ++compared;
        EXPECT_EQ(p.decision_distance, truth[i].verdict);
        EXPECT_EQ(p.decision_danger, truth[i].verdict);
        EXPECT_EQ(p.decision_vote, truth[i].verdict);
    }
    EXPECT_GT(compared, 500u);
}

TEST(Fuse, BrakingScenarioFlipsToSafe) {
    const auto r = ingest_text(simulated_csv());
    const auto trace = commands::fuse(r.sensors, {});
    bool seen_dangerous = false, flipped = false;
    for (const auto& p: trace.points) {
        if (p.decision_danger == decision::dangerous) seen_dangerous = true;
        if (seen_dangerous && p.decision_danger == decision::safe) flipped = true;
    }
    EXPECT_TRUE(seen_dangerous);
    EXPECT_TRUE(flipped);
    EXPECT_EQ(trace.points.back().decision_danger, decision::safe);
}

TEST(Evaluate, NeedsTracker) {
    std::string csv = "timestamp,distance_range,distance_wheelchair,distance_drone\n0,1,1,1\n0.1,1,1,1\n";
    const auto r = ingest_text(csv);
    EXPECT_FALSE(r.has_tracker);
    EXPECT_THROW(commands::evaluate(r, commands::fuse(r.sensors, {}), {}), invalid_argument);
}

TEST(Evaluate, ReportFormats) {
    const auto r = ingest_text(simulated_csv());
    const auto rows = commands::evaluate(r, commands::fuse(r.sensors, {}), {});
    const auto table = commands::format_report_table(rows);
    const auto table_lines = lines(table);
    ASSERT_EQ(table_lines.size(), 7u);
    EXPECT_EQ(table_lines[1].rfind("Range sensors", 0), 0u);
    EXPECT_EQ(table_lines[6].rfind("Voting fusion", 0), 0u);
    EXPECT_NE(table_lines[6].find(" - "), std::string::npos);

    const auto j = nlohmann::json::parse(commands::format_report_json(rows));
    ASSERT_EQ(j.size(), 6u);
    for (const char* key: {"source", "rmse", "accuracy", "precision", "recall", "tp", "fp", "tn", "fn",
                           "evaluated_points", "excluded_points"}) {
        EXPECT_TRUE(j[0].contains(key)) << key;
    }
    EXPECT_TRUE(j[5]["rmse"].is_null());
    EXPECT_EQ(j[5]["source"], "voting_fusion");
    EXPECT_TRUE(j[0]["rmse"].is_number());
}

TEST(Plotdata, FusedTraceRowsAndThreshold) {
    const auto fused = fused_text(simulated_csv());
    std::istringstream in(fused);
    std::ostringstream out;
    commands::plotdata(in, out, {});
    const auto l = lines(out.str());
    const std::size_t points = lines(fused).size() - 1;
    // 11 value columns plus g_star per point.
    EXPECT_EQ(l.size(), 1 + points * 12);
    EXPECT_EQ(l[0], "timestamp,series,value");
    EXPECT_EQ(l[12], "0.000000,g_star,1.000000");
}

TEST(Plotdata, EmptyTraceIsHeaderOnly) {
    std::istringstream in(std::string(fused_trace_header) + "\n");
    std::ostringstream out;
    commands::plotdata(in, out, {});
    EXPECT_EQ(out.str(), "timestamp,series,value\n");
}

TEST(Plotdata, RecordingInputIncludesSpeeds) {
    std::istringstream in(simulated_csv());
    std::ostringstream out;
    run_config cfg;
    cfg.danger.g_star = 1.25;
    commands::plotdata(in, out, cfg);
    const auto text = out.str();
    for (const char* name: {",distance_rsu,", ",speed_camera_aw,", ",g_camera_drone,", ",g_tracker,",
                            ",distance_fused,", ",speed_fused,", ",g_danger_fusion,", ",g_star,1.250000"}) {
        EXPECT_NE(text.find(name), std::string::npos) << name;
    }
}

TEST(WriteKinematics, HeaderAndRows) {
    const auto r = ingest_text(simulated_csv());
    std::ostringstream out;
    commands::write_kinematics(out, r.sensors);
    const auto l = lines(out.str());
    EXPECT_EQ(l.size(), r.sensors.grid().count + 1);
    EXPECT_EQ(l[0].rfind("timestamp,distance_rsu,speed_rsu,accel_rsu,distance_camera_aw", 0), 0u);
}
