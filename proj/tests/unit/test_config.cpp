#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include <roadsafe/config.hpp>
#include <roadsafe/error.hpp>

using namespace roadsafe;

namespace {

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const parse_error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(RunConfig, DefaultsMatchPublishedPreprocessing) {
    const auto c = parse_run_config("{}");
    EXPECT_EQ(c.pipeline.resample_hz, 100.0);
    EXPECT_EQ(c.pipeline.smooth_window_rsu, 2u);
    EXPECT_EQ(c.pipeline.smooth_window_camera, 5u);
    EXPECT_EQ(c.pipeline.smooth_window_derivative, 5u);
    EXPECT_EQ(c.pipeline.max_gap_s, 0.5);
    EXPECT_EQ(c.danger.g_star, 1.0);
    EXPECT_FALSE(c.unknown_as_safe);
}

TEST(RunConfig, OverridesAndRoundTrip) {
    const auto c = parse_run_config(R"({"resample_hz": 50, "smooth_window_rsu": 3, "unknown_as_safe": true,
        "danger": {"g_star": 1.5, "k": 0.2}, "crossing": {"road_width": 4.0}})");
    EXPECT_EQ(c.pipeline.resample_hz, 50.0);
    EXPECT_EQ(c.pipeline.smooth_window_rsu, 3u);
    EXPECT_TRUE(c.unknown_as_safe);
    EXPECT_EQ(c.danger.g_star, 1.5);
    EXPECT_EQ(c.danger.k, 0.2);
    EXPECT_EQ(c.danger.epsilon, 0.6);
    EXPECT_EQ(c.crossing.road_width(), 4.0);
    EXPECT_EQ(c.crossing.wheelchair_speed(), 1.0);

    const auto back = parse_run_config(dump_run_config(c));
    EXPECT_EQ(dump_run_config(back), dump_run_config(c));
}

TEST(RunConfig, ErrorsNameTheField) {
    EXPECT_NE(message_of([] { parse_run_config(R"({"resample_hz": "fast"})"); }).find("resample_hz"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_run_config(R"({"danger": {"gstar": 2}})"); }).find("danger.gstar"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_run_config(R"({"smooth_window_rsu": -1})"); }).find("smooth_window_rsu"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_run_config(R"({"smooth_window_rsu": 0})"); }), "");
    EXPECT_NE(message_of([] { parse_run_config(R"({"crossing": {"wheelchair_speed": 0}})"); }), "");
    EXPECT_NE(message_of([] { parse_run_config("[1, 2]"); }), "");
}

TEST(RunConfig, SyntaxErrorsCarryLine) {
    const std::string msg = message_of([] { parse_run_config("{\n  \"resample_hz\": 100,\n  oops\n}"); });
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(RunConfig, MissingFile) {
    EXPECT_THROW(load_run_config("/nonexistent/config.json"), io_error);
}

TEST(Scenario, ParsesSegmentsAndSensors) {
    const auto f = parse_scenario(R"({"duration": 4, "seed": 9, "initial_distance": 3,
        "segments": [{"duration": 1, "accel": 0}, {"duration": 3, "accel": -0.5}],
        "sensors": {"camera_aw": {"detection_range": null, "pixel_noise_sigma": 0},
                    "rsu": {"relative_noise": 0.1}}})");
    EXPECT_EQ(f.scenario.duration, 4.0);
    EXPECT_EQ(f.scenario.seed, 9u);
    ASSERT_EQ(f.scenario.segments.size(), 2u);
    EXPECT_EQ(f.scenario.segments[1].accel, -0.5);
    EXPECT_TRUE(std::isinf(f.sensors.camera_aw.detection_range));
    EXPECT_EQ(f.sensors.camera_aw.pixel_noise_sigma, 0.0);
    EXPECT_EQ(f.sensors.camera_drone.detection_range, 2.5);
    EXPECT_EQ(f.sensors.rsu.relative_noise, 0.1);

    const auto back = parse_scenario(dump_scenario(f));
    EXPECT_EQ(dump_scenario(back), dump_scenario(f));
    EXPECT_TRUE(std::isinf(back.sensors.camera_aw.detection_range));
}

TEST(Scenario, ValidationErrors) {
    EXPECT_NE(message_of([] { parse_scenario(R"({"duration": -1})"); }).find("duration"), std::string::npos);
    EXPECT_NE(message_of([] { parse_scenario(R"({"duration": 5, "segments": [{"duration": 1, "accel": 0}]})"); }),
              "");
    EXPECT_NE(message_of([] { parse_scenario(R"({"segments": [{"duration": 6, "acc": 0}]})"); })
                  .find("segments[0].acc"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_scenario(R"({"sensors": {"lidar": {}}})"); }).find("sensors.lidar"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_scenario(R"({"seed": 1.5})"); }).find("seed"), std::string::npos);
}
