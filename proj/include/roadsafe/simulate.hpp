#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <roadsafe/danger.hpp>
#include <roadsafe/fusion.hpp>
#include <roadsafe/kinematics.hpp>
#include <roadsafe/signal.hpp>

namespace roadsafe {

// Constant closing acceleration held for `duration` seconds.
struct accel_segment {
    double duration;
    double accel;
};

struct scenario_config {
    double duration = 6.0;
    double truth_rate_hz = 30.0;
    double rsu_rate_hz = 10.0;
    double camera_rate_hz = 30.0;
    double initial_distance = 3.5;
    double initial_speed = 0.8;
    // Must cover `duration`. Empty means zero acceleration throughout.
    // Default: approach, brake to a stop, wait.
    std::vector<accel_segment> segments{{2.0, 0.0}, {2.0, -0.4}, {2.0, 0.0}};
    std::uint64_t seed = 1;

    void validate() const;
};

// Obstacle motion along the road: piecewise-constant acceleration with the
// speed clamped at zero (vehicles do not reverse) and the distance clamped
// at zero (the obstacle has reached the crossing line).
class truth_trajectory {
public:
    explicit truth_trajectory(const scenario_config& config);

    struct state {
        double distance;
        double speed;
        double acceleration;
    };

    state at(double t) const;
    double duration() const { return duration_; }

private:
    struct segment_start {
        double t;
        double position;
        double speed;
        double accel;
    };
    double initial_distance_;
    double duration_;
    std::vector<segment_start> segments_;
};

// Truth sampled at truth_rate_hz over [0, duration]; speed and acceleration
// are analytic, not differenced.
kinematic_track generate_truth(const scenario_config& config);

// Defaults: camera resolution 1280 px wide with a 120 degree horizontal
// field of view, and a 32 cm wide obstacle.
inline const double default_focal_px = 640.0 / std::tan(std::numbers::pi / 3.0);

struct sensor_model {
    enum class kind { range_multiplicative, camera_pinhole };

    kind type = kind::range_multiplicative;
    // Range sensor: the relative accuracy is read as a 2-sigma band.
    double relative_noise = 0.05;
    // Camera.
    double detection_range = 2.5;
    double pixel_noise_sigma = 2.0;
    double focal_px = default_focal_px;
    double object_width_m = 0.32;

    static sensor_model range(double relative_noise = 0.05);
    static sensor_model camera(double detection_range = 2.5, double pixel_noise_sigma = 2.0,
                               double focal_px = default_focal_px, double object_width_m = 0.32);
    // Zero noise; cameras see at any distance.
    static sensor_model ideal(kind type);

    void validate() const;
};

// Deterministic standard-normal draws from a 64-bit Mersenne twister. The
// transform is spelled out (Box-Muller) so draws do not depend on the
// standard library's distribution implementation.
class gaussian_source {
public:
    explicit gaussian_source(std::uint64_t seed): engine_(seed) {}
    double next();

private:
    double uniform_open();
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

// Pinhole projection of the obstacle width.
double bbox_width_px(double distance, const sensor_model& camera);
double bbox_width_px(double distance, const sensor_model& camera, gaussian_source& noise);

// Triangle similarity: the inverse of bbox_width_px without noise.
double distance_from_bbox(double width_px, const sensor_model& camera);

// Samples the sensor at k / rate_hz over the truth span. The truth distance
// is linearly interpolated between truth samples (exact at shared instants).
time_series sample_sensor(const kinematic_track& truth, const sensor_model& model, double rate_hz,
                          std::uint64_t seed);

// Same, reading the analytic trajectory directly.
time_series sample_sensor(const truth_trajectory& truth, const sensor_model& model, double rate_hz,
                          std::uint64_t seed);

struct sensor_models {
    sensor_model rsu = sensor_model::range();
    sensor_model camera_aw = sensor_model::camera();
    sensor_model camera_drone = sensor_model::camera();
};

struct simulated_run {
    raw_recording raw;     // what a recording would contain, tracker included
    sensor_set sensors;    // after the preprocessing pipeline
    kinematic_track truth; // analytic truth on the sensor grid
    std::vector<danger_sample> truth_danger;
};

// Derives a per-stream seed so each sensor owns an independent generator.
std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t stream);

simulated_run generate_run(const scenario_config& config, const sensor_models& models,
                           const pipeline_options& options, const danger_params& params);

} // namespace roadsafe
