#include <roadsafe/simulate.hpp>

#include <algorithm>
#include <limits>
#include <string>

#include <roadsafe/error.hpp>

namespace roadsafe {

namespace {

constexpr double time_slack = 1e-9;

bool positive(double x) { return std::isfinite(x) && x > 0; }

} // namespace

void scenario_config::validate() const {
    require(positive(duration), "scenario: duration must be positive");
    require(positive(truth_rate_hz), "scenario: truth_rate_hz must be positive");
    require(positive(rsu_rate_hz), "scenario: rsu_rate_hz must be positive");
    require(positive(camera_rate_hz), "scenario: camera_rate_hz must be positive");
    require(positive(initial_distance), "scenario: initial_distance must be positive");
    require(std::isfinite(initial_speed) && initial_speed >= 0,
            "scenario: initial_speed must be non-negative");
    double covered = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        require(positive(segments[i].duration),
                "scenario: segments[" + std::to_string(i) + "].duration must be positive");
        require(std::isfinite(segments[i].accel),
                "scenario: segments[" + std::to_string(i) + "].accel must be finite");
        covered += segments[i].duration;
    }
    require(segments.empty() || covered >= duration - time_slack,
            "scenario: segments cover " + std::to_string(covered) + " s of a " +
                std::to_string(duration) + " s run");
}

truth_trajectory::truth_trajectory(const scenario_config& config):
    initial_distance_(config.initial_distance), duration_(config.duration)
{
    config.validate();
    std::vector<accel_segment> segs = config.segments;
    if (segs.empty()) segs.push_back({config.duration, 0.0});

    double t = 0.0;
    double position = 0.0;
    double speed = config.initial_speed;
    for (const auto& seg: segs) {
        segments_.push_back({t, position, speed, seg.accel});
        // Advance to the end of the segment with the speed clamped at zero.
        double tau = seg.duration;
        if (seg.accel < 0 && speed + seg.accel * tau < 0) tau = speed / -seg.accel;
        position += speed * tau + 0.5 * seg.accel * tau * tau;
        speed = std::max(0.0, speed + seg.accel * seg.duration);
        t += seg.duration;
    }
}

truth_trajectory::state truth_trajectory::at(double t) const {
    require(t >= 0, "truth_trajectory: negative time");
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const segment_start& s) { return x < s.t; });
    const segment_start& seg = *std::prev(it);
    const double tau = t - seg.t;

    double position = 0.0;
    double speed = 0.0;
    double accel = 0.0;
    if (seg.accel < 0 && seg.speed + seg.accel * tau <= 0) {
        const double ts = seg.speed / -seg.accel;
        position = seg.position + seg.speed * ts + 0.5 * seg.accel * ts * ts;
    } else {
        position = seg.position + seg.speed * tau + 0.5 * seg.accel * tau * tau;
        speed = seg.speed + seg.accel * tau;
        accel = seg.accel;
    }
    return {std::max(0.0, initial_distance_ - position), speed, accel};
}

kinematic_track generate_truth(const scenario_config& config) {
    const truth_trajectory traj(config);
    const auto grid = uniform_grid::spanning(0.0, config.duration, config.truth_rate_hz);
    std::vector<sample> d, v, a;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.time(i);
        const auto s = traj.at(t);
        d.push_back({t, s.distance});
        v.push_back({t, s.speed});
        a.push_back({t, s.acceleration});
    }
    return {grid, time_series(std::move(d)), time_series(std::move(v)), time_series(std::move(a))};
}

sensor_model sensor_model::range(double relative_noise) {
    sensor_model m;
    m.type = kind::range_multiplicative;
    m.relative_noise = relative_noise;
    return m;
}

sensor_model sensor_model::camera(double detection_range, double pixel_noise_sigma, double focal_px,
                                  double object_width_m) {
    sensor_model m;
    m.type = kind::camera_pinhole;
    m.detection_range = detection_range;
    m.pixel_noise_sigma = pixel_noise_sigma;
    m.focal_px = focal_px;
    m.object_width_m = object_width_m;
    return m;
}

sensor_model sensor_model::ideal(kind type) {
    return type == kind::range_multiplicative
               ? range(0.0)
               : camera(std::numeric_limits<double>::infinity(), 0.0);
}

void sensor_model::validate() const {
    require(std::isfinite(relative_noise) && relative_noise >= 0, "sensor model: relative_noise must be >= 0");
    require(std::isfinite(pixel_noise_sigma) && pixel_noise_sigma >= 0,
            "sensor model: pixel_noise_sigma must be >= 0");
    require(detection_range > 0, "sensor model: detection_range must be positive");
    require(positive(focal_px), "sensor model: focal_px must be positive");
    require(positive(object_width_m), "sensor model: object_width_m must be positive");
}

double gaussian_source::uniform_open() {
    // 53 random bits mapped into (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double gaussian_source::next() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
}

double bbox_width_px(double distance, const sensor_model& camera) {
    require(std::isfinite(distance) && distance > 0, "bbox_width_px: distance must be positive");
    return camera.focal_px * camera.object_width_m / distance;
}

double bbox_width_px(double distance, const sensor_model& camera, gaussian_source& noise) {
    const double w = bbox_width_px(distance, camera);
    if (camera.pixel_noise_sigma == 0.0) return w;
    return w + camera.pixel_noise_sigma * noise.next();
}

double distance_from_bbox(double width_px, const sensor_model& camera) {
    require(std::isfinite(width_px) && width_px > 0, "distance_from_bbox: width must be positive");
    return camera.focal_px * camera.object_width_m / width_px;
}

namespace {

template <class DistanceAt>
time_series sample_with(DistanceAt&& distance_at, double t0, double t1, const sensor_model& model,
                        double rate_hz, std::uint64_t seed) {
    model.validate();
    require(positive(rate_hz), "sample_sensor: rate must be positive");
    gaussian_source noise(seed);
    const auto grid = uniform_grid::spanning(t0, t1, rate_hz);
    std::vector<sample> out;
    out.reserve(grid.count);
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double t = grid.time(k);
        const double d = distance_at(t);
        std::optional<double> reading;
        if (model.type == sensor_model::kind::range_multiplicative) {
            // The quoted accuracy is treated as two standard deviations.
            const double eta = model.relative_noise == 0.0 ? 0.0 : 0.5 * model.relative_noise * noise.next();
            reading = d * (1.0 + eta);
        } else if (d > 0 && d <= model.detection_range) {
            const double w = bbox_width_px(d, model, noise);
            if (w > 0) reading = distance_from_bbox(w, model);
        }
        out.push_back({t, reading});
    }
    return time_series(std::move(out));
}

} // namespace

time_series sample_sensor(const kinematic_track& truth, const sensor_model& model, double rate_hz,
                          std::uint64_t seed) {
    require(!truth.distance.empty(), "sample_sensor: empty truth");
    const double t0 = truth.distance.start();
    const double t1 = truth.distance.stop();
    const auto grid = uniform_grid::spanning(t0, t1, rate_hz);
    const time_series at_rate =
        resample(truth.distance, grid, std::numeric_limits<double>::infinity());
    std::size_t k = 0;
    return sample_with(
        [&](double) {
            const auto& v = at_rate[k++].value;
            require(v.has_value(), "sample_sensor: truth distance missing");
            return *v;
        },
        t0, t1, model, rate_hz, seed);
}

time_series sample_sensor(const truth_trajectory& truth, const sensor_model& model, double rate_hz,
                          std::uint64_t seed) {
    return sample_with([&](double t) { return truth.at(t).distance; }, 0.0, truth.duration(), model,
                       rate_hz, seed);
}

std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t stream) {
    // splitmix64 finaliser over the combined key.
    std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

simulated_run generate_run(const scenario_config& config, const sensor_models& models,
                           const pipeline_options& options, const danger_params& params) {
    config.validate();
    params.validate();
    const truth_trajectory traj(config);

    raw_recording raw;
    raw.emplace(sensor_id::rsu, sample_sensor(traj, models.rsu, config.rsu_rate_hz,
                                              stream_seed(config.seed, 0)));
    raw.emplace(sensor_id::camera_aw, sample_sensor(traj, models.camera_aw, config.camera_rate_hz,
                                                    stream_seed(config.seed, 1)));
    raw.emplace(sensor_id::camera_drone, sample_sensor(traj, models.camera_drone,
                                                       config.camera_rate_hz,
                                                       stream_seed(config.seed, 2)));
    raw.emplace(sensor_id::tracker, generate_truth(config).distance);

    sensor_set sensors = build_sensor_set(raw, options);
    const auto& grid = sensors.grid();
    std::vector<sample> d, v, a;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.time(i);
        const auto s = traj.at(std::max(t, 0.0));
        d.push_back({t, s.distance});
        v.push_back({t, s.speed});
        a.push_back({t, s.acceleration});
    }
    kinematic_track truth{grid, time_series(std::move(d)), time_series(std::move(v)),
                          time_series(std::move(a))};
    auto truth_danger = danger_track(truth, params);
    return {std::move(raw), std::move(sensors), std::move(truth), std::move(truth_danger)};
}

} // namespace roadsafe
