#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <roadsafe/danger.hpp>
#include <roadsafe/kinematics.hpp>
#include <roadsafe/signal.hpp>

namespace roadsafe {

enum class sensor_id { rsu, camera_aw, camera_drone, tracker };

inline constexpr std::array<sensor_id, 3> fused_sensors{
    sensor_id::rsu, sensor_id::camera_aw, sensor_id::camera_drone};

std::string_view to_string(sensor_id id);

// Per-sensor kinematic tracks on one shared grid. The tracker is ground
// truth and never takes part in fusion.
class sensor_set {
public:
    explicit sensor_set(uniform_grid grid): grid_(grid) {}

    // Throws invalid_argument if the track's grid differs from the set's.
    void insert(sensor_id id, kinematic_track track);

    const uniform_grid& grid() const { return grid_; }
    bool contains(sensor_id id) const { return tracks_.contains(id); }
    const kinematic_track& at(sensor_id id) const;
    bool has_tracker() const { return contains(sensor_id::tracker); }

    // Present fusion inputs in rsu, camera_aw, camera_drone order.
    std::vector<std::pair<sensor_id, const kinematic_track*>> fusion_inputs() const;

private:
    uniform_grid grid_;
    std::map<sensor_id, kinematic_track> tracks_;
};

// Preprocessing knobs applied between raw recordings and a sensor_set.
struct pipeline_options {
    double resample_hz = 100.0;
    std::size_t smooth_window_rsu = 2;
    std::size_t smooth_window_camera = 5;
    std::size_t smooth_window_tracker = 1;
    std::size_t smooth_window_derivative = 5;
    double max_gap_s = default_max_gap_s;

    std::size_t smooth_window(sensor_id id) const;
    void validate() const;
};

// Raw per-sensor distance recordings at their native rates.
using raw_recording = std::map<sensor_id, time_series>;

// smooth (per-sensor window) -> align at resample_hz -> differentiate.
sensor_set build_sensor_set(const raw_recording& raw, const pipeline_options& options);

// Mean of the available sensor distances per grid point.
time_series distance_fusion(const sensor_set& sensors);

// Mean of the present per-sensor danger values per grid point.
time_series danger_fusion(const sensor_set& sensors, const danger_params& params);

// Majority over non-unknown votes; a tie is dangerous; no votes is unknown.
decision majority_vote(std::span<const decision> votes);

std::vector<decision> voting_fusion(const sensor_set& sensors, const danger_params& params);

struct fusion_point {
    double t = 0.0;
    int available_count = 0;
    std::optional<double> distance_fused;
    std::optional<double> g_distance_fusion;
    std::optional<double> g_danger_fusion;
    int dangerous_votes = 0;
    int votes_cast = 0;
    decision decision_distance = decision::unknown;
    decision decision_danger = decision::unknown;
    decision decision_vote = decision::unknown;
};

struct fusion_trace {
    uniform_grid grid;
    std::vector<fusion_point> points;
    // Danger samples per sensor, including the tracker when present.
    std::map<sensor_id, std::vector<danger_sample>> per_sensor;
    // Kinematics of the fused distance, as fed to the danger function.
    kinematic_track distance_fusion_track;
};

fusion_trace fuse_all(const sensor_set& sensors, const danger_params& params,
                      std::size_t derivative_window = default_derivative_window);

} // namespace roadsafe
