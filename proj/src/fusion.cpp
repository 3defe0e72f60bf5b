#include <roadsafe/fusion.hpp>

#include <cmath>

#include <roadsafe/error.hpp>

namespace roadsafe {

std::string_view to_string(sensor_id id) {
    switch (id) {
    case sensor_id::rsu: return "rsu";
    case sensor_id::camera_aw: return "camera_aw";
    case sensor_id::camera_drone: return "camera_drone";
    case sensor_id::tracker: return "tracker";
    }
    return "?";
}

void sensor_set::insert(sensor_id id, kinematic_track track) {
    require(track.grid == grid_, "sensor_set: track grid differs from the set grid");
    require(track.distance.size() == grid_.count && track.speed.size() == grid_.count &&
                track.acceleration.size() == grid_.count,
            "sensor_set: track length differs from the grid");
    tracks_.insert_or_assign(id, std::move(track));
}

const kinematic_track& sensor_set::at(sensor_id id) const {
    auto it = tracks_.find(id);
    if (it == tracks_.end()) {
        throw invalid_argument("sensor_set: no track for " + std::string(to_string(id)));
    }
    return it->second;
}

std::vector<std::pair<sensor_id, const kinematic_track*>> sensor_set::fusion_inputs() const {
    std::vector<std::pair<sensor_id, const kinematic_track*>> out;
    for (auto id: fused_sensors) {
        if (auto it = tracks_.find(id); it != tracks_.end()) out.emplace_back(id, &it->second);
    }
    return out;
}

std::size_t pipeline_options::smooth_window(sensor_id id) const {
    switch (id) {
    case sensor_id::rsu: return smooth_window_rsu;
    case sensor_id::camera_aw:
    case sensor_id::camera_drone: return smooth_window_camera;
    case sensor_id::tracker: return smooth_window_tracker;
    }
    return 1;
}

void pipeline_options::validate() const {
    require(std::isfinite(resample_hz) && resample_hz > 0, "resample_hz must be positive");
    require(smooth_window_rsu >= 1 && smooth_window_camera >= 1 && smooth_window_tracker >= 1 &&
                smooth_window_derivative >= 1,
            "smoothing windows must be at least 1");
    require(std::isfinite(max_gap_s) && max_gap_s >= 0, "max_gap_s must be non-negative");
}

sensor_set build_sensor_set(const raw_recording& raw, const pipeline_options& options) {
    options.validate();
    require(!raw.empty(), "build_sensor_set: no recordings");

    std::vector<sensor_id> ids;
    std::vector<time_series> smoothed;
    for (const auto& [id, series]: raw) {
        ids.push_back(id);
        smoothed.push_back(smooth_trailing(series, options.smooth_window(id)));
    }
    auto aligned = align(smoothed, options.resample_hz, options.max_gap_s);

    sensor_set out(aligned.grid);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out.insert(ids[i], differentiate(aligned.series[i], aligned.grid,
                                         options.smooth_window_derivative));
    }
    return out;
}

namespace {

// Mean of the present values, if any. Accumulated as offsets from the first
// present value so that identical inputs return that value exactly.
std::optional<double> present_mean(std::span<const std::optional<double>> values) {
    std::optional<double> first;
    double offset = 0.0;
    int n = 0;
    for (const auto& v: values) {
        if (!v) continue;
        if (!first) first = *v;
        offset += *v - *first;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return *first + offset / n;
}

std::vector<std::vector<danger_sample>> per_sensor_danger(const sensor_set& sensors,
                                                          const danger_params& params) {
    std::vector<std::vector<danger_sample>> out;
    for (const auto& [id, track]: sensors.fusion_inputs()) out.push_back(danger_track(*track, params));
    return out;
}

} // namespace

time_series distance_fusion(const sensor_set& sensors) {
    const auto inputs = sensors.fusion_inputs();
    const auto& grid = sensors.grid();
    std::vector<sample> out;
    out.reserve(grid.count);
    std::vector<std::optional<double>> column(inputs.size());
    for (std::size_t i = 0; i < grid.count; ++i) {
        for (std::size_t s = 0; s < inputs.size(); ++s) column[s] = inputs[s].second->distance[i].value;
        out.push_back({grid.time(i), present_mean(column)});
    }
    return time_series(std::move(out));
}

time_series danger_fusion(const sensor_set& sensors, const danger_params& params) {
    const auto per_sensor = per_sensor_danger(sensors, params);
    const auto& grid = sensors.grid();
    std::vector<sample> out;
    out.reserve(grid.count);
    std::vector<std::optional<double>> column(per_sensor.size());
    for (std::size_t i = 0; i < grid.count; ++i) {
        for (std::size_t s = 0; s < per_sensor.size(); ++s) column[s] = per_sensor[s][i].g;
        out.push_back({grid.time(i), present_mean(column)});
    }
    return time_series(std::move(out));
}

decision majority_vote(std::span<const decision> votes) {
    int dangerous = 0;
    int safe = 0;
    for (auto v: votes) {
        if (v == decision::dangerous) ++dangerous;
        else if (v == decision::safe) ++safe;
    }
    if (dangerous + safe == 0) return decision::unknown;
    return dangerous >= safe ? decision::dangerous : decision::safe;
}

std::vector<decision> voting_fusion(const sensor_set& sensors, const danger_params& params) {
    const auto per_sensor = per_sensor_danger(sensors, params);
    std::vector<decision> out;
    out.reserve(sensors.grid().count);
    std::vector<decision> votes(per_sensor.size());
    for (std::size_t i = 0; i < sensors.grid().count; ++i) {
        for (std::size_t s = 0; s < per_sensor.size(); ++s) votes[s] = per_sensor[s][i].verdict;
        out.push_back(majority_vote(votes));
    }
    return out;
}

fusion_trace fuse_all(const sensor_set& sensors, const danger_params& params,
                      std::size_t derivative_window) {
    params.validate();
    const auto& grid = sensors.grid();
    const auto inputs = sensors.fusion_inputs();

    fusion_trace trace{grid, {}, {}, {}};
    for (const auto& [id, track]: inputs) trace.per_sensor.emplace(id, danger_track(*track, params));
    if (sensors.has_tracker()) {
        trace.per_sensor.emplace(sensor_id::tracker, danger_track(sensors.at(sensor_id::tracker), params));
    }

    const time_series fused_distance = distance_fusion(sensors);
    trace.distance_fusion_track = differentiate(fused_distance, grid, derivative_window);
    const auto fused_danger = danger_track(trace.distance_fusion_track, params);
    const time_series g_mean = danger_fusion(sensors, params);
    const auto votes = voting_fusion(sensors, params);

    trace.points.reserve(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        fusion_point p;
        p.t = grid.time(i);
        for (const auto& [id, track]: inputs) {
            if (track->distance[i].value) ++p.available_count;
            const decision d = trace.per_sensor.at(id)[i].verdict;
            if (d == decision::dangerous) ++p.dangerous_votes;
            if (d != decision::unknown) ++p.votes_cast;
        }
        if (p.available_count > 0) {
            p.distance_fused = fused_distance[i].value;
            p.g_distance_fusion = fused_danger[i].g;
            p.g_danger_fusion = g_mean[i].value;
        }
        p.decision_distance = decide(p.g_distance_fusion, params);
        p.decision_danger = decide(p.g_danger_fusion, params);
        p.decision_vote = votes[i];
        trace.points.push_back(p);
    }
    return trace;
}

} // namespace roadsafe
