#include <roadsafe/config.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include <json.hpp>

#include <roadsafe/error.hpp>
#include <roadsafe/io.hpp>

namespace roadsafe {

using json = nlohmann::json;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw parse_error(std::string(what) + ": invalid JSON: " + e.what(), line_of(text, e.byte));
    }
}

std::string read_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Reads object members by name, remembering which were consumed so that
// typos surface as errors instead of silently falling back to defaults.
class object_reader {
public:
    object_reader(const json& j, std::string path): j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw parse_error(where() + " must be a JSON object");
    }

    template <class T>
    void get(std::string_view key, T& dst) {
        auto it = j_.find(key);
        seen_.emplace(key);
        if (it == j_.end()) return;
        try {
            dst = it->template get<T>();
        } catch (const json::exception&) {
            throw parse_error("field '" + field(key) + "' has the wrong type");
        }
    }

    // Non-negative integer field (windows, seeds).
    template <class T>
    void get_unsigned(std::string_view key, T& dst) {
        auto it = j_.find(key);
        seen_.emplace(key);
        if (it == j_.end()) return;
        if (!it->is_number_unsigned()) {
            throw parse_error("field '" + field(key) + "' must be a non-negative integer");
        }
        dst = it->template get<T>();
    }

    // Number or null; null reads as +infinity.
    void get_or_infinity(std::string_view key, double& dst) {
        auto it = j_.find(key);
        seen_.emplace(key);
        if (it == j_.end()) return;
        if (it->is_null()) {
            dst = std::numeric_limits<double>::infinity();
            return;
        }
        if (!it->is_number()) throw parse_error("field '" + field(key) + "' must be a number or null");
        dst = it->get<double>();
    }

    const json* child(std::string_view key) {
        seen_.emplace(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string field(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.contains(it.key())) throw parse_error("unknown field '" + field(it.key()) + "'");
        }
    }

private:
    std::string where() const { return path_.empty() ? "document" : "'" + path_ + "'"; }

    const json& j_;
    std::string path_;
    std::set<std::string, std::less<>> seen_;
};

// Runs validation and reports failures as parse errors tied to the file.
template <class F>
void validated(std::string_view what, F&& f) {
    try {
        f();
    } catch (const invalid_argument& e) {
        throw parse_error(std::string(what) + ": " + e.what());
    }
}

void read_danger(const json& j, danger_params& p) {
    object_reader r(j, "danger");
    r.get("k", p.k);
    r.get("epsilon", p.epsilon);
    r.get("g_star", p.g_star);
    r.get("v_lo", p.v_lo);
    r.get("v_hi", p.v_hi);
    r.get("a_lo", p.a_lo);
    r.get("a_hi", p.a_hi);
    r.get("denom_floor", p.denom_floor);
    r.finish();
}

void read_sensor_model(const json& j, const std::string& path, sensor_model& m) {
    object_reader r(j, path);
    r.get("relative_noise", m.relative_noise);
    r.get_or_infinity("detection_range", m.detection_range);
    r.get("pixel_noise_sigma", m.pixel_noise_sigma);
    r.get("focal_px", m.focal_px);
    r.get("object_width_m", m.object_width_m);
    r.finish();
}

json sensor_model_json(const sensor_model& m) {
    json j;
    if (m.type == sensor_model::kind::range_multiplicative) {
        j["relative_noise"] = m.relative_noise;
    } else {
        j["detection_range"] = std::isfinite(m.detection_range) ? json(m.detection_range) : json(nullptr);
        j["pixel_noise_sigma"] = m.pixel_noise_sigma;
        j["focal_px"] = m.focal_px;
        j["object_width_m"] = m.object_width_m;
    }
    return j;
}

} // namespace

void run_config::validate() const {
    pipeline.validate();
    danger.validate();
}

run_config parse_run_config(std::string_view text) {
    const json doc = parse_json(text, "run config");
    run_config cfg;
    object_reader r(doc, "");
    r.get("resample_hz", cfg.pipeline.resample_hz);
    r.get_unsigned("smooth_window_rsu", cfg.pipeline.smooth_window_rsu);
    r.get_unsigned("smooth_window_camera", cfg.pipeline.smooth_window_camera);
    r.get_unsigned("smooth_window_tracker", cfg.pipeline.smooth_window_tracker);
    r.get_unsigned("smooth_window_derivative", cfg.pipeline.smooth_window_derivative);
    r.get("max_gap_s", cfg.pipeline.max_gap_s);
    r.get("unknown_as_safe", cfg.unknown_as_safe);
    if (const json* d = r.child("danger")) read_danger(*d, cfg.danger);
    if (const json* c = r.child("crossing")) {
        object_reader cr(*c, "crossing");
        double width = cfg.crossing.road_width();
        double speed = cfg.crossing.wheelchair_speed();
        cr.get("road_width", width);
        cr.get("wheelchair_speed", speed);
        cr.finish();
        validated("run config", [&] { cfg.crossing = crossing_model(width, speed); });
    }
    r.finish();
    validated("run config", [&] { cfg.validate(); });
    return cfg;
}

run_config load_run_config(const std::filesystem::path& path) {
    try {
        return parse_run_config(read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

std::string dump_run_config(const run_config& c) {
    json j;
    j["resample_hz"] = c.pipeline.resample_hz;
    j["smooth_window_rsu"] = c.pipeline.smooth_window_rsu;
    j["smooth_window_camera"] = c.pipeline.smooth_window_camera;
    j["smooth_window_tracker"] = c.pipeline.smooth_window_tracker;
    j["smooth_window_derivative"] = c.pipeline.smooth_window_derivative;
    j["max_gap_s"] = c.pipeline.max_gap_s;
    j["unknown_as_safe"] = c.unknown_as_safe;
    j["danger"] = {{"k", c.danger.k},         {"epsilon", c.danger.epsilon}, {"g_star", c.danger.g_star},
                   {"v_lo", c.danger.v_lo},   {"v_hi", c.danger.v_hi},       {"a_lo", c.danger.a_lo},
                   {"a_hi", c.danger.a_hi},   {"denom_floor", c.danger.denom_floor}};
    j["crossing"] = {{"road_width", c.crossing.road_width()},
                     {"wheelchair_speed", c.crossing.wheelchair_speed()}};
    return j.dump(2) + "\n";
}

scenario_file parse_scenario(std::string_view text) {
    const json doc = parse_json(text, "scenario");
    scenario_file out;
    auto& s = out.scenario;
    object_reader r(doc, "");
    r.get("duration", s.duration);
    r.get("truth_rate_hz", s.truth_rate_hz);
    r.get("rsu_rate_hz", s.rsu_rate_hz);
    r.get("camera_rate_hz", s.camera_rate_hz);
    r.get("initial_distance", s.initial_distance);
    r.get("initial_speed", s.initial_speed);
    r.get_unsigned("seed", s.seed);
    if (const json* segs = r.child("segments")) {
        if (!segs->is_array()) throw parse_error("field 'segments' must be an array");
        s.segments.clear();
        for (std::size_t i = 0; i < segs->size(); ++i) {
            const std::string path = "segments[" + std::to_string(i) + "]";
            object_reader sr((*segs)[i], path);
            accel_segment seg{0.0, 0.0};
            sr.get("duration", seg.duration);
            sr.get("accel", seg.accel);
            sr.finish();
            s.segments.push_back(seg);
        }
    }
    if (const json* sensors = r.child("sensors")) {
        object_reader sr(*sensors, "sensors");
        if (const json* m = sr.child("rsu")) read_sensor_model(*m, "sensors.rsu", out.sensors.rsu);
        if (const json* m = sr.child("camera_aw")) read_sensor_model(*m, "sensors.camera_aw", out.sensors.camera_aw);
        if (const json* m = sr.child("camera_drone"))
            read_sensor_model(*m, "sensors.camera_drone", out.sensors.camera_drone);
        sr.finish();
    }
    r.finish();
    validated("scenario", [&] {
        s.validate();
        out.sensors.rsu.validate();
        out.sensors.camera_aw.validate();
        out.sensors.camera_drone.validate();
    });
    return out;
}

scenario_file load_scenario(const std::filesystem::path& path) {
    try {
        return parse_scenario(read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

std::string dump_scenario(const scenario_file& f) {
    const auto& s = f.scenario;
    json j;
    j["duration"] = s.duration;
    j["truth_rate_hz"] = s.truth_rate_hz;
    j["rsu_rate_hz"] = s.rsu_rate_hz;
    j["camera_rate_hz"] = s.camera_rate_hz;
    j["initial_distance"] = s.initial_distance;
    j["initial_speed"] = s.initial_speed;
    j["seed"] = s.seed;
    j["segments"] = json::array();
    for (const auto& seg: s.segments) j["segments"].push_back({{"duration", seg.duration}, {"accel", seg.accel}});
    j["sensors"] = {{"rsu", sensor_model_json(f.sensors.rsu)},
                    {"camera_aw", sensor_model_json(f.sensors.camera_aw)},
                    {"camera_drone", sensor_model_json(f.sensors.camera_drone)}};
    return j.dump(2) + "\n";
}

} // namespace roadsafe
