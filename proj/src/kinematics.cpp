#include <roadsafe/kinematics.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <roadsafe/error.hpp>

namespace roadsafe {

namespace {

time_series backward_difference(const time_series& series, double rate_hz) {
    std::vector<sample> out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::optional<double> v;
        if (i > 0 && series[i].value && series[i - 1].value) {
            v = (*series[i].value - *series[i - 1].value) * rate_hz;
        }
        out.push_back({series[i].t, v});
    }
    return time_series(std::move(out));
}

time_series negate(const time_series& series) {
    std::vector<sample> out;
    out.reserve(series.size());
    for (const auto& s: series) out.push_back({s.t, s.value ? std::optional(-*s.value) : std::nullopt});
    return time_series(std::move(out));
}

} // namespace

kinematic_track differentiate(const time_series& distance, const uniform_grid& grid,
                              std::size_t derivative_window) {
    require(derivative_window >= 1, "differentiate: derivative window must be at least 1");
    require(distance.size() == grid.count, "differentiate: distance series does not match the grid");

    // Closing speed is the rate of decrease of distance.
    time_series speed = negate(backward_difference(distance, grid.rate_hz));
    time_series accel = backward_difference(speed, grid.rate_hz);

    return kinematic_track{
        grid,
        distance,
        smooth_trailing(speed, derivative_window),
        smooth_trailing(accel, derivative_window),
    };
}

crossing_model::crossing_model(double road_width_m, double wheelchair_speed_mps):
    road_width_(road_width_m), wheelchair_speed_(wheelchair_speed_mps)
{
    require(std::isfinite(road_width_m) && road_width_m > 0, "crossing_model: road width must be positive");
    require(std::isfinite(wheelchair_speed_mps) && wheelchair_speed_mps > 0,
            "crossing_model: wheelchair speed must be positive");
}

double time_to_cross(const crossing_model& model) {
    return model.road_width() / model.wheelchair_speed();
}

double obstacle_displacement(double v_c, double a_c, double t) {
    require(t >= 0, "obstacle_displacement: negative time");
    return v_c * t + 0.5 * a_c * t * t;
}

safety_assessment kinematic_safety_check(const crossing_model& model, double d_c, double v_c,
                                         double a_c) {
    require(d_c > 0, "kinematic_safety_check: distance must be positive");
    const double l = model.road_width();
    const double vw = model.wheelchair_speed();
    const double margin = ((l / vw) * v_c + (l * l / (2.0 * vw * vw)) * a_c) / d_c;
    return {margin < 1.0 ? safety::safe : safety::unsafe, margin};
}

safety collision_oracle(const crossing_model& model, double d_c, double v_c, double a_c, double dt) {
    require(dt > 0, "collision_oracle: dt must be positive");
    const double t_cross = time_to_cross(model);
    const auto steps = static_cast<std::size_t>(std::ceil(t_cross / dt));

    double y = 0.0;
    double v = std::max(v_c, 0.0);
    double t = 0.0;
    if (y >= d_c) return safety::unsafe;
    for (std::size_t k = 0; k < steps; ++k) {
        const double h = std::min(dt, t_cross - t);
        if (h <= 0) break;
        if (v <= 0 && a_c <= 0) {
            // Stopped and not pushed forward: nothing more can happen.
            break;
        }
        const double v_next = v + a_c * h;
        if (v_next < 0) {
            // Speed reaches zero inside this step.
            const double ts = v / -a_c;
            y += v * ts + 0.5 * a_c * ts * ts;
            v = 0.0;
        } else {
            y += v * h + 0.5 * a_c * h * h;
            v = v_next;
        }
        t += h;
        if (y >= d_c) return safety::unsafe;
    }
    return safety::safe;
}

} // namespace roadsafe
