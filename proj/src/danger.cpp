#include <roadsafe/danger.hpp>

#include <algorithm>
#include <cmath>

#include <roadsafe/error.hpp>

namespace roadsafe {

void danger_params::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(k) && k >= 0, "danger_params: k must be non-negative");
    require(finite(epsilon) && epsilon > 0, "danger_params: epsilon must be positive");
    require(finite(g_star), "danger_params: g_star must be finite");
    require(finite(v_lo) && finite(v_hi) && 0 <= v_lo && v_lo < v_hi,
            "danger_params: need 0 <= v_lo < v_hi");
    require(finite(a_lo) && finite(a_hi) && 0 <= a_lo && a_lo < a_hi,
            "danger_params: need 0 <= a_lo < a_hi");
    require(finite(denom_floor) && denom_floor > 0, "danger_params: denom_floor must be positive");
}

std::string_view to_string(decision d) {
    switch (d) {
    case decision::safe: return "safe";
    case decision::dangerous: return "dangerous";
    case decision::unknown: return "unknown";
    }
    return "unknown";
}

double speed_transform(double v_c, const danger_params& p) {
    if (v_c <= p.v_lo) return 0.0;
    if (v_c > p.v_hi) return 1.0;
    return (v_c - p.v_lo) / (p.v_hi - p.v_lo);
}

double accel_transform(double a_c, const danger_params& p) {
    const double span = p.a_hi - p.a_lo;
    if (a_c <= -p.a_hi) return -1.0;
    if (a_c <= -p.a_lo) return (a_c + p.a_lo) / span;
    if (a_c <= p.a_lo) return 0.0;
    if (a_c <= p.a_hi) return (a_c - p.a_lo) / span;
    return 1.0;
}

double danger_value(double d_c, double v_c, double a_c, const danger_params& p) {
    require(std::isfinite(d_c) && std::isfinite(v_c) && std::isfinite(a_c),
            "danger_value: non-finite input");
    require(d_c >= 0, "danger_value: negative distance");
    const double numerator = speed_transform(v_c, p) + p.k * accel_transform(a_c, p);
    const double denominator = std::max(std::log(d_c + p.epsilon), p.denom_floor);
    return numerator / denominator;
}

decision decide(std::optional<double> g, const danger_params& p) {
    if (!g) return decision::unknown;
    return *g > p.g_star ? decision::dangerous : decision::safe;
}

std::vector<danger_sample> danger_track(const kinematic_track& track, const danger_params& p) {
    std::vector<danger_sample> out;
    out.reserve(track.grid.count);
    for (std::size_t i = 0; i < track.grid.count; ++i) {
        const auto& d = track.distance[i].value;
        const auto& v = track.speed[i].value;
        const auto& a = track.acceleration[i].value;
        std::optional<double> g;
        // A sensor reading below zero is treated as contact range.
        if (d && v && a) g = danger_value(std::max(*d, 0.0), *v, *a, p);
        out.push_back({track.distance[i].t, g, decide(g, p)});
    }
    return out;
}

} // namespace roadsafe
