#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <roadsafe/kinematics.hpp>

namespace roadsafe {

// Constants of the danger function. Defaults are the published values.
struct danger_params {
    double k = 0.1;           // weight of the acceleration term
    double epsilon = 0.6;     // metres added to the distance before the log
    double g_star = 1.0;      // decision threshold
    double v_lo = 0.05;       // m/s, speed below which there is no contribution
    double v_hi = 0.65;       // m/s, speed at which the contribution saturates
    double a_lo = 1.0;        // m/s^2, dead band half-width
    double a_hi = 10.0;       // m/s^2, saturation
    double denom_floor = 1e-3; // lower clamp on ln(d + epsilon)

    // Throws invalid_argument when the invariants do not hold.
    void validate() const;
};

enum class decision { safe, dangerous, unknown };

std::string_view to_string(decision d);

struct danger_sample {
    double t;
    std::optional<double> g;
    decision verdict;
};

// Piecewise-linear speed transform, clamped to [0, 1].
double speed_transform(double v_c, const danger_params& params);

// Piecewise-linear acceleration transform with a dead band around zero,
// clamped to [-1, 1].
double accel_transform(double a_c, const danger_params& params);

//   g = (speed_transform(v) + k * accel_transform(a)) / max(ln(d + epsilon), denom_floor)
// The floor only engages for d + epsilon close to or below 1; with the
// defaults it never does for d >= 1.
double danger_value(double d_c, double v_c, double a_c, const danger_params& params);

// Strict exceedance: g == g_star is safe.
decision decide(std::optional<double> g, const danger_params& params);

std::vector<danger_sample> danger_track(const kinematic_track& track, const danger_params& params);

} // namespace roadsafe
