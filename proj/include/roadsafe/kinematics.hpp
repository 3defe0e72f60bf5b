#pragma once

#include <cstddef>

#include <roadsafe/signal.hpp>

namespace roadsafe {

// Distance, closing speed and closing acceleration of one obstacle as seen
// by one sensor, all sampled on the same uniform grid. Speed is positive
// while the obstacle approaches; acceleration is positive while the
// approach speeds up.
struct kinematic_track {
    uniform_grid grid;
    time_series distance;
    time_series speed;
    time_series acceleration;
};

inline constexpr std::size_t default_derivative_window = 5;

// Backward first differences on the grid:
//   speed[i]        = (distance[i-1] - distance[i]) * rate
//   acceleration[i] = (speed[i] - speed[i-1]) * rate
// A derivative is missing wherever its stencil touches a missing input. Each
// derivative is then passed through smooth_trailing(window); window 1
// disables smoothing. `distance` must carry exactly the grid's timestamps.
kinematic_track differentiate(const time_series& distance, const uniform_grid& grid,
                              std::size_t derivative_window = default_derivative_window);

// Road width and constant crossing speed of the wheelchair.
class crossing_model {
public:
    crossing_model(double road_width_m, double wheelchair_speed_mps);

    double road_width() const { return road_width_; }
    double wheelchair_speed() const { return wheelchair_speed_; }

    // Position of the wheelchair along the crossing direction.
    double wheelchair_position(double t) const { return wheelchair_speed_ * t; }

private:
    double road_width_;
    double wheelchair_speed_;
};

double time_to_cross(const crossing_model& model);

// Distance travelled by an obstacle with initial speed v and constant
// acceleration a after t seconds (no clamping of the speed).
double obstacle_displacement(double v_c, double a_c, double t);

enum class safety { safe, unsafe };

struct safety_assessment {
    safety verdict;
    double margin;
};

// Endpoint form of the no-impact constraint over the crossing interval:
//   margin = (t_cross * v_c + t_cross^2 / 2 * a_c) / d_c, safe iff margin < 1.
safety_assessment kinematic_safety_check(const crossing_model& model, double d_c, double v_c,
                                         double a_c);

// Brute-force check of the same constraint: steps through [0, t_cross] at
// `dt`, integrating the obstacle with its speed clamped at zero, and reports
// unsafe if the obstacle ever covers `d_c`.
safety collision_oracle(const crossing_model& model, double d_c, double v_c, double a_c, double dt);

} // namespace roadsafe
