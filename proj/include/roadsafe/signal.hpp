#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace roadsafe {

struct sample {
    double t;
    std::optional<double> value;

    bool present() const { return value.has_value(); }
    friend bool operator==(const sample&, const sample&) = default;
};

// Timestamped scalar stream. Missing values mark sensor non-availability.
// Timestamps are finite and strictly increasing; values, when present, are
// finite. The invariants are checked on construction.
class time_series {
public:
    time_series() = default;
    explicit time_series(std::vector<sample> samples);

    // Requires at least one pair.
    static time_series from_pairs(std::span<const std::pair<double, double>> pairs);

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    const sample& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<sample>& samples() const { return samples_; }
    auto begin() const { return samples_.begin(); }
    auto end() const { return samples_.end(); }

    std::size_t present_count() const;
    std::vector<double> timestamps() const;
    std::vector<std::optional<double>> values() const;

    // First/last timestamp. Series must be non-empty.
    double start() const { return samples_.front().t; }
    double stop() const { return samples_.back().t; }

    friend bool operator==(const time_series&, const time_series&) = default;

private:
    std::vector<sample> samples_;
};

// start + i / rate_hz for i in [0, count).
struct uniform_grid {
    double start = 0.0;
    double rate_hz = 100.0;
    std::size_t count = 1;

    uniform_grid() = default;
    uniform_grid(double start, double rate_hz, std::size_t count);

    double time(std::size_t i) const { return start + static_cast<double>(i) / rate_hz; }
    double stop() const { return time(count - 1); }
    double step() const { return 1.0 / rate_hz; }
    std::vector<double> timestamps() const;

    // Smallest grid at `rate_hz` starting at `start` whose last point does not
    // pass `stop` by more than rounding slack.
    static uniform_grid spanning(double start, double stop, double rate_hz);

    friend bool operator==(const uniform_grid&, const uniform_grid&) = default;
};

inline constexpr double default_max_gap_s = 0.5;

// Trailing mean of the last `window` present values up to and including
// each index. Missing points stay missing.
time_series smooth_trailing(const time_series& series, std::size_t window);

// Linear interpolation between neighbouring present samples onto `grid`.
// Points outside the present span, or between neighbours more than
// `max_gap` seconds apart, are missing. Throws empty_overlap when the grid
// and the series' time span do not intersect.
time_series resample(const time_series& series, const uniform_grid& grid,
                     double max_gap = default_max_gap_s);

struct aligned_series {
    uniform_grid grid;
    std::vector<time_series> series;
};

// Resample every series onto one grid covering the union of their spans.
aligned_series align(std::span<const time_series> series_list, double rate_hz,
                     double max_gap = default_max_gap_s);

} // namespace roadsafe
