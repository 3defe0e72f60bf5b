#include <roadsafe/signal.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include <roadsafe/error.hpp>

namespace roadsafe {

namespace {

// Absolute slack for comparing grid times against sample times. Grid times are
// computed as start + i/rate, which can land an ulp or two off a sample time
// that is nominally identical.
constexpr double time_slack = 1e-9;

} // namespace

time_series::time_series(std::vector<sample> samples): samples_(std::move(samples)) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.t)) {
            throw invalid_argument("time_series: non-finite timestamp at index " + std::to_string(i));
        }
        if (s.value && !std::isfinite(*s.value)) {
            throw invalid_argument("time_series: non-finite value at index " + std::to_string(i));
        }
        if (i > 0 && !(s.t > samples_[i - 1].t)) {
            throw invalid_argument("time_series: timestamps not strictly increasing at index " +
                                   std::to_string(i));
        }
    }
}

time_series time_series::from_pairs(std::span<const std::pair<double, double>> pairs) {
    if (pairs.empty()) throw invalid_argument("time_series::from_pairs: no samples");
    std::vector<sample> out;
    out.reserve(pairs.size());
    for (auto [t, v]: pairs) out.push_back({t, v});
    return time_series(std::move(out));
}

std::size_t time_series::present_count() const {
    return static_cast<std::size_t>(
        std::count_if(samples_.begin(), samples_.end(), [](const sample& s) { return s.present(); }));
}

std::vector<double> time_series::timestamps() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s: samples_) out.push_back(s.t);
    return out;
}

std::vector<std::optional<double>> time_series::values() const {
    std::vector<std::optional<double>> out;
    out.reserve(samples_.size());
    for (const auto& s: samples_) out.push_back(s.value);
    return out;
}

uniform_grid::uniform_grid(double start, double rate_hz, std::size_t count):
    start(start), rate_hz(rate_hz), count(count)
{
    require(std::isfinite(start), "uniform_grid: start must be finite");
    require(std::isfinite(rate_hz) && rate_hz > 0, "uniform_grid: rate_hz must be positive");
    require(count >= 1, "uniform_grid: count must be at least 1");
}

std::vector<double> uniform_grid::timestamps() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = time(i);
    return out;
}

uniform_grid uniform_grid::spanning(double start, double stop, double rate_hz) {
    require(std::isfinite(rate_hz) && rate_hz > 0, "uniform_grid: rate_hz must be positive");
    require(stop >= start, "uniform_grid: stop precedes start");
    const double steps = std::floor((stop - start) * rate_hz + 1e-6);
    return uniform_grid(start, rate_hz, static_cast<std::size_t>(steps) + 1);
}

time_series smooth_trailing(const time_series& series, std::size_t window) {
    require(window >= 1, "smooth_trailing: window must be at least 1");
    std::vector<sample> out;
    out.reserve(series.size());
    std::deque<double> recent;
    for (const auto& s: series) {
        if (!s.value) {
            out.push_back({s.t, std::nullopt});
            continue;
        }
        recent.push_back(*s.value);
        if (recent.size() > window) recent.pop_front();
        // Summed afresh each step; a running sum drifts on long recordings.
        double acc = 0.0;
        for (double v: recent) acc += v;
        out.push_back({s.t, acc / static_cast<double>(recent.size())});
    }
    return time_series(std::move(out));
}

time_series resample(const time_series& series, const uniform_grid& grid, double max_gap) {
    require(max_gap >= 0, "resample: max_gap must be non-negative");
    if (series.empty() || grid.stop() < series.start() - time_slack ||
        grid.start > series.stop() + time_slack) {
        throw empty_overlap("resample: grid does not overlap the series time span");
    }

    std::vector<const sample*> present;
    present.reserve(series.size());
    for (const auto& s: series) {
        if (s.present()) present.push_back(&s);
    }

    std::vector<sample> out;
    out.reserve(grid.count);
    std::size_t right = 0; // first present sample with t >= grid time (minus slack)
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.time(i);
        while (right < present.size() && present[right]->t < t - time_slack) ++right;

        std::optional<double> value;
        if (right < present.size()) {
            const sample& hi = *present[right];
            if (std::abs(hi.t - t) <= time_slack) {
                value = hi.value;
            } else if (right > 0) {
                const sample& lo = *present[right - 1];
                if (hi.t - lo.t <= max_gap) {
                    const double w = (t - lo.t) / (hi.t - lo.t);
                    value = *lo.value + w * (*hi.value - *lo.value);
                }
            }
        }
        out.push_back({t, value});
    }
    return time_series(std::move(out));
}

aligned_series align(std::span<const time_series> series_list, double rate_hz, double max_gap) {
    require(!series_list.empty(), "align: empty series list");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s: series_list) {
        require(!s.empty(), "align: empty series");
        lo = std::min(lo, s.start());
        hi = std::max(hi, s.stop());
    }
    aligned_series out{uniform_grid::spanning(lo, hi, rate_hz), {}};
    out.series.reserve(series_list.size());
    for (const auto& s: series_list) out.series.push_back(resample(s, out.grid, max_gap));
    return out;
}

} // namespace roadsafe
