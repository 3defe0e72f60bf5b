#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <roadsafe/danger.hpp>
#include <roadsafe/fusion.hpp>
#include <roadsafe/signal.hpp>

namespace roadsafe {

// Positive class is `dangerous`.
struct confusion_counts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    friend bool operator==(const confusion_counts&, const confusion_counts&) = default;
};

struct evaluation_report {
    std::optional<double> rmse;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    // False when the denominator was zero; the value is then reported as 1.
    bool precision_defined = true;
    bool recall_defined = true;
    confusion_counts confusion;
    std::size_t evaluated_points = 0;
    std::size_t excluded_points = 0;
};

// Root mean square difference over points where both series are present.
// Series must share timestamps. Throws insufficient_data when no point has
// both values.
double rmse(const time_series& predicted, const time_series& truth);

// Points where either side is unknown are excluded. With `unknown_as_safe`
// an unknown prediction against a known truth counts as a safe prediction.
evaluation_report classification_report(std::span<const decision> predicted,
                                         std::span<const decision> truth,
                                         bool unknown_as_safe = false);

struct source_evaluation {
    std::string source;
    std::optional<evaluation_report> report;
    // Set when a metric could not be computed (e.g. no overlapping data).
    std::string error;
};

// Source ids in table order.
inline constexpr std::array<std::string_view, 6> evaluation_sources{
    "rsu", "camera_aw", "camera_drone", "distance_fusion", "danger_fusion", "voting_fusion"};

std::string_view display_name(std::string_view source);

// One entry per evaluation source, in table order. The voting row carries
// no rmse. Requires a tracker track in `sensors` and a trace computed with it.
std::vector<source_evaluation> evaluate_run(const sensor_set& sensors, const fusion_trace& trace,
                                            const danger_params& params,
                                            bool unknown_as_safe = false);

} // namespace roadsafe
