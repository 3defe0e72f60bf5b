#include <roadsafe/metrics.hpp>

#include <cmath>

#include <roadsafe/error.hpp>

namespace roadsafe {

double rmse(const time_series& predicted, const time_series& truth) {
    require(predicted.size() == truth.size(), "rmse: series lengths differ");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        require(predicted[i].t == truth[i].t, "rmse: series timestamps differ");
        if (predicted[i].value && truth[i].value) {
            const double d = *predicted[i].value - *truth[i].value;
            sum += d * d;
            ++n;
        }
    }
    if (n == 0) throw insufficient_data("rmse: no points where both series are present");
    return std::sqrt(sum / static_cast<double>(n));
}

evaluation_report classification_report(std::span<const decision> predicted,
                                         std::span<const decision> truth, bool unknown_as_safe) {
    require(predicted.size() == truth.size(), "classification_report: stream lengths differ");
    evaluation_report r;
    auto& c = r.confusion;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        decision p = predicted[i];
        const decision t = truth[i];
        if (p == decision::unknown && unknown_as_safe) p = decision::safe;
        if (p == decision::unknown || t == decision::unknown) {
            ++r.excluded_points;
            continue;
        }
        const bool pd = p == decision::dangerous;
        const bool td = t == decision::dangerous;
        if (pd && td) ++c.tp;
        else if (pd) ++c.fp;
        else if (td) ++c.fn;
        else ++c.tn;
    }
    r.evaluated_points = c.total();
    if (r.evaluated_points == 0) {
        throw insufficient_data("classification_report: no points with both decisions known");
    }
    r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    r.precision_defined = c.tp + c.fp > 0;
    r.precision = r.precision_defined ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 1.0;
    r.recall_defined = c.tp + c.fn > 0;
    r.recall = r.recall_defined ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 1.0;
    return r;
}

std::string_view display_name(std::string_view source) {
    if (source == "rsu") return "Range sensors";
    if (source == "camera_aw") return "AW camera";
    if (source == "camera_drone") return "Drone camera";
    if (source == "distance_fusion") return "Distance fusion";
    if (source == "danger_fusion") return "Danger fusion";
    if (source == "voting_fusion") return "Voting fusion";
    return source;
}

namespace {

time_series g_series(const std::vector<danger_sample>& samples) {
    std::vector<sample> out;
    out.reserve(samples.size());
    for (const auto& s: samples) out.push_back({s.t, s.g});
    return time_series(std::move(out));
}

std::vector<decision> verdicts(const std::vector<danger_sample>& samples) {
    std::vector<decision> out;
    out.reserve(samples.size());
    for (const auto& s: samples) out.push_back(s.verdict);
    return out;
}

source_evaluation evaluate_source(std::string source, const std::optional<time_series>& g,
                                  const std::vector<decision>& predicted,
                                  const time_series& truth_g, const std::vector<decision>& truth,
                                  bool unknown_as_safe) {
    source_evaluation out{std::move(source), std::nullopt, {}};
    try {
        auto report = classification_report(predicted, truth, unknown_as_safe);
        if (g) {
            try {
                report.rmse = rmse(*g, truth_g);
            } catch (const insufficient_data& e) {
                out.error = e.what();
            }
        }
        out.report = report;
    } catch (const insufficient_data& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

std::vector<source_evaluation> evaluate_run(const sensor_set& sensors, const fusion_trace& trace,
                                            const danger_params& params, bool unknown_as_safe) {
    require(sensors.has_tracker(), "evaluate_run: no tracker track");
    const auto truth_samples = danger_track(sensors.at(sensor_id::tracker), params);
    const time_series truth_g = g_series(truth_samples);
    const auto truth = verdicts(truth_samples);

    std::vector<source_evaluation> out;
    for (auto id: fused_sensors) {
        auto it = trace.per_sensor.find(id);
        if (it == trace.per_sensor.end()) {
            out.push_back({std::string(to_string(id)), std::nullopt, "sensor not present"});
            continue;
        }
        out.push_back(evaluate_source(std::string(to_string(id)), g_series(it->second),
                                      verdicts(it->second), truth_g, truth, unknown_as_safe));
    }

    std::vector<sample> g_dist, g_dang;
    std::vector<decision> d_dist, d_dang, d_vote;
    for (const auto& p: trace.points) {
        g_dist.push_back({p.t, p.g_distance_fusion});
        g_dang.push_back({p.t, p.g_danger_fusion});
        d_dist.push_back(p.decision_distance);
        d_dang.push_back(p.decision_danger);
        d_vote.push_back(p.decision_vote);
    }
    out.push_back(evaluate_source("distance_fusion", time_series(std::move(g_dist)), d_dist, truth_g,
                                  truth, unknown_as_safe));
    out.push_back(evaluate_source("danger_fusion", time_series(std::move(g_dang)), d_dang, truth_g,
                                  truth, unknown_as_safe));
    out.push_back(evaluate_source("voting_fusion", std::nullopt, d_vote, truth_g, truth, unknown_as_safe));
    return out;
}

} // namespace roadsafe
