#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <roadsafe/error.hpp>
#include <roadsafe/metrics.hpp>
#include <roadsafe/simulate.hpp>

#include "oracles.hpp"

using namespace roadsafe;

namespace {

using opt = std::optional<double>;
using enum decision;

time_series series(const std::vector<opt>& values) {
    std::vector<sample> s;
    for (std::size_t i = 0; i < values.size(); ++i) s.push_back({0.01 * static_cast<double>(i), values[i]});
    return time_series(std::move(s));
}

std::vector<decision> random_decisions(std::mt19937& rng, std::size_t n) {
    std::discrete_distribution<int> kind({4, 4, 1});
    std::vector<decision> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<decision>(kind(rng)));
    return out;
}

} // namespace

TEST(Rmse, Examples) {
    EXPECT_EQ(rmse(series({1.0, 2.0, 3.0}), series({1.0, 2.0, 3.0})), 0.0);
    EXPECT_NEAR(rmse(series({1.0, 2.0, 5.0}), series({1.0, 2.0, 3.0})), 1.154700538379251529, 1e-15);
}

TEST(Rmse, MaskedPointsAreSkipped) {
    const auto pred = series({opt{}, opt{}, 2.0, 4.0});
    const auto truth = series({1.0, 1.0, 1.0, 1.0});
    EXPECT_NEAR(rmse(pred, truth), std::sqrt((1.0 + 9.0) / 2.0), 1e-15);
}

TEST(Rmse, NoOverlapIsInsufficientData) {
    EXPECT_THROW(rmse(series({opt{}, 1.0}), series({1.0, opt{}})), insufficient_data);
}

TEST(Rmse, RequiresSharedGrid) {
    std::vector<sample> shifted{{0.5, 1.0}, {0.6, 1.0}};
    EXPECT_THROW(rmse(series({1.0, 1.0}), time_series(shifted)), invalid_argument);
    EXPECT_THROW(rmse(series({1.0, 1.0}), series({1.0})), invalid_argument);
}

TEST(Rmse, MatchesMaskedRecomputationAndIsSymmetric) {
    std::mt19937 rng(17);
    std::normal_distribution<double> value(0.0, 2.0);
    std::bernoulli_distribution drop(0.25);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<opt> a, b;
        const std::size_t n = 5 + rng() % 50;
        for (std::size_t i = 0; i < n; ++i) {
            a.push_back(drop(rng) ? opt{} : opt{value(rng)});
            b.push_back(drop(rng) ? opt{} : opt{value(rng)});
        }
        const auto expected = oracle::masked_rmse(a, b);
        if (!expected) {
            EXPECT_THROW(rmse(series(a), series(b)), insufficient_data);
            continue;
        }
        EXPECT_NEAR(rmse(series(a), series(b)), *expected, 1e-12);
        EXPECT_EQ(rmse(series(a), series(b)), rmse(series(b), series(a)));
        EXPECT_EQ(rmse(series(a), series(a)), 0.0);
    }
}

TEST(ClassificationReport, HandCount) {
    const std::vector pred{dangerous, dangerous, safe, safe};
    const std::vector truth{dangerous, safe, safe, safe};
    const auto r = classification_report(pred, truth);
    EXPECT_EQ(r.confusion, (confusion_counts{1, 1, 2, 0}));
    EXPECT_EQ(r.accuracy, 0.75);
    EXPECT_EQ(r.precision, 0.5);
    EXPECT_EQ(r.recall, 1.0);
    EXPECT_EQ(r.evaluated_points, 4u);
    EXPECT_EQ(r.excluded_points, 0u);
}

TEST(ClassificationReport, PerfectAgreement) {
    const std::vector d{dangerous, safe, dangerous, safe, safe};
    const auto r = classification_report(d, d);
    EXPECT_EQ(r.accuracy, 1.0);
    EXPECT_EQ(r.precision, 1.0);
    EXPECT_EQ(r.recall, 1.0);
}

TEST(ClassificationReport, AllDangerousAgainstHalf) {
    std::vector<decision> pred(10, dangerous), truth;
    for (int i = 0; i < 10; ++i) truth.push_back(i % 2 ? dangerous : safe);
    const auto r = classification_report(pred, truth);
    EXPECT_EQ(r.recall, 1.0);
    EXPECT_EQ(r.precision, 0.5);
    EXPECT_EQ(r.accuracy, 0.5);
}

TEST(ClassificationReport, UnknownIsExcluded) {
    const std::vector pred{unknown, dangerous, safe};
    const std::vector truth{dangerous, unknown, safe};
    const auto r = classification_report(pred, truth);
    EXPECT_EQ(r.evaluated_points, 1u);
    EXPECT_EQ(r.excluded_points, 2u);
}

TEST(ClassificationReport, UnknownAsSafeSwitch) {
    const std::vector pred{unknown, unknown, dangerous};
    const std::vector truth{dangerous, safe, unknown};
    const auto r = classification_report(pred, truth, true);
    EXPECT_EQ(r.confusion, (confusion_counts{0, 0, 1, 1}));
    EXPECT_EQ(r.excluded_points, 1u);
}

TEST(ClassificationReport, DegenerateDenominatorsAreFlagged) {
    const std::vector pred{safe, safe};
    const std::vector truth{safe, safe};
    const auto r = classification_report(pred, truth);
    EXPECT_FALSE(r.precision_defined);
    EXPECT_FALSE(r.recall_defined);
    EXPECT_EQ(r.precision, 1.0);
    EXPECT_EQ(r.recall, 1.0);
}

TEST(ClassificationReport, NothingEvaluatedIsInsufficientData) {
    const std::vector pred{unknown, safe};
    const std::vector truth{safe, unknown};
    EXPECT_THROW(classification_report(pred, truth), insufficient_data);
    EXPECT_THROW(classification_report(std::vector<decision>{}, std::vector<decision>{}), insufficient_data);
}

TEST(ClassificationReport, MatchesNaiveRecount) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 60;
        const auto pred = random_decisions(rng, n);
        const auto truth = random_decisions(rng, n);
        const auto c = oracle::recount(pred, truth);
        if (c.tp + c.fp + c.tn + c.fn == 0) {
            EXPECT_THROW(classification_report(pred, truth), insufficient_data);
            continue;
        }
        const auto r = classification_report(pred, truth);
        EXPECT_EQ(r.confusion, (confusion_counts{c.tp, c.fp, c.tn, c.fn}));
        EXPECT_EQ(r.excluded_points, c.excluded);
        EXPECT_EQ(r.evaluated_points, r.confusion.total());
        EXPECT_DOUBLE_EQ(r.accuracy, double(c.tp + c.tn) / double(c.tp + c.fp + c.tn + c.fn));
    }
}

TEST(ClassificationReport, ExcludedPointsDoNotMoveRates) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        auto pred = random_decisions(rng, 40);
        auto truth = random_decisions(rng, 40);
        pred[0] = truth[0] = dangerous;
        pred[1] = truth[1] = safe;
        const auto before = classification_report(pred, truth);
        for (int k = 0; k < 10; ++k) {
            pred.push_back(k % 2 ? unknown : dangerous);
            truth.push_back(k % 2 ? safe : unknown);
        }
        const auto after = classification_report(pred, truth);
        EXPECT_EQ(after.precision, before.precision);
        EXPECT_EQ(after.recall, before.recall);
        EXPECT_EQ(after.excluded_points, before.excluded_points + 10);
    }
}

TEST(DisplayName, TableRows) {
    EXPECT_EQ(display_name("rsu"), "Range sensors");
    EXPECT_EQ(display_name("camera_aw"), "AW camera");
    EXPECT_EQ(display_name("camera_drone"), "Drone camera");
    EXPECT_EQ(display_name("voting_fusion"), "Voting fusion");
}

TEST(EvaluateRun, NoiselessSensorsMatchTracker) {
    scenario_config cfg;
    cfg.rsu_rate_hz = cfg.camera_rate_hz = cfg.truth_rate_hz = 100.0;
    sensor_models models{sensor_model::ideal(sensor_model::kind::range_multiplicative),
                         sensor_model::ideal(sensor_model::kind::camera_pinhole),
                         sensor_model::ideal(sensor_model::kind::camera_pinhole)};
    pipeline_options opts;
    opts.smooth_window_rsu = opts.smooth_window_camera = 1;
    const danger_params p;
    const auto run = generate_run(cfg, models, opts, p);
    const auto trace = fuse_all(run.sensors, p);
    const auto rows = evaluate_run(run.sensors, trace, p);
    ASSERT_EQ(rows.size(), evaluation_sources.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].source, evaluation_sources[i]);
        ASSERT_TRUE(rows[i].report) << rows[i].error;
        const auto& r = *rows[i].report;
        EXPECT_GT(r.accuracy, 0.99) << rows[i].source;
        if (rows[i].source == "voting_fusion") EXPECT_FALSE(r.rmse);
        else EXPECT_LT(*r.rmse, 1e-3) << rows[i].source;
    }
}

TEST(EvaluateRun, RequiresTracker) {
    const uniform_grid grid(0.0, 100.0, 3);
    sensor_set set(grid);
    EXPECT_THROW(evaluate_run(set, fuse_all(set, danger_params{}), danger_params{}), invalid_argument);
}
