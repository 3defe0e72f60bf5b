// roadsafe: road-crossing danger assessment from multi-sensor distance streams.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <roadsafe/commands.hpp>
#include <roadsafe/config.hpp>
#include <roadsafe/danger.hpp>
#include <roadsafe/error.hpp>
#include <roadsafe/io.hpp>
#include <roadsafe/kinematics.hpp>

namespace fs = std::filesystem;
using namespace roadsafe;

namespace {

enum exit_code { ok = 0, usage = 1, data = 2, internal = 3 };

struct global_options {
    std::string config_path;
    std::optional<double> threshold;
    std::optional<double> resample_hz;
    bool json = false;
    std::optional<std::uint64_t> seed;
    unsigned parallel_runs = 1;
};

run_config effective_config(const global_options& g) {
    run_config cfg = g.config_path.empty() ? run_config{} : load_run_config(g.config_path);
    if (g.threshold) cfg.danger.g_star = *g.threshold;
    if (g.resample_hz) cfg.pipeline.resample_hz = *g.resample_hz;
    cfg.validate();
    return cfg;
}

// Runs jobs on up to `workers` threads. Each job owns its state; the first
// failure in input order is rethrown after all jobs finish.
void run_jobs(std::vector<std::function<void()>>& jobs, unsigned workers) {
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    for (auto& e: errors) {
        if (e) std::rethrow_exception(e);
    }
}

void warn_no_tracker(const std::string& input) {
    std::cerr << "warning: " << input
              << ": no distance_tracker column; fuse-only mode, evaluation disabled\n";
}

int cmd_ingest(const global_options& g, const std::string& input, const std::string& output) {
    const auto cfg = effective_config(g);
    const auto res = commands::ingest(fs::path(input), cfg);
    const auto& grid = res.sensors.grid();
    std::cout << input << ": " << res.rows << " rows, grid " << grid.count << " points at "
              << grid.rate_hz << " Hz from " << format_decimal(grid.start) << " s\n";
    auto report = [&](sensor_id id) {
        if (!res.sensors.contains(id)) return;
        const auto& tr = res.sensors.at(id);
        std::cout << "  " << to_string(id) << ": distance present " << tr.distance.present_count() << "/"
                  << grid.count << ", speed " << tr.speed.present_count() << ", acceleration "
                  << tr.acceleration.present_count() << "\n";
    };
    for (auto id: {sensor_id::rsu, sensor_id::camera_aw, sensor_id::camera_drone, sensor_id::tracker}) report(id);
    if (!res.has_tracker) warn_no_tracker(input);
    if (!output.empty()) {
        auto out = open_output(output);
        commands::write_kinematics(out, res.sensors);
    }
    return ok;
}

int cmd_fuse(const global_options& g, const std::vector<std::string>& inputs, const std::string& output) {
    const auto cfg = effective_config(g);
    if (inputs.size() > 1) {
        if (output.empty()) throw CLI::ValidationError("--output", "a directory is required for several inputs");
        fs::create_directories(output);
    }
    std::vector<std::function<void()>> jobs;
    std::vector<std::string> warnings(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        jobs.emplace_back([&, i] {
            const auto res = commands::ingest(fs::path(inputs[i]), cfg);
            if (!res.has_tracker) warnings[i] = inputs[i];
            const auto trace = commands::fuse(res.sensors, cfg);
            if (inputs.size() > 1) {
                auto out = open_output(fs::path(output) / (fs::path(inputs[i]).stem().string() + ".fused.csv"));
                write_fused_trace(out, trace);
            } else if (!output.empty()) {
                auto out = open_output(output);
                write_fused_trace(out, trace);
            } else {
                std::ostringstream buf;
                write_fused_trace(buf, trace);
                std::cout << buf.str();
            }
        });
    }
    run_jobs(jobs, g.parallel_runs);
    for (const auto& w: warnings) {
        if (!w.empty()) warn_no_tracker(w);
    }
    return ok;
}

int cmd_evaluate(const global_options& g, const std::vector<std::string>& inputs) {
    const auto cfg = effective_config(g);
    std::vector<std::vector<source_evaluation>> results(inputs.size());
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        jobs.emplace_back([&, i] {
            const auto res = commands::ingest(fs::path(inputs[i]), cfg);
            const auto trace = commands::fuse(res.sensors, cfg);
            results[i] = commands::evaluate(res, trace, cfg);
        });
    }
    run_jobs(jobs, g.parallel_runs);

    if (g.json) {
        if (inputs.size() == 1) {
            std::cout << commands::format_report_json(results[0]);
        } else {
            nlohmann::ordered_json all = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                all[inputs[i]] = nlohmann::ordered_json::parse(commands::format_report_json(results[i]));
            }
            std::cout << all.dump(2) << '\n';
        }
        return ok;
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs.size() > 1) std::cout << (i ? "\n" : "") << "== " << inputs[i] << " ==\n";
        std::cout << commands::format_report_table(results[i]);
    }
    return ok;
}

int cmd_simulate(const global_options& g, const std::string& scenario_path, const std::string& output) {
    scenario_file scenario = scenario_path.empty() ? scenario_file{} : load_scenario(scenario_path);
    if (g.seed) scenario.scenario.seed = *g.seed;
    if (output.empty()) {
        std::ostringstream buf;
        commands::simulate(buf, scenario);
        std::cout << buf.str();
    } else {
        auto out = open_output(output);
        commands::simulate(out, scenario);
    }
    return ok;
}

int cmd_plotdata(const global_options& g, const std::string& input, const std::string& output) {
    const auto cfg = effective_config(g);
    auto in = open_input(input);
    if (output.empty()) {
        std::ostringstream buf;
        commands::plotdata(in, buf, cfg);
        std::cout << buf.str();
    } else {
        auto out = open_output(output);
        commands::plotdata(in, out, cfg);
    }
    return ok;
}

int cmd_check(const global_options& g, double d, double v, double a) {
    const auto cfg = effective_config(g);
    const double value = danger_value(d, v, a, cfg.danger);
    const auto safety = kinematic_safety_check(cfg.crossing, d, v, a);
    std::cout << "danger " << format_decimal(value) << " " << to_string(decide(value, cfg.danger)) << "\n"
              << "kinematic_margin " << format_decimal(safety.margin) << " "
              << (safety.verdict == safety::safe ? "safe" : "unsafe") << "\n";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Road-crossing danger assessment from multi-sensor distance streams"};
    app.require_subcommand(1);

    global_options g;
    app.add_option("--config", g.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
    app.add_option("--threshold", g.threshold, "Danger threshold g* (overrides the config)");
    app.add_option("--resample-hz", g.resample_hz, "Common grid rate (overrides the config)");
    app.add_flag("--json", g.json, "Emit the evaluation report as JSON");
    app.add_option("--seed", g.seed, "Simulation seed (overrides the scenario)");
    app.add_option("--parallel-runs", g.parallel_runs, "Process up to N input files concurrently")
        ->check(CLI::PositiveNumber);

    std::string output;
    std::vector<std::string> inputs;
    std::string single_input;
    double d = 0, v = 0, a = 0;

    auto* ingest = app.add_subcommand("ingest", "Load a sensor recording and report stream availability");
    ingest->add_option("input", single_input, "Sensor CSV")->required();
    ingest->add_option("-o,--output", output, "Write aligned kinematics CSV");

    auto* fuse = app.add_subcommand("fuse", "Write the fused decision trace");
    fuse->add_option("inputs", inputs, "Sensor CSV file(s)")->required();
    fuse->add_option("-o,--output", output, "Output file (directory for several inputs)");

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate sensors and fusions against the tracker");
    evaluate->add_option("inputs", inputs, "Sensor CSV file(s)")->required();

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic sensor recording");
    simulate->add_option("scenario", single_input, "Scenario config (JSON); defaults when omitted");
    simulate->add_option("-o,--output", output, "Output sensor CSV");

    auto* plotdata = app.add_subcommand("plotdata", "Long-format plotting table");
    plotdata->add_option("input", single_input, "Fused trace or sensor CSV")->required();
    plotdata->add_option("-o,--output", output, "Output CSV");

    auto* check = app.add_subcommand("check", "Danger value and kinematic margin for one state");
    check->add_option("--distance", d, "Obstacle distance (m)")->required();
    check->add_option("--speed", v, "Closing speed (m/s)")->required();
    check->add_option("--accel", a, "Closing acceleration (m/s^2)")->required();

    for (auto* sub: app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*ingest) return cmd_ingest(g, single_input, output);
        if (*fuse) return cmd_fuse(g, inputs, output);
        if (*evaluate) return cmd_evaluate(g, inputs);
        if (*simulate) return cmd_simulate(g, single_input, output);
        if (*plotdata) return cmd_plotdata(g, single_input, output);
        if (*check) return cmd_check(g, d, v, a);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const roadsafe::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    }
    return usage;
}
