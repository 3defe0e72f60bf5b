#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <roadsafe/danger.hpp>
#include <roadsafe/fusion.hpp>
#include <roadsafe/kinematics.hpp>
#include <roadsafe/simulate.hpp>

namespace roadsafe {

// Everything the processing commands need. Defaults reproduce the
// published preprocessing: windows 2 (range) and 5 (cameras), 100 Hz.
struct run_config {
    pipeline_options pipeline;
    danger_params danger;
    crossing_model crossing{3.0, 1.0};
    bool unknown_as_safe = false;

    void validate() const;
};

// Parse errors name the offending field, or the line for syntax errors.
run_config parse_run_config(std::string_view json_text);
run_config load_run_config(const std::filesystem::path& path);
std::string dump_run_config(const run_config& config);

struct scenario_file {
    scenario_config scenario;
    sensor_models sensors;
};

scenario_file parse_scenario(std::string_view json_text);
scenario_file load_scenario(const std::filesystem::path& path);
std::string dump_scenario(const scenario_file& scenario);

} // namespace roadsafe
