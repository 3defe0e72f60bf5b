#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <roadsafe/config.hpp>
#include <roadsafe/fusion.hpp>
#include <roadsafe/metrics.hpp>

// The operations behind each CLI subcommand, usable without the CLI.
namespace roadsafe::commands {

struct ingest_result {
    sensor_set sensors;
    bool has_tracker = false;
    std::size_t rows = 0;
};

// Read a sensor recording and run smooth -> align -> differentiate.
ingest_result ingest(std::istream& in, const run_config& config);
ingest_result ingest(const std::filesystem::path& path, const run_config& config);

// Aligned kinematics per sensor, one row per grid point.
void write_kinematics(std::ostream& out, const sensor_set& sensors);

fusion_trace fuse(const sensor_set& sensors, const run_config& config);

std::vector<source_evaluation> evaluate(const ingest_result& ingested, const fusion_trace& trace,
                                        const run_config& config);

// Aligned plain-text table with one row per source; failed rows carry "n/a".
std::string format_report_table(const std::vector<source_evaluation>& rows);
std::string format_report_json(const std::vector<source_evaluation>& rows);

void simulate(std::ostream& out, const scenario_file& scenario);

// Long-format plot table (timestamp,series,value). Accepts either a fused
// trace or a sensor recording; the latter is run through the pipeline and
// additionally yields per-sensor distances and speeds.
void plotdata(std::istream& in, std::ostream& out, const run_config& config);

} // namespace roadsafe::commands
