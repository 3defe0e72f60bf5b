#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <roadsafe/error.hpp>
#include <roadsafe/fusion.hpp>

namespace roadsafe {

struct header_error: parse_error {
    using parse_error::parse_error;
};

struct non_monotone_error: parse_error {
    using parse_error::parse_error;
};

// Fixed six fractional digits, correctly rounded, never "-0.000000".
std::string format_decimal(double x);

// Strict decimal parse: the whole field must be consumed, value finite.
std::optional<double> parse_decimal(std::string_view field);

// Column names of the sensor recording format.
inline constexpr std::string_view col_timestamp = "timestamp";
std::string_view sensor_column(sensor_id id);

inline constexpr std::string_view sensor_csv_header =
    "timestamp,distance_range,distance_wheelchair,distance_drone,distance_tracker";

inline constexpr std::string_view fused_trace_header =
    "timestamp,g_rsu,g_cam_aw,g_cam_drone,g_tracker,distance_fused,g_distance_fusion,"
    "g_danger_fusion,vote,decision_distance,decision_danger,decision_vote";

struct sensor_recording {
    raw_recording raw;
    bool has_tracker = false;
    std::size_t rows = 0;
};

// Reads the sensor recording CSV. Required columns: timestamp and the three
// sensor distances; distance_tracker is optional and unknown columns are
// ignored. Empty fields are missing values.
sensor_recording read_sensor_csv(std::istream& in);
sensor_recording read_sensor_csv(const std::filesystem::path& path);

// Writes the recording with the canonical header. Rows are the union of all
// sensor timestamps at microsecond resolution. A missing tracker stream
// leaves its column empty.
void write_sensor_csv(std::ostream& out, const raw_recording& raw);

// 1 = dangerous, 0 = safe, empty = unknown.
std::string_view decision_field(decision d);

void write_fused_trace(std::ostream& out, const fusion_trace& trace);

// Generic reader for headed numeric CSV tables (used for fused traces).
struct csv_table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};
csv_table read_csv_table(std::istream& in);

// Opens a file for reading/writing or throws io_error.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

} // namespace roadsafe
