#include <roadsafe/io.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace roadsafe {

std::string format_decimal(double x) {
    if (!std::isfinite(x)) throw invalid_argument("format_decimal: non-finite value");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 6);
    if (ec != std::errc()) throw error("format_decimal: value out of range");
    std::string s(buf, end);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

std::optional<double> parse_decimal(std::string_view field) {
    if (field.empty()) return std::nullopt;
    // from_chars rejects a leading '+', which some writers emit.
    if (field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string_view sensor_column(sensor_id id) {
    switch (id) {
    case sensor_id::rsu: return "distance_range";
    case sensor_id::camera_aw: return "distance_wheelchair";
    case sensor_id::camera_drone: return "distance_drone";
    case sensor_id::tracker: return "distance_tracker";
    }
    return "";
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

// Integer microseconds; all timestamps written by this library are exact
// multiples of 1e-6 s.
std::int64_t to_micros(double t) { return std::llround(t * 1e6); }

std::string format_micros(std::int64_t us) {
    const bool negative = us < 0;
    const auto mag = static_cast<std::uint64_t>(negative ? -us : us);
    std::string frac = std::to_string(mag % 1000000);
    frac.insert(0, 6 - frac.size(), '0');
    return (negative ? "-" : "") + std::to_string(mag / 1000000) + "." + frac;
}

std::string optional_field(const std::optional<double>& v) {
    return v ? format_decimal(*v) : std::string();
}

} // namespace

sensor_recording read_sensor_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw header_error("sensor CSV: empty input, expected a header row", 1);

    const auto header = split_fields(line);
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!index.emplace(std::string(header[i]), i).second) {
            throw header_error("sensor CSV: duplicate column '" + std::string(header[i]) + "'", 1);
        }
    }
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = index.find(name);
        return it == index.end() ? std::nullopt : std::optional(it->second);
    };
    const auto ts_col = column(col_timestamp);
    if (!ts_col) throw header_error("sensor CSV: missing 'timestamp' column", 1);

    std::vector<std::pair<sensor_id, std::size_t>> cols;
    for (auto id: {sensor_id::rsu, sensor_id::camera_aw, sensor_id::camera_drone, sensor_id::tracker}) {
        if (auto c = column(sensor_column(id))) {
            cols.emplace_back(id, *c);
        } else if (id != sensor_id::tracker) {
            throw header_error("sensor CSV: missing '" + std::string(sensor_column(id)) + "' column", 1);
        }
    }

    std::map<sensor_id, std::vector<sample>> data;
    std::size_t line_no = 1;
    std::optional<double> last_t;
    std::size_t rows = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw parse_error("sensor CSV: expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        const auto t = parse_decimal(fields[*ts_col]);
        if (!t) throw parse_error("sensor CSV: malformed timestamp '" + std::string(fields[*ts_col]) + "'", line_no);
        if (last_t && !(*t > *last_t)) {
            throw non_monotone_error("sensor CSV: timestamp " + std::string(fields[*ts_col]) +
                                         " does not increase",
                                     line_no);
        }
        last_t = t;
        for (auto [id, c]: cols) {
            std::optional<double> v;
            if (!fields[c].empty()) {
                v = parse_decimal(fields[c]);
                if (!v) {
                    throw parse_error("sensor CSV: malformed value '" + std::string(fields[c]) + "' in column " +
                                          std::string(sensor_column(id)),
                                      line_no);
                }
            }
            data[id].push_back({*t, v});
        }
        ++rows;
    }
    if (rows == 0) throw parse_error("sensor CSV: no data rows", line_no);

    sensor_recording out;
    out.rows = rows;
    for (auto& [id, samples]: data) out.raw.emplace(id, time_series(std::move(samples)));
    out.has_tracker = out.raw.contains(sensor_id::tracker);
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    return out;
}

sensor_recording read_sensor_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_sensor_csv(in);
}

void write_sensor_csv(std::ostream& out, const raw_recording& raw) {
    static constexpr sensor_id order[] = {sensor_id::rsu, sensor_id::camera_aw, sensor_id::camera_drone,
                                          sensor_id::tracker};
    std::map<std::int64_t, std::array<std::optional<double>, 4>> rows;
    for (std::size_t c = 0; c < 4; ++c) {
        auto it = raw.find(order[c]);
        if (it == raw.end()) continue;
        for (const auto& s: it->second) {
            auto& row = rows[to_micros(s.t)];
            if (s.value) row[c] = s.value;
        }
    }
    out << sensor_csv_header << '\n';
    for (const auto& [us, row]: rows) {
        out << format_micros(us);
        for (const auto& v: row) out << ',' << optional_field(v);
        out << '\n';
    }
}

std::string_view decision_field(decision d) {
    switch (d) {
    case decision::dangerous: return "1";
    case decision::safe: return "0";
    case decision::unknown: return "";
    }
    return "";
}

void write_fused_trace(std::ostream& out, const fusion_trace& trace) {
    out << fused_trace_header << '\n';
    auto g_at = [&](sensor_id id, std::size_t i) -> std::optional<double> {
        auto it = trace.per_sensor.find(id);
        if (it == trace.per_sensor.end()) return std::nullopt;
        return it->second[i].g;
    };
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        const auto& p = trace.points[i];
        out << format_decimal(p.t) << ',' << optional_field(g_at(sensor_id::rsu, i)) << ','
            << optional_field(g_at(sensor_id::camera_aw, i)) << ','
            << optional_field(g_at(sensor_id::camera_drone, i)) << ','
            << optional_field(g_at(sensor_id::tracker, i)) << ',' << optional_field(p.distance_fused)
            << ',' << optional_field(p.g_distance_fusion) << ',' << optional_field(p.g_danger_fusion)
            << ',';
        if (p.votes_cast > 0) out << p.dangerous_votes;
        out << ',' << decision_field(p.decision_distance) << ',' << decision_field(p.decision_danger)
            << ',' << decision_field(p.decision_vote) << '\n';
    }
}

csv_table read_csv_table(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw header_error("CSV: empty input, expected a header row", 1);
    csv_table table;
    for (auto f: split_fields(line)) table.columns.emplace_back(f);
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != table.columns.size()) {
            throw parse_error("CSV: expected " + std::to_string(table.columns.size()) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        std::vector<std::optional<double>> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (fields[c].empty()) {
                row.emplace_back();
                continue;
            }
            auto v = parse_decimal(fields[c]);
            if (!v) {
                throw parse_error("CSV: malformed value '" + std::string(fields[c]) + "' in column " +
                                      table.columns[c],
                                  line_no);
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace roadsafe
