#include <roadsafe/commands.hpp>

#include <cstdio>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include <roadsafe/io.hpp>
#include <roadsafe/simulate.hpp>

namespace roadsafe::commands {

ingest_result ingest(std::istream& in, const run_config& config) {
    config.validate();
    auto rec = read_sensor_csv(in);
    return {build_sensor_set(rec.raw, config.pipeline), rec.has_tracker, rec.rows};
}

ingest_result ingest(const std::filesystem::path& path, const run_config& config) {
    auto in = open_input(path);
    return ingest(in, config);
}

void write_kinematics(std::ostream& out, const sensor_set& sensors) {
    std::vector<std::pair<sensor_id, const kinematic_track*>> tracks = sensors.fusion_inputs();
    if (sensors.has_tracker()) tracks.emplace_back(sensor_id::tracker, &sensors.at(sensor_id::tracker));

    out << "timestamp";
    for (const auto& [id, track]: tracks) {
        const auto name = to_string(id);
        out << ",distance_" << name << ",speed_" << name << ",accel_" << name;
    }
    out << '\n';
    auto field = [](const std::optional<double>& v) { return v ? format_decimal(*v) : std::string(); };
    for (std::size_t i = 0; i < sensors.grid().count; ++i) {
        out << format_decimal(sensors.grid().time(i));
        for (const auto& [id, track]: tracks) {
            out << ',' << field(track->distance[i].value) << ',' << field(track->speed[i].value) << ','
                << field(track->acceleration[i].value);
        }
        out << '\n';
    }
}

fusion_trace fuse(const sensor_set& sensors, const run_config& config) {
    return fuse_all(sensors, config.danger, config.pipeline.smooth_window_derivative);
}

std::vector<source_evaluation> evaluate(const ingest_result& ingested, const fusion_trace& trace,
                                        const run_config& config) {
    if (!ingested.has_tracker) throw invalid_argument("evaluation needs a distance_tracker column");
    return evaluate_run(ingested.sensors, trace, config.danger, config.unknown_as_safe);
}

namespace {

std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

} // namespace

std::string format_report_table(const std::vector<source_evaluation>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(18) << "Source" << std::right << std::setw(8) << "RMSE" << std::setw(10)
        << "Accuracy" << std::setw(8) << "Recall" << std::setw(11) << "Precision" << std::setw(7) << "TP"
        << std::setw(7) << "FP" << std::setw(7) << "TN" << std::setw(7) << "FN" << std::setw(11)
        << "Evaluated" << std::setw(10) << "Excluded" << '\n';
    for (const auto& row: rows) {
        out << std::left << std::setw(18) << display_name(row.source) << std::right;
        if (!row.report) {
            out << std::setw(8) << "n/a" << "  " << row.error << '\n';
            continue;
        }
        const auto& r = *row.report;
        std::string rmse_cell = "-";
        if (r.rmse) rmse_cell = fixed3(*r.rmse);
        else if (!row.error.empty()) rmse_cell = "n/a";
        out << std::setw(8) << rmse_cell << std::setw(10) << fixed3(r.accuracy) << std::setw(8)
            << fixed3(r.recall) << std::setw(11) << fixed3(r.precision) << std::setw(7) << r.confusion.tp
            << std::setw(7) << r.confusion.fp << std::setw(7) << r.confusion.tn << std::setw(7)
            << r.confusion.fn << std::setw(11) << r.evaluated_points << std::setw(10) << r.excluded_points
            << '\n';
    }
    return out.str();
}

std::string format_report_json(const std::vector<source_evaluation>& rows) {
    using nlohmann::json;
    json arr = json::array();
    for (const auto& row: rows) {
        json j;
        j["source"] = row.source;
        if (row.report) {
            const auto& r = *row.report;
            j["rmse"] = r.rmse ? json(*r.rmse) : json(nullptr);
            j["accuracy"] = r.accuracy;
            j["precision"] = r.precision;
            j["recall"] = r.recall;
            j["tp"] = r.confusion.tp;
            j["fp"] = r.confusion.fp;
            j["tn"] = r.confusion.tn;
            j["fn"] = r.confusion.fn;
            j["evaluated_points"] = r.evaluated_points;
            j["excluded_points"] = r.excluded_points;
        } else {
            for (const char* key: {"rmse", "accuracy", "precision", "recall", "tp", "fp", "tn", "fn",
                                   "evaluated_points", "excluded_points"}) {
                j[key] = nullptr;
            }
        }
        if (!row.error.empty()) j["error"] = row.error;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

void simulate(std::ostream& out, const scenario_file& scenario) {
    // The pipeline is irrelevant to the recording itself; only raw streams are written.
    const auto run = generate_run(scenario.scenario, scenario.sensors, pipeline_options{}, danger_params{});
    write_sensor_csv(out, run.raw);
}

namespace {

void emit(std::ostream& out, double t, std::string_view series, const std::optional<double>& v) {
    out << format_decimal(t) << ',' << series << ',';
    if (v) out << format_decimal(*v);
    out << '\n';
}

void plot_fused_table(const csv_table& table, std::ostream& out, const danger_params& params) {
    if (table.columns.empty() || table.columns.front() != col_timestamp) {
        throw header_error("plotdata: first column must be 'timestamp'", 1);
    }
    for (const auto& row: table.rows) {
        if (!row[0]) throw parse_error("plotdata: missing timestamp");
        for (std::size_t c = 1; c < table.columns.size(); ++c) emit(out, *row[0], table.columns[c], row[c]);
        emit(out, *row[0], "g_star", params.g_star);
    }
}

void plot_recording(const sensor_recording& rec, std::ostream& out, const run_config& config) {
    const auto sensors = build_sensor_set(rec.raw, config.pipeline);
    const auto trace = fuse(sensors, config);

    std::vector<std::pair<sensor_id, const kinematic_track*>> tracks = sensors.fusion_inputs();
    if (sensors.has_tracker()) tracks.emplace_back(sensor_id::tracker, &sensors.at(sensor_id::tracker));

    for (std::size_t i = 0; i < sensors.grid().count; ++i) {
        const double t = sensors.grid().time(i);
        for (const auto& [id, track]: tracks) {
            const std::string name(to_string(id));
            emit(out, t, "distance_" + name, track->distance[i].value);
            emit(out, t, "speed_" + name, track->speed[i].value);
            emit(out, t, "g_" + name, trace.per_sensor.at(id)[i].g);
        }
        const auto& p = trace.points[i];
        emit(out, t, "distance_fused", p.distance_fused);
        emit(out, t, "speed_fused", trace.distance_fusion_track.speed[i].value);
        emit(out, t, "g_distance_fusion", p.g_distance_fusion);
        emit(out, t, "g_danger_fusion", p.g_danger_fusion);
        emit(out, t, "g_star", config.danger.g_star);
    }
}

} // namespace

void plotdata(std::istream& in, std::ostream& out, const run_config& config) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::istringstream header_probe(text);
    std::string header;
    std::getline(header_probe, header);

    // Buffered so a parse failure leaves no partial output behind.
    std::ostringstream buffer;
    buffer << "timestamp,series,value\n";
    std::istringstream body(text);
    if (header.find(sensor_column(sensor_id::rsu)) != std::string::npos) {
        plot_recording(read_sensor_csv(body), buffer, config);
    } else {
        plot_fused_table(read_csv_table(body), buffer, config.danger);
    }
    out << buffer.str();
}

} // namespace roadsafe::commands
