#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <roadsafe/commands.hpp>
#include <roadsafe/config.hpp>
#include <roadsafe/danger.hpp>
#include <roadsafe/error.hpp>
#include <roadsafe/fusion.hpp>
#include <roadsafe/io.hpp>
#include <roadsafe/kinematics.hpp>
#include <roadsafe/metrics.hpp>

namespace py = pybind11;
using namespace roadsafe;

namespace {

run_config config_from(const std::optional<std::string>& json) {
    return json ? parse_run_config(*json) : run_config{};
}

decision decision_from(const std::string& s) {
    if (s == "safe") return decision::safe;
    if (s == "dangerous") return decision::dangerous;
    if (s == "unknown") return decision::unknown;
    throw invalid_argument("unknown decision '" + s + "'");
}

std::vector<decision> decisions_from(const std::vector<std::string>& xs) {
    std::vector<decision> out;
    for (const auto& x: xs) out.push_back(decision_from(x));
    return out;
}

time_series indexed(const std::vector<std::optional<double>>& xs) {
    std::vector<sample> s;
    for (std::size_t i = 0; i < xs.size(); ++i) s.push_back({static_cast<double>(i), xs[i]});
    return time_series(std::move(s));
}

py::dict report_dict(const evaluation_report& r) {
    py::dict d;
    d["rmse"] = r.rmse ? py::cast(*r.rmse) : py::none();
    d["accuracy"] = r.accuracy;
    d["precision"] = r.precision;
    d["recall"] = r.recall;
    d["precision_defined"] = r.precision_defined;
    d["recall_defined"] = r.recall_defined;
    d["tp"] = r.confusion.tp;
    d["fp"] = r.confusion.fp;
    d["tn"] = r.confusion.tn;
    d["fn"] = r.confusion.fn;
    d["evaluated_points"] = r.evaluated_points;
    d["excluded_points"] = r.excluded_points;
    return d;
}

commands::ingest_result ingest_text(const std::string& csv, const run_config& cfg) {
    std::istringstream in(csv);
    return commands::ingest(in, cfg);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Road-crossing danger assessment from multi-sensor distance streams";

    auto base = py::register_exception<error>(m, "RoadsafeError", PyExc_ValueError);
    py::register_exception<insufficient_data>(m, "InsufficientData", base.ptr());
    py::register_exception<parse_error>(m, "ParseError", base.ptr());

    py::class_<danger_params>(m, "DangerParams")
        .def(py::init<>())
        .def_readwrite("k", &danger_params::k)
        .def_readwrite("epsilon", &danger_params::epsilon)
        .def_readwrite("g_star", &danger_params::g_star)
        .def_readwrite("v_lo", &danger_params::v_lo)
        .def_readwrite("v_hi", &danger_params::v_hi)
        .def_readwrite("a_lo", &danger_params::a_lo)
        .def_readwrite("a_hi", &danger_params::a_hi)
        .def_readwrite("denom_floor", &danger_params::denom_floor)
        .def("validate", &danger_params::validate);

    m.def("speed_transform", &speed_transform, py::arg("v"), py::arg("params") = danger_params{});
    m.def("accel_transform", &accel_transform, py::arg("a"), py::arg("params") = danger_params{});
    m.def("danger_value", &danger_value, py::arg("distance"), py::arg("speed"), py::arg("accel"),
          py::arg("params") = danger_params{});
    m.def(
        "decide",
        [](std::optional<double> g, const danger_params& p) { return std::string(to_string(decide(g, p))); },
        py::arg("g"), py::arg("params") = danger_params{});

    m.def(
        "kinematic_safety_check",
        [](double d, double v, double a, double road_width, double wheelchair_speed) {
            const auto r = kinematic_safety_check(crossing_model(road_width, wheelchair_speed), d, v, a);
            return py::make_tuple(r.verdict == safety::safe ? "safe" : "unsafe", r.margin);
        },
        py::arg("distance"), py::arg("speed"), py::arg("accel"), py::arg("road_width") = 3.0,
        py::arg("wheelchair_speed") = 1.0);
    m.def(
        "collision_oracle",
        [](double d, double v, double a, double road_width, double wheelchair_speed, double dt) {
            return collision_oracle(crossing_model(road_width, wheelchair_speed), d, v, a, dt) == safety::safe
                       ? "safe"
                       : "unsafe";
        },
        py::arg("distance"), py::arg("speed"), py::arg("accel"), py::arg("road_width") = 3.0,
        py::arg("wheelchair_speed") = 1.0, py::arg("dt") = 1e-3);

    m.def(
        "majority_vote",
        [](const std::vector<std::string>& votes) {
            return std::string(to_string(majority_vote(decisions_from(votes))));
        },
        py::arg("votes"));
    m.def(
        "classification_report",
        [](const std::vector<std::string>& pred, const std::vector<std::string>& truth, bool unknown_as_safe) {
            return report_dict(classification_report(decisions_from(pred), decisions_from(truth), unknown_as_safe));
        },
        py::arg("predicted"), py::arg("truth"), py::arg("unknown_as_safe") = false);
    m.def(
        "rmse",
        [](const std::vector<std::optional<double>>& pred, const std::vector<std::optional<double>>& truth) {
            return rmse(indexed(pred), indexed(truth));
        },
        py::arg("predicted"), py::arg("truth"));

    m.def(
        "simulate",
        [](const std::optional<std::string>& scenario_json, std::optional<std::uint64_t> seed) {
            scenario_file s = scenario_json ? parse_scenario(*scenario_json) : scenario_file{};
            if (seed) s.scenario.seed = *seed;
            std::ostringstream out;
            commands::simulate(out, s);
            return out.str();
        },
        py::arg("scenario_json") = py::none(), py::arg("seed") = py::none(),
        "Simulated sensor recording as CSV text.");
    m.def(
        "fuse",
        [](const std::string& csv, const std::optional<std::string>& config_json) {
            const auto cfg = config_from(config_json);
            const auto ing = ingest_text(csv, cfg);
            std::ostringstream out;
            write_fused_trace(out, commands::fuse(ing.sensors, cfg));
            return out.str();
        },
        py::arg("csv"), py::arg("config_json") = py::none(), "Fused decision trace as CSV text.");
    m.def(
        "evaluate",
        [](const std::string& csv, const std::optional<std::string>& config_json) {
            const auto cfg = config_from(config_json);
            const auto ing = ingest_text(csv, cfg);
            const auto rows = commands::evaluate(ing, commands::fuse(ing.sensors, cfg), cfg);
            py::list out;
            for (const auto& row: rows) {
                py::dict d = row.report ? report_dict(*row.report) : py::dict();
                d["source"] = row.source;
                if (!row.error.empty()) d["error"] = row.error;
                out.append(d);
            }
            return out;
        },
        py::arg("csv"), py::arg("config_json") = py::none(), "One report per source, in table order.");
    m.def(
        "report_table",
        [](const std::string& csv, const std::optional<std::string>& config_json) {
            const auto cfg = config_from(config_json);
            const auto ing = ingest_text(csv, cfg);
            return commands::format_report_table(commands::evaluate(ing, commands::fuse(ing.sensors, cfg), cfg));
        },
        py::arg("csv"), py::arg("config_json") = py::none());
    m.def(
        "plotdata",
        [](const std::string& text, const std::optional<std::string>& config_json) {
            std::istringstream in(text);
            std::ostringstream out;
            commands::plotdata(in, out, config_from(config_json));
            return out.str();
        },
        py::arg("text"), py::arg("config_json") = py::none());
}
