// Python entry points. Every call goes through the same harness as the CLI
// and returns the report as a JSON string.

#include "rank2lab/harness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rank2lab;

namespace {

std::pair<std::string, bool> run(const std::string& command, const std::string& options) {
    const nlohmann::json o = nlohmann::json::parse(options);
    RunConfig rc;
    rc.command = command;
    auto opt_string = [&](const char* key, std::optional<std::string>& dst) {
        if (o.contains(key) && !o[key].is_null()) dst = o[key].get<std::string>();
    };
    opt_string("algebra", rc.algebra);
    opt_string("system", rc.system);
    opt_string("tolerance", rc.tolerance);
    if (o.contains("fundamental") && !o["fundamental"].is_null()) rc.fundamental = o["fundamental"].get<int>();
    if (o.contains("sets") && !o["sets"].is_null()) rc.sets = o["sets"].get<int>();
    if (o.contains("coeffs") && !o["coeffs"].is_null()) rc.coeffs_json = o["coeffs"];
    rc.mode = parse_mode(o.value("mode", "exact"));
    rc.trials = o.value("trials", rc.trials);
    rc.points = o.value("points", rc.points);
    rc.seed = o.value("seed", rc.seed);
    rc.precision = o.value("precision", rc.precision);
    rc.step = o.value("step", rc.step);
    RunResult r;
    {
        py::gil_scoped_release release;
        r = run_command(rc);
    }
    return {report_bytes(r.report), r.passed};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and high-precision verification of the rank-2 integrable systems";
    py::register_exception<Error>(m, "Rank2LabError");
    m.def("run", &run, py::arg("command"), py::arg("options"),
          "Run a harness command with JSON options; returns (report JSON, passed).");
    m.def("systems", [] {
        return std::vector<std::string>{"A2-10", "B2-10", "B2-01", "G2-01", "G2-10"};
    });
    m.def("coefficient_names",
          [](const std::string& s) { return coefficient_names(parse_system(s)); }, py::arg("system"));
}
