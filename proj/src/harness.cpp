#include "rank2lab/harness.hpp"

#include "rank2lab/identities.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace rank2lab {

namespace {

unsigned steps_for(double step) {
    if (!(step > 0) || step > 1 || 1.0 / step > 1e7) throw Error("InvalidStep", "step must lie in (0, 1]");
    return unsigned(std::lround(1.0 / step));
}

void require_precision(unsigned digits) {
    if (digits < 30) throw Error("InvalidPrecision", "numeric mode needs at least 30 digits");
}

std::vector<SystemConfig> configs_for(const RunConfig& rc, int default_sets) {
    std::optional<SystemId> s;
    if (rc.system) s = parse_system(*rc.system);
    if (rc.coeffs || rc.coeffs_json) {
        if (rc.coeffs && rc.coeffs_json) throw Error("UsageError", "give coefficients either inline or as a file");
        if (rc.sets) throw Error("UsageError", "--sets applies only to random coefficients");
        return rc.coeffs ? load_configs(*rc.coeffs, s) : parse_configs(*rc.coeffs_json, s);
    }
    if (!s) throw Error("UsageError", "--system or --coeffs is required");
    const int sets = rc.sets.value_or(default_sets);
    if (sets < 1) throw Error("UsageError", "--sets must be positive");
    return random_configs(*s, sets, rc.seed);
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

RunResult cmd_build_rep(const std::string& algebra, int fundamental) {
    const Algebra a = parse_algebra(algebra);
    if (fundamental != 1 && fundamental != 2) throw Error("UsageError", "--fundamental must be 1 or 2");
    const Representation rep = build_fundamental(a, fundamental);
    const RelationReport rel = verify_relations(rep);
    RunResult r;
    r.report = rep_to_json(rep);
    r.report["relations"] = {{"checked", rel.checked}, {"ok", rel.ok}};
    if (!rel.ok) r.report["relations"]["first_failure"] = rel.first_failure;
    r.passed = rel.ok;
    r.default_name = "rep-" + algebra_name(a) + "-" + std::to_string(fundamental) + ".json";
    r.summary = verdict(r.passed) + " build-rep " + algebra_name(a) + " fundamental " + std::to_string(fundamental) +
                ": dim " + std::to_string(rep.dim) + ", " + std::to_string(rel.checked) + " relations checked";
    return r;
}

RunResult cmd_check_identities(const std::optional<std::string>& algebra, int trials, uint64_t seed) {
    if (trials < 0) throw Error("UsageError", "--trials must be non-negative");
    std::vector<Algebra> algebras{Algebra::A2, Algebra::B2, Algebra::C2, Algebra::G2};
    if (algebra) algebras = {parse_algebra(*algebra)};
    const ResolvedConventions& rc = resolve_conventions();
    RunResult r;
    r.passed = true;
    nlohmann::json suites = nlohmann::json::array();
    int failures = 0;
    for (Algebra a : algebras) {
        bool ok = false;
        nlohmann::json s = run_identity_suite(a, trials, seed, rc.conv, ok);
        for (const auto& c : s["checks"]) failures += c["failures"].get<int>();
        r.passed = r.passed && ok;
        suites.push_back(std::move(s));
    }
    for (const auto& [name, sel] : rc.selections) r.passed = r.passed && !sel.selected.empty();
    r.report = {{"command", "check-identities"},
                {"trials", trials},
                {"seed", seed},
                {"suites", suites},
                {"conventions", rc.to_json()},
                {"failures", failures},
                {"passed", r.passed}};
    const std::string tag = algebra ? algebra_name(algebras.front()) : "all";
    r.default_name = "identities-" + tag + ".json";
    r.summary = verdict(r.passed) + " check-identities " + tag + ": " + std::to_string(trials) + " trials, " +
                std::to_string(failures) + " failures";
    return r;
}

RunResult cmd_solve(const RunConfig& rc) {
    const auto configs = configs_for(rc, 1);
    if (configs.size() != 1) throw Error("UsageError", "solve takes a single coefficient set");
    const SystemConfig& cfg = configs.front();
    RunResult r;
    r.passed = true;
    const std::string sys = system_name(cfg.system);
    if (rc.mode == Mode::Exact) {
        const ExactSolution sol = solve_exact(cfg);
        r.passed = derivative_identities_hold(sol);
        r.report = sol.to_json();
        r.report["derivative_identities"] = r.passed;
        r.summary = verdict(r.passed) + " solve " + sys + " exact: polynomial K in both fundamentals";
    } else {
        require_precision(rc.precision);
        set_precision(rc.precision);
        const unsigned steps = steps_for(rc.step);
        const Real dt = default_tolerance(cfg, rc.precision);
        const Real tol = rc.tolerance && Real(*rc.tolerance) > dt ? Real(*rc.tolerance) : dt;
        const NumericSolution sol = solve_numeric(cfg, steps, rc.precision, tol);
        // Samples on the quarter grid of the unit square (every node if coarser).
        std::vector<unsigned> axis;
        for (unsigned q = 0; q <= 4; ++q) {
            const unsigned i = unsigned((uint64_t(steps) * q) / 4);
            if (axis.empty() || axis.back() != i) axis.push_back(i);
        }
        std::vector<std::pair<unsigned, unsigned>> nodes;
        for (unsigned i : axis)
            for (unsigned k : axis) nodes.push_back({i, k});
        r.report = {{"mode", "numeric"},
                    {"system", sys},
                    {"coeffs", coefficients_to_json(cfg.coeffs)},
                    {"precision", rc.precision},
                    {"steps", steps},
                    {"step_check_tolerance", to_string(tol, 6)},
                    {"samples", numeric_samples_json(sol, nodes)}};
        r.summary = verdict(true) + " solve " + sys + " numeric: " + std::to_string(steps) + " steps at " +
                    std::to_string(rc.precision) + " digits";
    }
    r.report["config"] = config_to_json(cfg);
    r.report["command"] = "solve";
    r.report["seed"] = rc.seed;
    r.report["passed"] = r.passed;
    r.default_name = "solution-" + sys + "-" + mode_name(rc.mode) + ".json";
    return r;
}

RunResult cmd_verify(const RunConfig& rc) {
    const auto configs = configs_for(rc, 5);
    VerifyOptions opt;
    opt.mode = rc.mode;
    opt.points = rc.points;
    opt.seed = rc.seed;
    opt.precision = rc.precision;
    opt.step = rc.step;
    opt.tolerance = rc.tolerance;
    if (opt.points < 1) throw Error("UsageError", "--points must be positive");
    if (opt.mode == Mode::Numeric) {
        require_precision(opt.precision);
        steps_for(opt.step);
    }
    RunResult r;
    r.report = verify_system(configs, opt, r.passed);
    const std::string sys = system_name(configs.front().system);
    std::string worst = "0";
    for (const auto& e : r.report["equations"])
        if (e["name"] == "u_equation") worst = e["max_residual"].get<std::string>();
    r.default_name = "verify-" + sys + "-" + mode_name(rc.mode) + ".json";
    r.summary = verdict(r.passed) + " verify " + sys + " " + mode_name(rc.mode) + ": " +
                std::to_string(configs.size()) + " sets x " + std::to_string(rc.points) +
                " points, max u-equation residual " + worst;
    return r;
}

RunResult run_command(const RunConfig& rc) {
    if (rc.command == "build-rep") {
        if (!rc.algebra || !rc.fundamental) throw Error("UsageError", "build-rep needs --algebra and --fundamental");
        return cmd_build_rep(*rc.algebra, *rc.fundamental);
    }
    if (rc.command == "check-identities") return cmd_check_identities(rc.algebra, rc.trials, rc.seed);
    if (rc.command == "solve") return cmd_solve(rc);
    if (rc.command == "verify") return cmd_verify(rc);
    throw Error("UsageError", "unknown command '" + rc.command + "'");
}

std::vector<SystemConfig> parse_configs(const nlohmann::json& j, std::optional<SystemId> system) {
    std::vector<SystemConfig> out;
    try {
        if (j.is_array()) {
            for (const auto& c : j) out.push_back(parse_config(c, system));
        } else {
            out.push_back(parse_config(j, system));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("InvalidConfig", e.what());
    }
    if (out.empty()) throw Error("InvalidConfig", "no configuration given");
    for (const auto& c : out)
        if (c.system != out.front().system) throw Error("InvalidConfig", "configurations name different systems");
    return out;
}

std::vector<SystemConfig> load_configs(const std::filesystem::path& path, std::optional<SystemId> system) {
    std::ifstream in(path);
    if (!in) throw Error("IOError", "cannot read " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("InvalidConfig", path.string() + ": " + e.what());
    }
    return parse_configs(j, system);
}

std::string report_bytes(const nlohmann::json& report) { return report.dump(2) + "\n"; }

std::filesystem::path output_path(const RunConfig& rc, const std::string& default_name) {
    if (rc.out) return *rc.out == "-" ? std::filesystem::path() : std::filesystem::path(*rc.out);
    const char* dir = std::getenv(kOutDirEnv);
    return (dir && *dir ? std::filesystem::path(dir) : std::filesystem::path(".")) / default_name;
}

void write_report(const std::filesystem::path& path, const nlohmann::json& report) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw Error("IOError", "cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("IOError", "cannot write " + path.string());
    f << report_bytes(report);
    if (!f) throw Error("IOError", "write failed for " + path.string());
}

int execute(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    try {
        const RunResult r = run_command(rc);
        const auto path = output_path(rc, r.default_name);
        if (path.empty()) {
            out << report_bytes(r.report);
            err << r.summary << "\n";
        } else {
            write_report(path, r.report);
            out << r.summary << " -> " << path.string() << "\n";
        }
        return r.passed ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace rank2lab
