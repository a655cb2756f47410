// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "rank2lab/harness.hpp"
#include "rank2lab/identities.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rank2lab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double v, int prec = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << v;
    return os.str();
}

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Decimal exponent of a positive real (log10), or -inf for zero.
double log10_of(const Real& r) {
    if (r == 0) return -std::numeric_limits<double>::infinity();
    return boost::multiprecision::log10(r).convert_to<double>();
}

const std::vector<SystemId> kAllSystems{SystemId::A2_10, SystemId::B2_10, SystemId::B2_01, SystemId::G2_01,
                                        SystemId::G2_10};
const std::vector<Algebra> kAlgebras{Algebra::A2, Algebra::B2, Algebra::C2, Algebra::G2};

void dimensions(Outcome& o) {
    const auto t0 = Clock::now();
    struct Want {
        Algebra a;
        int j;
        size_t dim;
    };
    const Want wants[] = {{Algebra::A2, 1, 3}, {Algebra::A2, 2, 3}, {Algebra::B2, 1, 5}, {Algebra::B2, 2, 4},
                          {Algebra::C2, 1, 4}, {Algebra::C2, 2, 5}, {Algebra::G2, 1, 7}, {Algebra::G2, 2, 14}};
    for (const auto& w : wants) {
        const size_t d = build_fundamental(w.a, w.j).dim;
        o.detail << " " << algebra_name(w.a) << "/" << w.j << "=" << d;
        o.require(d == w.dim, algebra_name(w.a) + " fundamental " + std::to_string(w.j));
    }
    const double s = seconds_since(t0);
    o.detail << " (" << fixed(s) << " s)";
    o.require(s < 5, "runtime");
}

void relations(Outcome& o) {
    int checked = 0;
    for (Algebra a : kAlgebras)
        for (int j = 1; j <= 2; ++j) {
            const auto r = verify_relations(fundamental(a, j));
            checked += r.checked;
            o.require(r.ok, algebra_name(a) + "/" + std::to_string(j) + ": " + r.first_failure);
        }
    o.detail << " " << checked << " relations over 8 representations";
}

// One identity suite per algebra, shared by criteria 3 to 5.
std::map<Algebra, nlohmann::json> suites;

int failures_of(const nlohmann::json& suite, const std::string& identity) {
    for (const auto& c : suite["checks"])
        if (c["identity"] == identity) return c["failures"].get<int>();
    return -1;
}

void jacobi(Outcome& o) {
    const auto t0 = Clock::now();
    const Conventions& conv = resolve_conventions().conv;
    for (Algebra a : kAlgebras) {
        bool ok = false;
        suites[a] = run_identity_suite(a, 100, 20240601, conv, ok);
        const auto& s = suites[a];
        for (const char* id : {"first_jacobi", "second_jacobi", "generalized_jacobi", "three_term_minors"})
            o.require(failures_of(s, id) == 0, algebra_name(a) + " " + id);
        for (const auto& c : s["three_term_constants"]) o.require(c["constant_matches"].get<bool>(), c["minor"]);
    }
    for (int p : {1, 2, 3})
        for (const auto& m : named_minors(p)) o.detail << " {" << m.name << "}";
    const double s = seconds_since(t0);
    o.detail << " 100 trials per algebra, residuals 0 (" << fixed(s) << " s)";
    o.require(s < 120, "runtime");
}

void differentiation_rules(Outcome& o) {
    for (Algebra a : kAlgebras) o.require(failures_of(suites[a], "differentiation_rules") == 0, algebra_name(a));
    const Selection sel = select_theta2(20240601);
    int winners = 0;
    for (const auto& [c, ok] : sel.candidates) winners += ok;
    o.require(winners == 1 && !sel.selected.empty(), "theta2 variant not unique");
    o.detail << " 100 trials per algebra; theta2 = " << sel.selected << " (" << winners << " of "
             << sel.candidates.size() << " candidates pass)";
}

void g2_det3_and_q_table(Outcome& o) {
    const auto t0 = Clock::now();
    const auto& s = suites[Algebra::G2];
    o.require(s["trials"].get<int>() >= 20, "trial count");
    o.require(failures_of(s, "det3_decomposition") == 0, "det3 decomposition");
    o.require(failures_of(s, "q_action_table") == 0, "q action table");
    const auto lr = lowering_relation();
    o.detail << " " << s["trials"] << " G2 elements; det3 decomposition and q table residuals 0; det3 at identity "
             << s["det3_at_identity"].get<std::string>() << "; lowering kernel a=" << to_string(lr.a)
             << " b=" << to_string(lr.b);
    o.detail << " (" << fixed(seconds_since(t0)) << " s)";
}

void exact_systems(Outcome& o) {
    const auto t0 = Clock::now();
    for (SystemId sid : {SystemId::A2_10, SystemId::B2_10, SystemId::B2_01, SystemId::G2_01}) {
        VerifyOptions opt;
        opt.points = 20;
        opt.seed = 7;
        bool passed = false;
        const auto rep = verify_system(random_configs(sid, 5, opt.seed), opt, passed);
        o.require(passed, system_name(sid));
        size_t eqs = 0;
        for (const auto& e : rep["equations"]) {
            o.require(e["max_residual"] == "0", system_name(sid) + " " + e["name"].get<std::string>());
            ++eqs;
        }
        o.detail << " " << system_name(sid) << ": " << eqs << " checks";
    }
    const double s = seconds_since(t0);
    o.detail << "; 5 sets x 20 points each, all residuals 0 (" << fixed(s) << " s)";
    o.require(s < 600, "runtime");
}

void g2_10_precision(Outcome& o) {
    double digits[2] = {0, 0};
    const unsigned precs[2] = {60, 120};
    const double bounds[2] = {-30, -60};
    for (int k = 0; k < 2; ++k) {
        VerifyOptions opt;
        opt.mode = Mode::Numeric;
        opt.precision = precs[k];
        opt.step = 1.0 / 16;  // RK4 is exact for nilpotent constant generators
        opt.points = 20;
        opt.seed = 11;
        opt.tolerance = "1e" + std::to_string(int(bounds[k]));
        bool passed = false;
        const auto rep = verify_system(random_configs(SystemId::G2_10, 5, opt.seed), opt, passed);
        o.require(passed, std::to_string(precs[k]) + " digits");
        Real worst = 0;
        for (const auto& e : rep["equations"]) worst = std::max(worst, Real(e["max_residual"].get<std::string>()));
        digits[k] = -log10_of(worst);
        o.detail << " " << precs[k] << " digits: max residual " << to_string(worst, 3);
    }
    o.require(digits[1] >= 2 * digits[0], "doubling precision did not double the zero digits");
}

void numeric_cross_check(Outcome& o) {
    const unsigned prec = 60;
    set_precision(prec);
    const Real bound = boost::multiprecision::pow(Real(10), -int(prec) + 5);
    Real worst = 0;
    for (SystemId sid : kAllSystems) {
        const SystemConfig cfg = random_configs(sid, 1, 3).front();
        const ExactSolution ex = solve_exact(cfg);
        const NumericSolution nu = solve_numeric(cfg, 16, prec);
        for (unsigned i = 0; i <= 16; i += 4)
            for (unsigned k = 0; k <= 16; k += 4) worst = std::max(worst, cross_mode_difference(nu, ex, i, k));
    }
    o.require(worst < bound, "constant-coefficient agreement");
    o.detail << " constant coefficients: max |K_numeric - K_exact| " << to_string(worst, 3) << " < 1e-" << prec - 5
             << ";";

    // Polynomial coefficients: global error of M± against the exact Picard
    // solution under step halving.
    SystemConfig cfg;
    cfg.system = SystemId::B2_10;
    int k = 0;
    for (const auto& n : coefficient_names(cfg.system)) {
        cfg.coeffs[n] = Poly({ratio(1 + k % 3, 2), ratio(k % 2 ? 1 : -1, 1), ratio(1, 3)});
        ++k;
    }
    const PolynomialSolution ref = solve_polynomial(cfg);
    const Conventions& conv = resolve_conventions().conv;
    Real prev_err = 0, prev_res = 0;
    o.detail << " B2-10 polynomial coefficients, error ratios per halving:";
    std::ostringstream res_ratios;
    for (unsigned n : {4u, 8u, 16u, 32u, 64u}) {
        const NumericSolution sol = solve_numeric(cfg, n, 50);
        const Real err = global_error(sol, ref);
        Real res = 0;
        for (auto [a, b] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}})
            for (const auto& [name, v] : system_residuals(sol.point(n * a / 2, n * b / 2), cfg.system, conv))
                res = std::max(res, v);
        if (prev_err > 0) {
            const double ratio = Real(prev_err / err).convert_to<double>();
            o.require(ratio >= 12 && ratio <= 20, "halving ratio " + fixed(ratio));
            o.detail << " " << fixed(ratio);
            res_ratios << " " << fixed(Real(prev_res / res).convert_to<double>(), 1);
        }
        prev_err = err;
        prev_res = res;
    }
    o.detail << " (system residual ratios" << res_ratios.str() << ")";
}

void b2_reduction(Outcome& o) {
    const Conventions& conv = resolve_conventions().conv;
    int points = 0;
    for (const SystemConfig& base : random_configs(SystemId::B2_10, 5, 13)) {
        SystemConfig cfg = base;
        cfg.coeffs["c^2"] = Poly::constant(0);
        cfg.coeffs["cb^2"] = Poly::constant(0);
        const ExactSolution sol = solve_exact(cfg);
        Rng rng(points + 1);
        for (int t = 0; t < 20; ++t) {
            const Q x = ratio(rng.uniform(1, 9), 10), y = ratio(rng.uniform(1, 9), 10);
            PointData<Q> pd;
            try {
                pd = sol.point(x, y);
                for (const auto& [name, r] : system_residuals(pd, cfg.system, conv))
                    o.require(sgn(r) == 0, name + " nonzero");
            } catch (const Error& e) {
                if (e.kind != "SingularU") throw;
                continue;
            }
            const auto p = b2_10_pfields(pd);
            // p1, p2 depend on x only; pb1, pb2 on y only, and all are constants.
            for (int i = 0; i < 2; ++i) {
                o.require(sgn(p[i][2]) == 0 && sgn(p[i][1]) == 0, "p field not constant");
                o.require(sgn(p[2 + i][1]) == 0 && sgn(p[2 + i][2]) == 0, "pb field not constant");
            }
            o.require(p[0].value() == pd.coeffs.at("c2") && p[1].value() == pd.coeffs.at("c1"), "p values");
            o.require(p[2].value() == pd.coeffs.at("cb2") && p[3].value() == pd.coeffs.at("cb1"), "pb values");
            ++points;
        }
    }
    o.require(points >= 50, "too few regular points");
    o.detail << " c^2 = cb^2 = 0: " << points << " points, (p_i)_y = (pb_i)_x = 0 exactly, p fields equal the constant"
             << " couplings, u-equation residual 0";
}

void selections(Outcome& o) {
    const ResolvedConventions& rc = resolve_conventions();
    for (const auto& [name, sel] : rc.selections) {
        int winners = 0;
        for (const auto& [c, ok] : sel.candidates) winners += ok;
        o.require(winners == 1 && !sel.selected.empty(), name);
        o.detail << " " << name << "=" << sel.selected << ";";
    }
    for (const char* n : {"theta2_denominator", "alpha_word_order", "a2_10_corner_entry", "b2_10_rank1_orientation",
                          "g2_01_multiplet_sign", "g2_10_quadratic_term", "g2_10_bra_bracketing"})
        o.require(rc.selections.count(n) == 1, std::string("missing ") + n);
    // Every report carries the selections.
    RunConfig run;
    run.system = "A2-10";
    run.points = 2;
    run.sets = 1;
    const nlohmann::json expected = rc.to_json();
    o.require(cmd_verify(run).report["conventions"] == expected, "verify report");
    o.require(cmd_check_identities(std::string("A2"), 1, 1).report["conventions"] == expected, "identities report");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"representation dimensions", dimensions},
        {"commutation relations", relations},
        {"Jacobi identity suite", jacobi},
        {"differentiation rules and theta2 reading", differentiation_rules},
        {"G2 three-term determinant and q action", g2_det3_and_q_table},
        {"exact-mode verification of four systems", exact_systems},
        {"G2-10 high-precision verification", g2_10_precision},
        {"numeric mode cross-check", numeric_cross_check},
        {"B2-10 reduction", b2_reduction},
        {"variant selections", selections},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "):" << o.detail.str() << std::endl;
        failed += !o.ok;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size()
              << std::endl;
    return failed ? 1 : 0;
}
