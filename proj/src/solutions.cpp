#include "rank2lab/solutions.hpp"

#include <set>

namespace rank2lab {

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::Exact;
    if (s == "numeric") return Mode::Numeric;
    throw Error("UnknownMode", "'" + s + "' (expected exact or numeric)");
}

std::string mode_name(Mode m) { return m == Mode::Exact ? "exact" : "numeric"; }

bool SystemConfig::constant() const {
    for (const auto& [n, p] : coeffs)
        if (!p.is_constant()) return false;
    for (const auto* gz : {&azero, &bzero})
        for (const auto& [n, p] : *gz)
            if (!p.is_constant()) return false;
    return true;
}

bool SystemConfig::grade_zero_free() const {
    for (const auto* gz : {&azero, &bzero})
        for (const auto& [n, p] : *gz)
            for (const Q& c : p.c)
                if (sgn(c) != 0) return false;
    return true;
}

namespace {

Q parse_scalar(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Q(v.dump());
    if (v.is_number_float()) return parse_rational(v.dump());
    throw Error("InvalidConfig", "expected a rational, got " + v.dump());
}

Poly parse_poly(const nlohmann::json& v) {
    if (!v.is_array()) return Poly::constant(parse_scalar(v));
    std::vector<Q> cs;
    for (const auto& e : v) cs.push_back(parse_scalar(e));
    if (cs.empty()) cs.push_back(0);
    return Poly(cs);
}

nlohmann::json poly_to_json(const Poly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const Q& c : p.c) a.push_back(to_string(c));
    return a;
}

GradeZero parse_grade_zero(const nlohmann::json& j, SystemId s) {
    const std::string r = std::to_string(system_red_root(s));
    const std::set<std::string> allowed{"h1", "h2", "Xp" + r, "Xm" + r};
    GradeZero gz;
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k))
            throw Error("InvalidGradeZero", "'" + k + "' is not in the grade-zero subalgebra of " + system_name(s) +
                                                " (allowed: h1, h2, Xp" + r + ", Xm" + r + ")");
        gz[k] = parse_poly(v);
    }
    return gz;
}

}  // namespace

SystemConfig parse_config(const nlohmann::json& j, std::optional<SystemId> system) {
    if (!j.is_object()) throw Error("InvalidConfig", "configuration must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (k != "system" && k != "coeffs" && k != "Azero" && k != "Bzero")
            throw Error("InvalidConfig", "unknown key '" + k + "'");
    SystemConfig c;
    if (j.contains("system")) {
        c.system = parse_system(j["system"].get<std::string>());
        if (system && *system != c.system)
            throw Error("InvalidConfig", "file is for " + system_name(c.system) + ", requested " + system_name(*system));
    } else if (system) {
        c.system = *system;
    } else {
        throw Error("InvalidConfig", "no system given");
    }
    if (!j.contains("coeffs")) throw Error("InvalidConfig", "missing 'coeffs'");
    for (const auto& [k, v] : j["coeffs"].items()) c.coeffs[k] = parse_poly(v);
    validate_coefficients(c.system, c.coeffs);
    if (j.contains("Azero")) c.azero = parse_grade_zero(j["Azero"], c.system);
    if (j.contains("Bzero")) c.bzero = parse_grade_zero(j["Bzero"], c.system);
    return c;
}

nlohmann::json coefficients_to_json(const CoefficientSet& cs) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [n, p] : cs) o[n] = poly_to_json(p);
    return o;
}

nlohmann::json config_to_json(const SystemConfig& c) {
    nlohmann::json j{{"system", system_name(c.system)}, {"coeffs", coefficients_to_json(c.coeffs)}};
    if (!c.azero.empty()) j["Azero"] = coefficients_to_json(c.azero);
    if (!c.bzero.empty()) j["Bzero"] = coefficients_to_json(c.bzero);
    return j;
}

void require_gauge(const SystemConfig& c) {
    if (c.system != SystemId::G2_10) return;
    for (const char* n : {"c^3_2", "cb^3_2"})
        for (const Q& v : c.coeffs.at(n).c)
            if (sgn(v) != 0)
                throw Error("GaugeCondition", std::string(n) + " must vanish; gauge it away before verification");
}

namespace {
std::vector<QMat> scaled_powers(const QMat& l) {
    std::vector<QMat> out{QMat::identity(l.rows())};
    for (size_t k = 1; k <= l.rows() + 1; ++k) {
        QMat next = out.back() * l * Q(1, k);
        if (next.is_zero()) return out;
        out.push_back(std::move(next));
    }
    throw Error("NotNilpotent", "L is not nilpotent in this representation");
}
}  // namespace

ExactSolution solve_exact(const SystemConfig& cfg) {
    if (!cfg.grade_zero_free()) throw Error("NonzeroGradeZero", "exact mode needs A0 = B0 = 0");
    if (!cfg.constant()) throw Error("NonConstantCoefficients", "exact mode needs constant coefficients");
    ExactSolution s;
    s.cfg = cfg;
    const LaxData ld = build_lax(cfg.system, cfg.coeffs);
    for (int j = 0; j < 2; ++j) {
        s.lplus[j] = ld.plus[j];
        s.lminus[j] = ld.minus[j];
        s.mplus[j] = scaled_powers(ld.plus[j]);
        s.mminus[j] = scaled_powers(ld.minus[j]);
    }
    return s;
}

QMat ExactSolution::k(int j, const Q& x, const Q& y) const {
    return horner<Q>(mplus[j - 1], y) * horner<Q>(mminus[j - 1], x);
}

QMat ExactSolution::term(int j, size_t a, size_t b) const {
    const auto& p = mplus[j - 1];
    const auto& m = mminus[j - 1];
    if (a >= p.size() || b >= m.size()) return QMat(p[0].rows(), p[0].cols());
    return p[a] * m[b];
}

PointData<Q> ExactSolution::point(const Q& x, const Q& y) const { return point_as<Q>(x, y); }

nlohmann::json ExactSolution::to_json() const {
    nlohmann::json reps = nlohmann::json::array();
    for (int j = 1; j <= 2; ++j) {
        nlohmann::json terms = nlohmann::json::array();
        for (size_t a = 0; a < mplus[j - 1].size(); ++a)
            for (size_t b = 0; b < mminus[j - 1].size(); ++b) {
                const QMat t = term(j, a, b);
                if (t.is_zero()) continue;
                nlohmann::json rows = nlohmann::json::array();
                for (size_t r = 0; r < t.rows(); ++r) {
                    nlohmann::json row = nlohmann::json::array();
                    for (size_t c = 0; c < t.cols(); ++c) row.push_back(to_string(t(r, c)));
                    rows.push_back(row);
                }
                terms.push_back({{"x_power", b}, {"y_power", a}, {"matrix", rows}});
            }
        const Representation& rep = fundamental_internal(system_p(cfg.system), j);
        reps.push_back({{"internal_fundamental", j}, {"dim", rep.dim}, {"terms", terms}});
    }
    return {{"mode", "exact"},
            {"system", system_name(cfg.system)},
            {"coeffs", coefficients_to_json(cfg.coeffs)},
            {"K", reps}};
}

bool derivative_identities_hold(const ExactSolution& s) {
    for (int j = 1; j <= 2; ++j) {
        const size_t na = s.mplus[j - 1].size() + 1, nb = s.mminus[j - 1].size() + 1;
        for (size_t a = 0; a < na; ++a)
            for (size_t b = 0; b < nb; ++b) {
                // coefficient of y^a x^b in K_x and in K L-
                if (s.term(j, a, b + 1) * Q(b + 1) != s.term(j, a, b) * s.lminus[j - 1]) return false;
                if (s.term(j, a + 1, b) * Q(a + 1) != s.lplus[j - 1] * s.term(j, a, b)) return false;
            }
    }
    return true;
}

Q mixed_derivative_residual(const ExactSolution& s, int i, const Q& x, const Q& y) {
    const Representation& rep = fundamental_internal(system_p(s.cfg.system), i);
    Q f = 0, fx = 0, fy = 0, fxy = 0;
    for (size_t a = 0; a < s.mplus[i - 1].size(); ++a)
        for (size_t b = 0; b < s.mminus[i - 1].size(); ++b) {
            const Q c = s.term(i, a, b)(0, 0);
            if (sgn(c) == 0) continue;
            f += c * pow_int(y, int(a)) * pow_int(x, int(b));
            if (b > 0) fx += c * Q(b) * pow_int(y, int(a)) * pow_int(x, int(b) - 1);
            if (a > 0) fy += c * Q(a) * pow_int(y, int(a) - 1) * pow_int(x, int(b));
            if (a > 0 && b > 0) fxy += c * Q(a * b) * pow_int(y, int(a) - 1) * pow_int(x, int(b) - 1);
        }
    const QMat k = s.k(i, x, y);
    const QMat& lp = s.lplus[i - 1];
    const QMat& lm = s.lminus[i - 1];
    const Q ins_xy = matrix_element(rep, QMat(lp * k * lm), {}, {});
    const Q ins_y = matrix_element(rep, QMat(lp * k), {}, {});
    const Q ins_x = matrix_element(rep, QMat(k * lm), {}, {});
    const Q ins = matrix_element(rep, k, {}, {});
    return (f * fxy - fx * fy) - (ins_xy * ins - ins_y * ins_x);
}

namespace {

struct Run {
    std::array<std::vector<Mat<Real>>, 2> mplus, mminus;
};

Run integrate(const SystemConfig& cfg, unsigned steps) {
    const Real h = Real(1) / Real(steps);
    const Real half = h / 2;
    const bool constant = cfg.constant();
    Run run;
    for (int j = 1; j <= 2; ++j) {
        auto gen = [&](const Real& t) { return generators<Real>(cfg, j, t, t); };
        const auto g0 = gen(Real(0));
        const size_t n = g0.first.rows();
        Mat<Real> mm = Mat<Real>::identity(n), mp = mm;
        auto& outm = run.mminus[j - 1];
        auto& outp = run.mplus[j - 1];
        outm.reserve(steps + 1);
        outp.reserve(steps + 1);
        outm.push_back(mm);
        outp.push_back(mp);
        for (unsigned s = 0; s < steps; ++s) {
            const Real t = Real(s) * h;
            const auto ga = constant ? g0 : gen(t);
            const auto gb = constant ? g0 : gen(t + half);
            const auto gc = constant ? g0 : gen(t + h);
            // M-' = M- A(x)
            {
                const Mat<Real> k1 = mm * ga.first;
                const Mat<Real> k2 = (mm + k1 * half) * gb.first;
                const Mat<Real> k3 = (mm + k2 * half) * gb.first;
                const Mat<Real> k4 = (mm + k3 * h) * gc.first;
                mm += (k1 + k2 * Real(2) + k3 * Real(2) + k4) * (h / 6);
            }
            // M+' = B(y) M+
            {
                const Mat<Real> k1 = ga.second * mp;
                const Mat<Real> k2 = gb.second * (mp + k1 * half);
                const Mat<Real> k3 = gb.second * (mp + k2 * half);
                const Mat<Real> k4 = gc.second * (mp + k3 * h);
                mp += (k1 + k2 * Real(2) + k3 * Real(2) + k4) * (h / 6);
            }
            outm.push_back(mm);
            outp.push_back(mp);
        }
    }
    return run;
}

}  // namespace

NumericSolution solve_numeric(const SystemConfig& cfg, unsigned steps, unsigned digits, std::optional<Real> check_tol) {
    if (steps == 0) throw Error("InvalidStep", "step must be positive and at most 1");
    validate_coefficients(cfg.system, cfg.coeffs);
    set_precision(digits);
    NumericSolution s;
    s.cfg = cfg;
    s.steps = steps;
    s.digits = digits;
    Run coarse = integrate(cfg, steps);
    if (check_tol) {
        const Run fine = integrate(cfg, steps * 2);
        Real worst = 0;
        for (int j = 0; j < 2; ++j)
            for (unsigned i = 0; i <= steps; ++i) {
                const Real dm = max_abs(Mat<Real>(coarse.mminus[j][i] - fine.mminus[j][2 * i]));
                const Real dp = max_abs(Mat<Real>(coarse.mplus[j][i] - fine.mplus[j][2 * i]));
                if (dm > worst) worst = dm;
                if (dp > worst) worst = dp;
            }
        if (worst > *check_tol)
            throw Error("StepTooLarge", "halving the step changes M by " + to_string(worst, 6) + " > tolerance " +
                                            to_string(*check_tol, 6));
    }
    s.mplus = std::move(coarse.mplus);
    s.mminus = std::move(coarse.mminus);
    return s;
}

Mat<Real> NumericSolution::k(int j, unsigned i, unsigned kk) const { return mplus[j - 1][kk] * mminus[j - 1][i]; }

PointData<Real> NumericSolution::point(unsigned i, unsigned kk) const {
    std::array<Mat<Real>, 2> ks{k(1, i, kk), k(2, i, kk)};
    return make_point(cfg, ks, node(i), node(kk));
}

Real cross_mode_difference(const NumericSolution& n, const ExactSolution& e, unsigned i, unsigned kk) {
    Real worst = 0;
    for (int j = 1; j <= 2; ++j) {
        const QMat ek = e.k(j, ratio(long(i), long(n.steps)), ratio(long(kk), long(n.steps)));
        const Real d = max_abs(Mat<Real>(n.k(j, i, kk) - convert<Real>(ek)));
        if (d > worst) worst = d;
    }
    return worst;
}

namespace {

using PolyMat = std::vector<QMat>;

PolyMat poly_mul(const PolyMat& a, const PolyMat& b) {
    PolyMat r(a.size() + b.size() - 1, QMat(a[0].rows(), b[0].cols()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
    return r;
}

// 1 + int_0^t P(s) ds
PolyMat one_plus_integral(const PolyMat& p) {
    PolyMat r(p.size() + 1, QMat(p[0].rows(), p[0].cols()));
    r[0] = QMat::identity(p[0].rows());
    for (size_t k = 0; k < p.size(); ++k) r[k + 1] = p[k] * ratio(1, long(k + 1));
    while (r.size() > 1 && r.back().is_zero()) r.pop_back();
    return r;
}

PolyMat lax_poly(const std::vector<LaxTerm>& terms, const CoefficientSet& cs, const Representation& rep) {
    PolyMat m(1, QMat(rep.dim, rep.dim));
    for (const auto& t : terms) {
        const Poly& p = cs.at(t.coeff);
        if (m.size() < p.c.size()) m.resize(p.c.size(), QMat(rep.dim, rep.dim));
        const QMat g = t.expr.eval(rep) * t.factor;
        for (size_t k = 0; k < p.c.size(); ++k)
            if (sgn(p.c[k]) != 0) m[k] += g * p.c[k];
    }
    return m;
}

PolyMat picard(const PolyMat& gen, bool left) {
    const size_t n = gen[0].rows();
    PolyMat m{QMat::identity(n)};
    for (size_t it = 0; it <= n + 1; ++it) {
        PolyMat next = one_plus_integral(left ? poly_mul(gen, m) : poly_mul(m, gen));
        if (next == m) return m;
        m = std::move(next);
    }
    throw Error("NotNilpotent", "Picard iteration did not terminate");
}

QMat poly_at(const PolyMat& p, const Q& t) {
    QMat r(p[0].rows(), p[0].cols());
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
    return r;
}

}  // namespace

PolynomialSolution solve_polynomial(const SystemConfig& cfg) {
    if (!cfg.grade_zero_free()) throw Error("NonzeroGradeZero", "the polynomial reference needs A0 = B0 = 0");
    validate_coefficients(cfg.system, cfg.coeffs);
    PolynomialSolution s;
    s.cfg = cfg;
    const auto plus = lax_plus(cfg.system);
    const auto minus = hermitian_conjugate(plus);
    for (int j = 1; j <= 2; ++j) {
        const Representation& rep = fundamental_internal(system_p(cfg.system), j);
        s.mplus[j - 1] = picard(lax_poly(plus, cfg.coeffs, rep), true);
        s.mminus[j - 1] = picard(lax_poly(minus, cfg.coeffs, rep), false);
    }
    return s;
}

QMat PolynomialSolution::mplus_at(int j, const Q& y) const { return poly_at(mplus[j - 1], y); }
QMat PolynomialSolution::mminus_at(int j, const Q& x) const { return poly_at(mminus[j - 1], x); }

Real global_error(const NumericSolution& n, const PolynomialSolution& ref) {
    Real worst = 0;
    for (int j = 1; j <= 2; ++j)
        for (unsigned i = 0; i <= n.steps; ++i) {
            const Q t = ratio(long(i), long(n.steps));
            const Real dm = max_abs(Mat<Real>(n.mminus[j - 1][i] - convert<Real>(ref.mminus_at(j, t))));
            const Real dp = max_abs(Mat<Real>(n.mplus[j - 1][i] - convert<Real>(ref.mplus_at(j, t))));
            if (dm > worst) worst = dm;
            if (dp > worst) worst = dp;
        }
    return worst;
}

nlohmann::json numeric_samples_json(const NumericSolution& n, const std::vector<std::pair<unsigned, unsigned>>& nodes) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [i, kk] : nodes) {
        nlohmann::json ks = nlohmann::json::object();
        for (int j = 1; j <= 2; ++j) {
            const Mat<Real> m = n.k(j, i, kk);
            nlohmann::json rows = nlohmann::json::array();
            for (size_t r = 0; r < m.rows(); ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c), n.digits));
                rows.push_back(row);
            }
            ks[std::to_string(j)] = rows;
        }
        Q x(i, n.steps), y(kk, n.steps);
        x.canonicalize();
        y.canonicalize();
        samples.push_back({{"x", to_string(x)}, {"y", to_string(y)}, {"K", ks}});
    }
    return samples;
}

}  // namespace rank2lab
