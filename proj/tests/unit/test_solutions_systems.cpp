#include "doctest.h"

#include "rank2lab/systems.hpp"

using namespace rank2lab;

namespace {
const SystemId kSystems[] = {SystemId::A2_10, SystemId::B2_10, SystemId::B2_01, SystemId::G2_01, SystemId::G2_10};

SystemConfig config_of(SystemId s, CoefficientSet cs) {
    SystemConfig c;
    c.system = s;
    c.coeffs = std::move(cs);
    return c;
}

size_t basis_index(const Representation& rep, const Word& w) {
    for (size_t k = 0; k < rep.dim; ++k)
        if (rep.basis[k].word == w) return k;
    FAIL("word not in basis");
    return 0;
}

// Character of the torus element on the term expr: T X T^-1 = chi X.
Q character(const QMat& t, const QMat& tinv, const QMat& x) {
    const QMat y = t * x * tinv;
    for (size_t i = 0; i < x.rows(); ++i)
        for (size_t j = 0; j < x.cols(); ++j)
            if (sgn(x(i, j)) != 0) return y(i, j) / x(i, j);
    return 0;
}
}  // namespace

TEST_CASE("zero coefficients give the identity solution") {
    for (SystemId s : kSystems) {
        const SystemConfig cfg = config_of(s, zero_coefficients(s));
        const ExactSolution sol = solve_exact(cfg);
        for (int j = 1; j <= 2; ++j) {
            const size_t n = fundamental_internal(system_p(s), j).dim;
            CHECK(sol.k(j, ratio(1, 3), ratio(2, 5)) == QMat::identity(n));
        }
        const NumericSolution num = solve_numeric(cfg, 4, 40);
        CHECK(max_abs(Mat<Real>(num.k(2, 3, 1) - Mat<Real>::identity(num.k(2, 3, 1).rows()))) == 0);
    }
}

TEST_CASE("A2 single-root solution has <1|K|1> = 1 + xy") {
    CoefficientSet cs = zero_coefficients(SystemId::A2_10);
    cs["c1"] = cs["cb1"] = Poly::constant(1);
    const ExactSolution sol = solve_exact(config_of(SystemId::A2_10, cs));
    const Representation& rep = fundamental_internal(1, 1);
    Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        const Q x = rng.rational(7), y = rng.rational(7);
        CHECK(matrix_element(rep, sol.k(1, x, y), Word{}, Word{}) == Q(1 + x * y));
    }
}

TEST_CASE("K is the identity at the origin and satisfies its defining equations") {
    for (SystemId s : kSystems)
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            const ExactSolution sol = solve_exact(random_configs(s, 1, seed).front());
            CHECK(derivative_identities_hold(sol));
            for (int j = 1; j <= 2; ++j) CHECK(sol.k(j, 0, 0) == QMat::identity(sol.k(j, 0, 0).rows()));
        }
}

TEST_CASE("log f has the insertion-determinant mixed derivative") {
    for (SystemId s : kSystems) {
        const ExactSolution sol = solve_exact(random_configs(s, 1, 4).front());
        const auto g = system_grading(s);
        for (int i = 1; i <= 2; ++i) {
            if (!g[i - 1]) continue;
            CHECK(sgn(mixed_derivative_residual(sol, i, ratio(1, 3), ratio(3, 7))) == 0);
            CHECK(sgn(mixed_derivative_residual(sol, i, ratio(5, 4), ratio(-2, 9))) == 0);
        }
    }
}

TEST_CASE("exact solver rejects inputs outside its regime") {
    SystemConfig cfg = random_configs(SystemId::B2_01, 1, 1).front();
    cfg.azero["h1"] = Poly::constant(1);
    CHECK_THROWS_WITH_AS(solve_exact(cfg), doctest::Contains("NonzeroGradeZero"), Error);
    cfg.azero.clear();
    cfg.coeffs["d1"] = Poly({Q(0), Q(1)});
    CHECK_THROWS_WITH_AS(solve_exact(cfg), doctest::Contains("NonConstantCoefficients"), Error);
}

TEST_CASE("constant torus gauge acts covariantly on K, u and the residuals") {
    const Conventions& conv = resolve_conventions().conv;
    for (SystemId s : {SystemId::A2_10, SystemId::B2_10, SystemId::G2_01}) {
        const SystemConfig cfg = random_configs(s, 1, 21).front();
        const Q t1 = ratio(3, 2), t2 = ratio(-2, 5);
        // Scale each coupling by the torus character of its generator word.
        SystemConfig moved = cfg;
        const Representation& rep1 = fundamental_internal(system_p(s), 1);
        const QMat t = torus_element(rep1, t1, t2), tinv = torus_element(rep1, Q(1 / t1), Q(1 / t2));
        for (const auto& term : lax_plus(s)) {
            const Q chi = character(t, tinv, term.expr.eval(rep1));
            REQUIRE(sgn(chi) != 0);
            moved.coeffs[term.coeff] = Poly::constant(cfg.coeffs.at(term.coeff).value() * chi);
            moved.coeffs[conjugate_name(term.coeff)] =
                Poly::constant(cfg.coeffs.at(conjugate_name(term.coeff)).value() / chi);
        }
        const ExactSolution a = solve_exact(cfg), b = solve_exact(moved);
        const Q x = ratio(2, 7), y = ratio(3, 11);
        for (int j = 1; j <= 2; ++j) {
            const Representation& rep = fundamental_internal(system_p(s), j);
            const QMat tj = torus_element(rep, t1, t2), tjinv = torus_element(rep, Q(1 / t1), Q(1 / t2));
            CHECK(b.k(j, x, y) == tj * a.k(j, x, y) * tjinv);
        }
        // u transforms by the diagonal gauge restricted to the u-basis.
        const int r = system_red_root(s);
        const Representation& urep = fundamental_internal(system_p(s), r);
        const QMat tu = torus_element(urep, t1, t2);
        QMat g(2, 2), gb(2, 2);
        const Word w[2] = {{}, {r}};
        for (int k = 0; k < 2; ++k) {
            const size_t idx = basis_index(urep, w[k]);
            gb(k, k) = tu(idx, idx);
            g(k, k) = 1 / tu(idx, idx);
        }
        const auto ua = extract_u(a.point(x, y), s), ub = extract_u(b.point(x, y), s);
        QMat ma(2, 2), mb(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                ma(i, k) = ua[i][k].value();
                mb(i, k) = ub[i][k].value();
            }
        CHECK(gauge_transform(ma, gb, g) == mb);
        for (const auto& [name, v] : system_residuals(b.point(x, y), s, conv)) CHECK(sgn(v) == 0);
    }
}

TEST_CASE("numeric solution matches the exact one for constant coefficients") {
    set_precision(50);
    for (SystemId s : kSystems) {
        const SystemConfig cfg = random_configs(s, 1, 8).front();
        const ExactSolution ex = solve_exact(cfg);
        const NumericSolution nu = solve_numeric(cfg, 8, 50);
        for (unsigned i = 0; i <= 8; i += 2)
            CHECK(cross_mode_difference(nu, ex, i, 8 - i) < Real("1e-45"));
    }
}

TEST_CASE("Picard reference agrees with the terminating exponential") {
    for (SystemId s : kSystems) {
        const SystemConfig cfg = random_configs(s, 1, 12).front();
        const PolynomialSolution ref = solve_polynomial(cfg);
        const ExactSolution ex = solve_exact(cfg);
        for (int j = 1; j <= 2; ++j) CHECK(ref.k(j, ratio(1, 2), ratio(2, 3)) == ex.k(j, ratio(1, 2), ratio(2, 3)));
    }
}

TEST_CASE("integrator error falls by about 16 per halving for polynomial coefficients") {
    SystemConfig cfg;
    cfg.system = SystemId::B2_10;
    int k = 0;
    for (const auto& n : coefficient_names(cfg.system)) {
        cfg.coeffs[n] = Poly({ratio(1 + k % 3, 2), ratio(k % 2 ? 1 : -1, 1), ratio(1, 3)});
        ++k;
    }
    const PolynomialSolution ref = solve_polynomial(cfg);
    const Real e1 = global_error(solve_numeric(cfg, 16, 40), ref);
    const Real e2 = global_error(solve_numeric(cfg, 32, 40), ref);
    const double ratio_ = Real(e1 / e2).convert_to<double>();
    CHECK(ratio_ > 12);
    CHECK(ratio_ < 20);
}

TEST_CASE("step check rejects an integration that has not converged") {
    SystemConfig cfg;
    cfg.system = SystemId::B2_10;
    for (const auto& n : coefficient_names(cfg.system)) cfg.coeffs[n] = Poly({Q(3), Q(5), Q(7), Q(4)});
    CHECK_THROWS_WITH_AS(solve_numeric(cfg, 2, 40, Real("1e-30")), doctest::Contains("StepTooLarge"), Error);
}

TEST_CASE("grade-zero source enters the log-derivative of f") {
    // With A0 = a h1 on A2-10: f_x / f = a + <1|K L-|1> / f, where the left
    // side comes from a fourth-order central difference on the grid.
    set_precision(40);
    SystemConfig cfg = random_configs(SystemId::A2_10, 1, 5).front();
    const Q a = ratio(2, 3);
    cfg.azero["h1"] = Poly::constant(a);
    const unsigned n = 256;
    const NumericSolution sol = solve_numeric(cfg, n, 40);
    const Representation& rep = fundamental_internal(1, 1);
    const unsigned i = 128, kk = 96;
    auto f = [&](unsigned ii) { return matrix_element(rep, sol.k(1, ii, kk), Word{}, Word{}); };
    const Real h = Real(1) / n;
    const Real fx = (f(i - 2) - 8 * f(i - 1) + 8 * f(i + 1) - f(i + 2)) / (12 * h);
    const Mat<Real> gen = generators(cfg, 1, sol.node(i), sol.node(kk)).first;
    const Mat<Real> lminus = gen - convert<Real>(rep.h[0]) * to_real(a);
    const Real insertion = matrix_element(rep, Mat<Real>(sol.k(1, i, kk) * lminus), Word{}, Word{});
    const Real lhs = fx / f(i);
    const Real rhs = to_real(a) * to_real(rep.h[0](0, 0)) + insertion / f(i);
    CHECK(boost::multiprecision::abs(lhs - rhs) < Real("1e-8"));
}

TEST_CASE("configuration JSON round trip") {
    SystemConfig c = random_configs(SystemId::G2_01, 1, 3).front();
    c.coeffs["d1"] = Poly({ratio(1, 2), ratio(-3, 4)});
    c.azero["h2"] = Poly::constant(ratio(5, 6));
    c.bzero["Xp1"] = Poly({Q(0), Q(1)});
    const auto j = config_to_json(c);
    CHECK(config_to_json(parse_config(j)).dump() == j.dump());
}

TEST_CASE("configuration errors are named") {
    nlohmann::json j = config_to_json(random_configs(SystemId::A2_10, 1, 1).front());
    j["extra"] = 1;
    CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("InvalidConfig"), Error);
    j.erase("extra");
    j["Azero"] = {{"h7", 1}};
    CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("InvalidGradeZero"), Error);
    j.erase("Azero");
    CHECK_THROWS_WITH_AS(parse_config(j, SystemId::B2_10), doctest::Contains("InvalidConfig"), Error);
    j["system"] = "E8-10";
    CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("UnknownSystem"), Error);
}

TEST_CASE("G2-10 verification requires the gauge") {
    SystemConfig c = random_configs(SystemId::G2_10, 1, 1).front();
    c.coeffs["c^3_2"] = Poly::constant(1);
    CHECK_THROWS_WITH_AS(require_gauge(c), doctest::Contains("GaugeCondition"), Error);
}

TEST_CASE("every variant selection has exactly one winner") {
    const ResolvedConventions& rc = resolve_conventions();
    CHECK(rc.selections.size() == 7);
    for (const auto& [name, sel] : rc.selections) {
        int winners = 0;
        for (const auto& [c, ok] : sel.candidates) winners += ok;
        INFO(name);
        CHECK(winners == 1);
        CHECK(!sel.selected.empty());
    }
}

TEST_CASE("exact residuals vanish and a rejected reading does not") {
    const Conventions& conv = resolve_conventions().conv;
    for (SystemId s : kSystems) {
        const ExactSolution sol = solve_exact(random_configs(s, 1, 31).front());
        int regular = 0;
        for (long d = 3; d < 40 && regular < 3; ++d) {
            Residuals<Q> res;
            try {
                res = system_residuals(sol.point(ratio(1, d), ratio(1, d + 2)), s, conv);
            } catch (const Error& e) {
                CHECK((e.kind == "SingularU" || e.kind == "NegativeDeterminant"));
                continue;
            }
            ++regular;
            for (const auto& [name, v] : res) {
                INFO(system_name(s), " ", name);
                CHECK(sgn(v) == 0);
            }
        }
        CHECK(regular == 3);
    }
    Conventions wrong = conv;
    wrong.corner = CornerEntry::Repeated;
    const ExactSolution sol = solve_exact(random_configs(SystemId::A2_10, 1, 31).front());
    Q worst = 0;
    for (const auto& [name, v] : system_residuals(sol.point(ratio(1, 5), ratio(1, 7)), SystemId::A2_10, wrong))
        worst = std::max(worst, v);
    CHECK(sgn(worst) != 0);
}

TEST_CASE("residuals notice coefficients that do not match the solution") {
    const Conventions& conv = resolve_conventions().conv;
    for (SystemId s : kSystems) {
        const ExactSolution sol = solve_exact(random_configs(s, 1, 41).front());
        PointData<Q> pd = sol.point(ratio(1, 4), ratio(1, 3));
        for (auto& [n, v] : pd.coeffs) v += 1;
        Q worst = 0;
        for (const auto& [name, v] : system_residuals(pd, s, conv)) worst = std::max(worst, v);
        INFO(system_name(s));
        CHECK(sgn(worst) != 0);
    }
}

TEST_CASE("verification is deterministic in the seed") {
    VerifyOptions opt;
    opt.points = 5;
    opt.seed = 3;
    bool p1 = false, p2 = false;
    const auto r1 = verify_system(random_configs(SystemId::G2_10, 2, 3), opt, p1);
    const auto r2 = verify_system(random_configs(SystemId::G2_10, 2, 3), opt, p2);
    CHECK(p1);
    CHECK(r1.dump() == r2.dump());
    opt.seed = 4;
    bool p3 = false;
    CHECK(verify_system(random_configs(SystemId::G2_10, 2, 3), opt, p3).dump() != r1.dump());
}

TEST_CASE("numeric verification passes with constant and polynomial coefficients") {
    VerifyOptions opt;
    opt.mode = Mode::Numeric;
    opt.points = 5;
    opt.precision = 40;
    opt.step = 1.0 / 64;
    bool passed = false;
    auto rep = verify_system(random_configs(SystemId::B2_01, 1, 2), opt, passed);
    CHECK(passed);
    SystemConfig cfg;
    cfg.system = SystemId::B2_10;
    for (const auto& n : coefficient_names(cfg.system)) cfg.coeffs[n] = Poly({Q(1), ratio(1, 2)});
    opt.step = 1e-3;
    rep = verify_system({cfg}, opt, passed);
    CHECK(passed);
    CHECK(rep["tolerance"] == "1.00000e-08");
}
