#include "doctest.h"

#include "rank2lab/identities.hpp"
#include "rank2lab/lax.hpp"

using namespace rank2lab;

namespace {
const SystemId kSystems[] = {SystemId::A2_10, SystemId::B2_10, SystemId::B2_01, SystemId::G2_01, SystemId::G2_10};

int count_letter(const LieExpr& e, int letter) {
    if (e.is_gen()) return e.index == letter ? 1 : 0;
    return count_letter(e.kids[0], letter) + count_letter(e.kids[1], letter);
}
}  // namespace

TEST_CASE("determinant identities vanish on random group elements") {
    for (int p : {1, 2, 3})
        for (uint64_t seed = 1; seed <= 15; ++seed) {
            const GroupPair g = gauss_factor_random(p, seed);
            for (int j = 1; j <= 2; ++j) {
                CHECK(sgn(first_jacobi_residual(g, j)) == 0);
                for (const Q& r : generalized_jacobi_residuals(g, j)) CHECK(sgn(r) == 0);
            }
            CHECK(sgn(second_jacobi_residual(g, true)) == 0);
            CHECK(sgn(second_jacobi_residual(g, false)) == 0);
            for (const auto& m : named_minors(p)) CHECK(sgn(named_minor_residual(g, m)) == 0);
        }
}

TEST_CASE("identities detect a perturbed element") {
    // Breaking the group structure in one fundamental only must be noticed.
    GroupPair g = gauss_factor_random(2, 4);
    g.g[0](0, 0) += 1;
    bool any = false;
    for (int j = 1; j <= 2; ++j) any = any || sgn(first_jacobi_residual(g, j)) != 0;
    CHECK(any);
}

TEST_CASE("three-term minors take their constants at the identity") {
    for (int p : {1, 2, 3}) {
        const GroupPair id = identity_pair(p);
        for (const auto& m : named_minors(p)) CHECK(named_minor_value(id, m) == m.constant);
    }
}

TEST_CASE("theta2 reading is settled by a unique candidate") {
    const Selection s = select_theta2(3);
    int winners = 0;
    for (const auto& [c, ok] : s.candidates) winners += ok;
    CHECK(winners == 1);
    CHECK(s.selected == to_string(Theta2Form::CrossIndex));
    // The other reading fails on a generic element.
    const GroupPair g = gauss_factor_random(2, 17);
    CHECK(differentiation_rule_failures(g, Theta2Form::CrossIndex) == 0);
    CHECK(differentiation_rule_failures(g, Theta2Form::SameIndex) > 0);
}

TEST_CASE("G2 lowering kernel satisfies exactly one linear relation") {
    const auto lr = lowering_relation();
    CHECK(lr.relation_2a_3b != lr.relation_3a_2b);
}

TEST_CASE("identity suite with zero trials passes vacuously with a warning") {
    bool ok = false;
    const auto rep = run_identity_suite(Algebra::A2, 0, 1, Conventions{}, ok);
    CHECK(ok);
    CHECK(rep.contains("warnings"));
}

TEST_CASE("conjugating twice returns the original operator") {
    for (SystemId s : kSystems) {
        const auto plus = lax_plus(s);
        const auto back = hermitian_conjugate(hermitian_conjugate(plus));
        REQUIRE(back.size() == plus.size());
        for (size_t k = 0; k < plus.size(); ++k) {
            CHECK(back[k].coeff == plus[k].coeff);
            CHECK(back[k].expr == plus[k].expr);
            CHECK(back[k].factor == plus[k].factor);
        }
    }
}

TEST_CASE("conjugate terms carry the opposite grade") {
    for (SystemId s : kSystems) {
        const Algebra a = system_algebra(s);
        const GradingSpec g = grading_coeffs(cartan_matrix(a), system_grading(s));
        for (int j = 1; j <= 2; ++j) {
            const Representation& rep = fundamental_internal(system_p(s), j);
            const QMat h = grading_matrix(rep, a, g);
            const auto grades = term_grades(s, rep);
            const auto plus = lax_plus(s);
            for (size_t k = 0; k < plus.size(); ++k) {
                const QMat down = plus[k].expr.conj().eval(rep);
                CHECK(!down.is_zero());
                CHECK(commutator(h, down) == down * Q(-grades[k]));
            }
        }
    }
}

TEST_CASE("every term of L+ is homogeneous of the grade counted by its black letters") {
    for (SystemId s : kSystems) {
        const auto grading = system_grading(s);
        for (int j = 1; j <= 2; ++j) {
            const auto grades = term_grades(s, fundamental_internal(system_p(s), j));
            const auto plus = lax_plus(s);
            REQUIRE(grades.size() == plus.size());
            for (size_t k = 0; k < plus.size(); ++k) {
                const int expected = grading[0] * count_letter(plus[k].expr, 1) + grading[1] * count_letter(plus[k].expr, 2);
                CHECK(grades[k] == expected);
                CHECK(grades[k] >= 1);
            }
        }
    }
}

TEST_CASE("coefficient validation names the offending coefficient") {
    CoefficientSet cs = zero_coefficients(SystemId::B2_10);
    CHECK_NOTHROW(validate_coefficients(SystemId::B2_10, cs));
    cs["c9"] = Poly::constant(1);
    CHECK_THROWS_WITH_AS(validate_coefficients(SystemId::B2_10, cs), doctest::Contains("UnknownCoefficient"), Error);
    cs = zero_coefficients(SystemId::B2_10);
    cs.erase("cb1");
    CHECK_THROWS_WITH_AS(validate_coefficients(SystemId::B2_10, cs), doctest::Contains("cb1"), Error);
}

TEST_CASE("plain and barred coefficient names pair up") {
    for (SystemId s : kSystems) {
        const auto names = coefficient_names(s);
        REQUIRE(names.size() % 2 == 0);
        const size_t half = names.size() / 2;
        for (size_t k = 0; k < half; ++k) {
            CHECK(!is_barred(names[k]));
            CHECK(is_barred(names[half + k]));
            CHECK(conjugate_name(names[k]) == names[half + k]);
        }
    }
}

TEST_CASE("build_lax needs constant coefficients and yields nilpotent operators") {
    CoefficientSet cs = random_constant_coefficients(SystemId::G2_01, 2);
    const LaxData ld = build_lax(SystemId::G2_01, cs);
    for (int j = 0; j < 2; ++j) {
        CHECK_NOTHROW(exp_nilpotent(ld.plus[j]));
        CHECK_NOTHROW(exp_nilpotent(ld.minus[j]));
    }
    cs["db1"] = Poly({Q(1), Q(2)});
    CHECK_THROWS_WITH_AS(build_lax(SystemId::G2_01, cs), doctest::Contains("NonConstantCoefficients"), Error);
}

TEST_CASE("random G2-10 coefficients respect the gauge") {
    for (uint64_t seed = 1; seed < 6; ++seed) {
        const auto cs = random_constant_coefficients(SystemId::G2_10, seed);
        CHECK(sgn(cs.at("c^3_2").value()) == 0);
        CHECK(sgn(cs.at("cb^3_2").value()) == 0);
    }
}

TEST_CASE("singular gauges are rejected") {
    const QMat u = QMat::identity(2);
    QMat sing(2, 2);
    sing(0, 0) = 1;
    CHECK_THROWS_WITH_AS(gauge_transform(u, sing, u), doctest::Contains("SingularGauge"), Error);
}

TEST_CASE("bra displays single out one bracketing") {
    const auto chk = check_bra_displays();
    CHECK(chk.first_display);
    int winners = 0;
    for (const auto& [b, ok] : chk.second_display) winners += ok;
    CHECK(winners == 1);
}
