#include "doctest.h"

#include "rank2lab/group.hpp"

using namespace rank2lab;

namespace {
const Algebra kAlgebras[] = {Algebra::A2, Algebra::B2, Algebra::C2, Algebra::G2};
}

TEST_CASE("cartan matrices have the fixed off-diagonal pattern and an exact inverse") {
    for (Algebra a : kAlgebras) {
        const CartanMatrix cm = cartan_matrix(a);
        CHECK(cm(0, 0) == 2);
        CHECK(cm(1, 1) == 2);
        CHECK(cm(0, 1) == -1);
        CHECK(cm(1, 0) == -algebra_p(a));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Q left = 0, right = 0;
                for (int t = 0; t < 2; ++t) {
                    left += cm(i, t) * cm.inv[t][j];
                    right += cm.inv[i][t] * cm(t, j);
                }
                CHECK(left == Q(i == j ? 1 : 0));
                CHECK(right == Q(i == j ? 1 : 0));
            }
    }
}

TEST_CASE("grading coefficients solve K coeffs = c") {
    for (Algebra a : kAlgebras) {
        const CartanMatrix cm = cartan_matrix(a);
        for (int c1 = 0; c1 <= 1; ++c1)
            for (int c2 = 0; c2 <= 1; ++c2) {
                const GradingSpec g = grading_coeffs(cm, {c1, c2});
                for (int i = 0; i < 2; ++i) CHECK(cm(i, 0) * g.coeffs[0] + cm(i, 1) * g.coeffs[1] == Q(g.c[i]));
            }
    }
}

TEST_CASE("unknown algebra names are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_algebra("F4"), doctest::Contains("UnknownAlgebra"), Error);
}

TEST_CASE("fundamental representations satisfy every defining relation") {
    for (Algebra a : kAlgebras)
        for (int j = 1; j <= 2; ++j) {
            const auto r = verify_relations(fundamental(a, j));
            INFO(algebra_name(a), " ", j, " ", r.first_failure);
            CHECK(r.ok);
            CHECK(r.checked > 0);
        }
}

TEST_CASE("B2 and C2 share matrices with swapped labels") {
    CHECK(fundamental(Algebra::B2, 1).dim == fundamental(Algebra::C2, 2).dim);
    CHECK(fundamental(Algebra::B2, 2).dim == fundamental(Algebra::C2, 1).dim);
    CHECK(fundamental(Algebra::B2, 1).Xp[0] == fundamental(Algebra::C2, 2).Xp[0]);
}

TEST_CASE("highest vector is killed by raising and has weight dual to its label") {
    for (Algebra a : kAlgebras)
        for (int j = 1; j <= 2; ++j) {
            const Representation& rep = fundamental(a, j);
            const int internal = internal_fundamental(a, j);
            for (int i = 1; i <= 2; ++i) {
                for (size_t r = 0; r < rep.dim; ++r) CHECK(sgn(rep.raise(i)(r, 0)) == 0);
                CHECK(rep.h[i - 1](0, 0) == Q(i == internal ? 1 : 0));
            }
        }
}

TEST_CASE("grading operator gives simple root i the grade c_i") {
    for (Algebra a : kAlgebras)
        for (int c1 = 0; c1 <= 1; ++c1)
            for (int c2 = 0; c2 <= 1; ++c2) {
                const GradingSpec g = grading_coeffs(cartan_matrix(a), {c1, c2});
                for (int j = 1; j <= 2; ++j) {
                    const Representation& rep = fundamental(a, j);
                    const QMat h = grading_matrix(rep, a, g);
                    for (int i = 1; i <= 2; ++i) {
                        const Q grade = g.c[i - 1];
                        CHECK(commutator(h, rep.raise(i)) == rep.raise(i) * grade);
                        CHECK(commutator(h, rep.lower(i)) == rep.lower(i) * Q(-grade));
                    }
                }
            }
}

TEST_CASE("representation JSON round trip is bit-identical") {
    for (Algebra a : kAlgebras)
        for (int j = 1; j <= 2; ++j) {
            const auto js = rep_to_json(fundamental(a, j));
            const Representation back = rep_from_json(js);
            CHECK(rep_to_json(back).dump() == js.dump());
            CHECK(back.Xm[1] == fundamental(a, j).Xm[1]);
        }
}

TEST_CASE("nilpotent exponential is a one-parameter group") {
    Rng rng(5);
    for (Algebra a : kAlgebras) {
        const Representation& rep = fundamental(a, 2);
        for (int t = 0; t < 10; ++t) {
            const Q s = rng.rational(6), u = rng.rational(6);
            const QMat x = rep.lower(1) + rep.lower(2) * rng.rational(3);
            CHECK(exp_nilpotent(QMat(x * s)) * exp_nilpotent(QMat(x * u)) == exp_nilpotent(QMat(x * Q(s + u))));
        }
    }
}

TEST_CASE("torus elements multiply parameterwise") {
    Rng rng(9);
    const Representation& rep = fundamental(Algebra::G2, 2);
    for (int t = 0; t < 10; ++t) {
        const Q a = rng.nonzero_rational(5), b = rng.nonzero_rational(5);
        const Q c = rng.nonzero_rational(5), d = rng.nonzero_rational(5);
        CHECK(torus_element(rep, a, b) * torus_element(rep, c, d) == torus_element(rep, Q(a * c), Q(b * d)));
    }
    CHECK_THROWS_AS(torus_element(rep, 0, 1), Error);
}

TEST_CASE("matrix elements at the identity pair basis words") {
    for (Algebra a : kAlgebras) {
        const Representation& rep = fundamental(a, 1);
        const QMat id = QMat::identity(rep.dim);
        CHECK(matrix_element(rep, id, Word{}, Word{}) == 1);
        // <j|X+_i X-_i|j> = <j|h_i|j>
        for (int i = 1; i <= 2; ++i) CHECK(matrix_element(rep, id, Word{i}, Word{i}) == rep.h[i - 1](0, 0));
    }
}

TEST_CASE("regular action multiplies on the requested side") {
    const Representation& rep = fundamental(Algebra::A2, 1);
    const GroupPair g = gauss_factor_random(1, 3);
    CHECK(act_regular(g[1], rep.lower(1), Side::Left) == rep.lower(1) * g[1]);
    CHECK(act_regular(g[1], rep.lower(1), Side::Right) == g[1] * rep.lower(1));
}
