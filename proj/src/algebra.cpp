#include "rank2lab/algebra.hpp"

namespace rank2lab {

Algebra parse_algebra(const std::string& name) {
    if (name == "A2") return Algebra::A2;
    if (name == "B2") return Algebra::B2;
    if (name == "C2") return Algebra::C2;
    if (name == "G2") return Algebra::G2;
    throw Error("UnknownAlgebra", "'" + name + "' (expected A2, B2, C2 or G2)");
}

std::string algebra_name(Algebra a) {
    switch (a) {
        case Algebra::A2: return "A2";
        case Algebra::B2: return "B2";
        case Algebra::C2: return "C2";
        case Algebra::G2: return "G2";
    }
    return "?";
}

int algebra_p(Algebra a) {
    switch (a) {
        case Algebra::A2: return 1;
        case Algebra::B2:
        case Algebra::C2: return 2;
        case Algebra::G2: return 3;
    }
    return 0;
}

int internal_fundamental(Algebra a, int label) {
    if (label != 1 && label != 2) throw Error("InvalidFundamental", std::to_string(label));
    return a == Algebra::B2 ? 3 - label : label;
}

CartanMatrix cartan_matrix(Algebra a) {
    const int p = algebra_p(a);
    CartanMatrix cm;
    cm.k = {{{2, -1}, {-p, 2}}};
    const Q d(4 - p);
    cm.inv = {{{Q(2) / d, Q(1) / d}, {Q(p) / d, Q(2) / d}}};
    return cm;
}

GradingSpec grading_coeffs(const CartanMatrix& cm, std::array<int, 2> c) {
    for (int x : c)
        if (x != 0 && x != 1) throw Error("InvalidGrading", "grading entries must be 0 or 1");
    GradingSpec g;
    g.c = c;
    for (int i = 0; i < 2; ++i) g.coeffs[i] = cm.inv[i][0] * c[0] + cm.inv[i][1] * c[1];
    return g;
}

}  // namespace rank2lab
