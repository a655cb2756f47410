#pragma once
// Cartan data and gradings of the rank-2 algebras A2, B2/C2, G2.

#include "rank2lab/matrix.hpp"

#include <array>
#include <string>

namespace rank2lab {

enum class Algebra { A2, B2, C2, G2 };

Algebra parse_algebra(const std::string& name);
std::string algebra_name(Algebra a);
// Off-diagonal Cartan parameter: 1 for A2, 2 for B2 and C2, 3 for G2.
int algebra_p(Algebra a);

// B2 and C2 share one Cartan matrix; their fundamental labels are swapped.
// Internally fundamental 1 is the 4-dim one and fundamental 2 the 5-dim one.
int internal_fundamental(Algebra a, int label);

struct CartanMatrix {
    std::array<std::array<int, 2>, 2> k{};
    std::array<std::array<Q, 2>, 2> inv{};
    int operator()(int i, int j) const { return k[i][j]; }  // 0-based
};

CartanMatrix cartan_matrix(Algebra a);

struct GradingSpec {
    std::array<int, 2> c{};
    std::array<Q, 2> coeffs{};
};

// Grading coefficients K^{-1} c; the grading operator is sum coeffs_i h_i.
GradingSpec grading_coeffs(const CartanMatrix& cm, std::array<int, 2> c);

}  // namespace rank2lab
