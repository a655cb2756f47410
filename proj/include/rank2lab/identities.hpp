#pragma once
// Exact checks of the determinant identities and differentiation rules on
// random Gauss-factored group elements.

#include "rank2lab/fields.hpp"

#include <cstdint>

namespace rank2lab {

// det[[<X+_j G X-_j>, <X+_j G>], [<G X-_j>, <G>]] - prod_{i != j} f_i^{-K_ji}
Q first_jacobi_residual(const GroupPair& g, int j);

// ab21 + p ab12 - p ab1 ab2 (barred) or a12 + p a21 - p a1 a2 (plain), times f1 f2.
Q second_jacobi_residual(const GroupPair& g, bool plain);

// Leading principal minors of <bra_a|G|ket_b> over the ordered basis.
struct MinorData {
    size_t order = 0;
    Q constant;                 // value at G = identity
    std::array<int, 2> cartan;  // exponents of f1, f2
};
std::vector<MinorData> minor_data(int p, int j);
// Residual per order: Min_s * prod f^{l-} - C_s * prod f^{l+}
std::vector<Q> generalized_jacobi_residuals(const GroupPair& g, int j);

// Three-term minors with externally known constants.
struct NamedMinor {
    std::string name;
    int p = 1;
    int fund = 1;  // internal label
    std::vector<Word> kets;
    Q constant;
    std::array<int, 2> cartan{};
};
std::vector<NamedMinor> named_minors(int p);
Q named_minor_value(const GroupPair& g, const NamedMinor& m);
Q named_minor_residual(const GroupPair& g, const NamedMinor& m);

struct AlphaTheta {
    std::array<Q, 2> theta;
    std::map<std::string, Q> alpha;   // plain, keyed by word string
    std::map<std::string, Q> alphab;  // barred
};
AlphaTheta compute_alpha_theta(const GroupPair& g, const std::vector<Word>& words, const Conventions& conv);

// Number of violated rules (out of 16) for the given theta2 reading.
int differentiation_rule_failures(const GroupPair& g, Theta2Form form, std::string* first = nullptr);

// Three-term determinant over the fundamental-1 bases of length 0, 1, 5
// and its decomposition into second-order data of <1|K|1>^2 plus <1|K|1>.
Q det3_value(const GroupPair& g);
Q det3_decomposition(const GroupPair& g);
Q det3_residual(const GroupPair& g);

// Left-action table on the G2-01 line vector q (printed sign of the multiplet).
std::vector<Q> q_table_residuals(const GroupPair& g, const std::array<Q, 5>& d, const Conventions& conv);

// Kernel of X+_1 on span{X-_2X-_1X-_1 v, X-_1X-_2X-_1 v} in the (2,0) module.
struct LoweringRelation {
    Q a, b;  // coefficients of X-_2X-_1 and X-_1X-_2
    bool relation_3a_2b = false;
    bool relation_2a_3b = false;
};
LoweringRelation lowering_relation();

// Picks the theta2 reading by running the differentiation rules.
Selection select_theta2(uint64_t seed);

// Full suite for one algebra. Returns the report; all_pass is set accordingly.
nlohmann::json run_identity_suite(Algebra a, int trials, uint64_t seed, const Conventions& conv, bool& all_pass);

}  // namespace rank2lab
