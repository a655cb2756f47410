#pragma once
// Graded operators L+ and L- for each (algebra, grading) system.

#include "rank2lab/conventions.hpp"
#include "rank2lab/group.hpp"

#include <map>
#include <string>
#include <vector>

namespace rank2lab {

enum class SystemId { A2_10, B2_10, B2_01, G2_01, G2_10 };

SystemId parse_system(const std::string& s);
std::string system_name(SystemId s);
Algebra system_algebra(SystemId s);
int system_p(SystemId s);
std::array<int, 2> system_grading(SystemId s);
// u is read over {|j>, X-_r|j>} with j the internal label below and r the red root.
int system_u_fundamental(SystemId s);
int system_red_root(SystemId s);

// Nested commutator of simple-root generators.
struct LieExpr {
    int sign = 0;  // +1 raising, -1 lowering (leaves only)
    int index = 0;
    std::vector<LieExpr> kids;  // empty for a generator, two for [a, b]

    static LieExpr gen(int sign, int index);
    static LieExpr comm(LieExpr a, LieExpr b);
    bool is_gen() const { return kids.empty(); }
    // Transpose: X+_i <-> X-_i, [a, b] -> [b^T, a^T].
    LieExpr conj() const;
    QMat eval(const Representation& rep) const;
    std::string str() const;
    friend bool operator==(const LieExpr& a, const LieExpr& b) {
        return a.sign == b.sign && a.index == b.index && a.kids == b.kids;
    }
};

// Polynomial with rational coefficients, c[0] + c[1] t + ...
struct Poly {
    std::vector<Q> c;
    Poly() = default;
    explicit Poly(std::vector<Q> cs) : c(std::move(cs)) {}
    static Poly constant(const Q& v) { return Poly({v}); }
    bool is_constant() const;
    Q value() const { return c.empty() ? Q(0) : c[0]; }
    template <class T> T eval(const T& t) const {
        T r = from_q<T>(Q(0));
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + from_q<T>(*it);
        return r;
    }
};

using CoefficientSet = std::map<std::string, Poly>;

struct LaxTerm {
    std::string coeff;
    Q factor;
    LieExpr expr;
};

// The printed expression of L+ and its conjugate L-.
std::vector<LaxTerm> lax_plus(SystemId s);
std::vector<LaxTerm> hermitian_conjugate(const std::vector<LaxTerm>& terms);
std::string conjugate_name(const std::string& name);
std::vector<std::string> coefficient_names(SystemId s);
// True for names of the L+ side (functions of y).
bool is_barred(const std::string& name);

// Checks names against the system; throws UnknownCoefficient.
void validate_coefficients(SystemId s, const CoefficientSet& cs);
CoefficientSet random_constant_coefficients(SystemId s, uint64_t seed, long magnitude = 5);
CoefficientSet zero_coefficients(SystemId s);

// sum factor * coeff * matrix(expr) with coefficient values supplied.
template <class T>
Mat<T> lax_matrix(const std::vector<LaxTerm>& terms, const Representation& rep, const std::map<std::string, T>& vals) {
    Mat<T> m(rep.dim, rep.dim);
    for (const auto& t : terms) {
        const T v = vals.at(t.coeff) * from_q<T>(t.factor);
        if (is_zero(v)) continue;
        m += convert<T>(t.expr.eval(rep)) * v;
    }
    return m;
}

// Coefficient values at evolution parameter t (y for barred, x for plain).
template <class T>
std::map<std::string, T> coefficient_values(const CoefficientSet& cs, const T& x, const T& y) {
    std::map<std::string, T> out;
    for (const auto& [n, p] : cs) out[n] = p.eval(is_barred(n) ? y : x);
    return out;
}

struct LaxData {
    SystemId system;
    std::array<QMat, 2> plus, minus;  // by internal fundamental, constant coefficients
};

LaxData build_lax(SystemId s, const CoefficientSet& cs);

// Grades (H-eigenvalues) of every term of L+ in the given representation;
// throws GradeViolation if a term is not homogeneous.
std::vector<int> term_grades(SystemId s, const Representation& rep);

// u -> gb u g.
template <class T> Mat<T> gauge_transform(const Mat<T>& u, const Mat<T>& gb, const Mat<T>& g) {
    if (is_zero(det(gb)) || is_zero(det(g))) throw Error("SingularGauge", "gauge matrix is not invertible");
    return gb * u * g;
}

// Bra-display check for the G2 (1,0) operator in the 14-dim representation.
struct BraDisplayCheck {
    bool first_display = false;
    std::map<BraBracketing, bool> second_display;
};
BraDisplayCheck check_bra_displays();
Selection select_bracketing();

}  // namespace rank2lab
