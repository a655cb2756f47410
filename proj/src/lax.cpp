#include "rank2lab/lax.hpp"

#include <set>

namespace rank2lab {

SystemId parse_system(const std::string& s) {
    if (s == "A2-10") return SystemId::A2_10;
    if (s == "B2-10") return SystemId::B2_10;
    if (s == "B2-01") return SystemId::B2_01;
    if (s == "G2-01") return SystemId::G2_01;
    if (s == "G2-10") return SystemId::G2_10;
    throw Error("UnknownSystem", "'" + s + "' (expected A2-10, B2-10, B2-01, G2-01 or G2-10)");
}

std::string system_name(SystemId s) {
    switch (s) {
        case SystemId::A2_10: return "A2-10";
        case SystemId::B2_10: return "B2-10";
        case SystemId::B2_01: return "B2-01";
        case SystemId::G2_01: return "G2-01";
        case SystemId::G2_10: return "G2-10";
    }
    return "?";
}

Algebra system_algebra(SystemId s) {
    switch (s) {
        case SystemId::A2_10: return Algebra::A2;
        case SystemId::B2_10:
        case SystemId::B2_01: return Algebra::B2;
        default: return Algebra::G2;
    }
}

int system_p(SystemId s) { return algebra_p(system_algebra(s)); }

std::array<int, 2> system_grading(SystemId s) {
    return (s == SystemId::B2_01 || s == SystemId::G2_01) ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};
}

int system_u_fundamental(SystemId s) { return system_red_root(s); }

int system_red_root(SystemId s) { return system_grading(s)[0] == 1 ? 2 : 1; }

LieExpr LieExpr::gen(int sign, int index) {
    LieExpr e;
    e.sign = sign;
    e.index = index;
    return e;
}

LieExpr LieExpr::comm(LieExpr a, LieExpr b) {
    LieExpr e;
    e.kids = {std::move(a), std::move(b)};
    return e;
}

LieExpr LieExpr::conj() const {
    if (is_gen()) return gen(-sign, index);
    return comm(kids[1].conj(), kids[0].conj());
}

QMat LieExpr::eval(const Representation& rep) const {
    if (is_gen()) return sign > 0 ? rep.raise(index) : rep.lower(index);
    return commutator(kids[0].eval(rep), kids[1].eval(rep));
}

std::string LieExpr::str() const {
    if (is_gen()) return std::string("X") + (sign > 0 ? "+" : "-") + std::to_string(index);
    return "[" + kids[0].str() + "," + kids[1].str() + "]";
}

bool Poly::is_constant() const {
    for (size_t k = 1; k < c.size(); ++k)
        if (sgn(c[k]) != 0) return false;
    return true;
}

namespace {
LieExpr P(int i) { return LieExpr::gen(1, i); }
LieExpr C(LieExpr a, LieExpr b) { return LieExpr::comm(std::move(a), std::move(b)); }
}  // namespace

std::vector<LaxTerm> lax_plus(SystemId s) {
    switch (s) {
        case SystemId::A2_10:
            return {{"cb1", 1, P(1)}, {"cb2", 1, C(P(2), P(1))}};
        case SystemId::B2_10:
            return {{"cb1", 1, P(1)}, {"cb2", 1, C(P(2), P(1))}, {"cb^2", 1, C(C(P(2), P(1)), P(1))}};
        case SystemId::B2_01:
            return {{"db1", 1, P(2)}, {"db2", 1, C(P(1), P(2))}, {"db3", Q(1, 2), C(P(1), C(P(1), P(2)))}};
        case SystemId::G2_01: {
            const LieExpr e3 = C(P(1), C(P(1), C(P(1), P(2))));
            return {{"db1", 1, P(2)},
                    {"db2", 1, C(P(1), P(2))},
                    {"db3", Q(1, 2), C(P(1), C(P(1), P(2)))},
                    {"db4", Q(1, 6), e3},
                    {"db^2", Q(1, 3), C(P(2), e3)}};
        }
        case SystemId::G2_10: {
            const LieExpr e3 = C(P(1), C(P(1), C(P(1), P(2))));
            return {{"cb^1_1", 1, P(1)},
                    {"cb^1_2", 1, C(P(1), P(2))},
                    {"cb^2", 1, C(P(1), C(P(1), P(2)))},
                    {"cb^3_1", 1, e3},
                    {"cb^3_2", 1, C(P(2), e3)}};
        }
    }
    return {};
}

bool is_barred(const std::string& name) { return name.size() >= 2 && name[1] == 'b'; }

std::string conjugate_name(const std::string& name) {
    if (is_barred(name)) return name.substr(0, 1) + name.substr(2);
    return name.substr(0, 1) + "b" + name.substr(1);
}

std::vector<LaxTerm> hermitian_conjugate(const std::vector<LaxTerm>& terms) {
    std::vector<LaxTerm> out;
    for (const auto& t : terms) out.push_back({conjugate_name(t.coeff), t.factor, t.expr.conj()});
    return out;
}

std::vector<std::string> coefficient_names(SystemId s) {
    std::vector<std::string> names;
    for (const auto& t : lax_plus(s)) names.push_back(conjugate_name(t.coeff));
    for (const auto& t : lax_plus(s)) names.push_back(t.coeff);
    return names;
}

void validate_coefficients(SystemId s, const CoefficientSet& cs) {
    const auto names = coefficient_names(s);
    const std::set<std::string> known(names.begin(), names.end());
    for (const auto& [n, p] : cs)
        if (!known.count(n)) throw Error("UnknownCoefficient", "'" + n + "' is not a coefficient of " + system_name(s));
    for (const auto& n : names)
        if (!cs.count(n)) throw Error("UnknownCoefficient", "missing coefficient '" + n + "' for " + system_name(s));
}

CoefficientSet random_constant_coefficients(SystemId s, uint64_t seed, long magnitude) {
    Rng rng(seed);
    CoefficientSet cs;
    for (const auto& n : coefficient_names(s)) {
        Q v = rng.nonzero_rational(magnitude);
        if (s == SystemId::G2_10 && (n == "c^3_2" || n == "cb^3_2")) v = 0;
        cs[n] = Poly::constant(v);
    }
    return cs;
}

CoefficientSet zero_coefficients(SystemId s) {
    CoefficientSet cs;
    for (const auto& n : coefficient_names(s)) cs[n] = Poly::constant(0);
    return cs;
}

LaxData build_lax(SystemId s, const CoefficientSet& cs) {
    validate_coefficients(s, cs);
    std::map<std::string, Q> vals;
    for (const auto& [n, p] : cs) {
        if (!p.is_constant()) throw Error("NonConstantCoefficients", "'" + n + "' depends on its variable");
        vals[n] = p.value();
    }
    LaxData ld;
    ld.system = s;
    const auto plus = lax_plus(s);
    const auto minus = hermitian_conjugate(plus);
    for (int j = 1; j <= 2; ++j) {
        const Representation& rep = fundamental_internal(system_p(s), j);
        ld.plus[j - 1] = lax_matrix(plus, rep, vals);
        ld.minus[j - 1] = lax_matrix(minus, rep, vals);
    }
    return ld;
}

std::vector<int> term_grades(SystemId s, const Representation& rep) {
    const GradingSpec g = grading_coeffs(cartan_matrix(system_algebra(s)), system_grading(s));
    const QMat h = grading_matrix(rep, system_algebra(s), g);
    std::vector<int> out;
    for (const auto& t : lax_plus(s)) {
        const QMat m = t.expr.eval(rep);
        const QMat c = commutator(h, m);
        int grade = 0;
        bool found = false;
        for (int k = -6; k <= 6 && !found; ++k)
            if ((c - m * Q(k)).is_zero()) {
                grade = k;
                found = true;
            }
        if (!found || m.is_zero()) throw Error("GradeViolation", t.expr.str() + " is not homogeneous");
        out.push_back(grade);
    }
    return out;
}

namespace {
using BraSum = std::vector<std::pair<Q, Word>>;

std::vector<Q> bra_sum(const Representation& rep, const BraSum& s) {
    std::vector<Q> v(rep.dim);
    for (const auto& [c, w] : s) {
        const auto b = bra_vector(rep, w);
        for (size_t k = 0; k < rep.dim; ++k) v[k] += c * b[k];
    }
    return v;
}

std::vector<Q> bra_times(const Representation& rep, const Word& prefix, const QMat& m) {
    const auto b = bra_vector(rep, prefix);
    std::vector<Q> v(rep.dim);
    for (size_t i = 0; i < rep.dim; ++i)
        for (size_t k = 0; k < rep.dim; ++k) v[k] += b[i] * m(i, k);
    return v;
}

bool display_holds(const Representation& rep, const Word& prefix, const std::map<std::string, BraSum>& rhs) {
    for (const auto& t : lax_plus(SystemId::G2_10)) {
        const auto lhs = bra_times(rep, prefix, t.expr.eval(rep) * t.factor);
        const auto it = rhs.find(t.coeff);
        const auto r = it == rhs.end() ? std::vector<Q>(rep.dim) : bra_sum(rep, it->second);
        if (lhs != r) return false;
    }
    return true;
}
}  // namespace

BraDisplayCheck check_bra_displays() {
    const Representation& rep = fundamental(Algebra::G2, 2);
    BraDisplayCheck out;
    out.first_display = display_holds(rep, {},
                                      {{"cb^1_2", {{-1, {2, 1}}}},
                                       {"cb^2", {{1, {2, 1, 1}}}},
                                       {"cb^3_1", {{-1, {2, 1, 1, 1}}}},
                                       {"cb^3_2", {{2, {2, 1, 1, 1, 2}}, {-3, {2, 1, 1, 2, 1}}}}});
    const std::map<std::string, BraSum> base{{"cb^1_1", {{1, {2, 1}}}}, {"cb^2", {{1, {2, 1, 1, 2}}}}};
    auto closing = base;
    closing["cb^3_1"] = {{1, {2, 1, 1, 1, 2}}, {-3, {2, 1, 1, 2, 1}}};
    closing["cb^3_2"] = {{-1, {2, 1, 1, 1, 2, 2}}, {3, {2, 1, 1, 2, 1, 2}}};
    auto dropped = base;
    dropped["cb^3_1"] = {{1, {1, 1, 2}}, {-3, {1, 2, 1}}};
    dropped["cb^3_2"] = {{-1, {1, 1, 2, 2}}, {3, {1, 2, 1, 2}}};
    out.second_display[BraBracketing::ClosingAtEnd] = display_holds(rep, {2}, closing);
    out.second_display[BraBracketing::PrefixDropped] = display_holds(rep, {2}, dropped);
    return out;
}

Selection select_bracketing() {
    const auto chk = check_bra_displays();
    Selection s;
    s.name = "g2_10_bra_bracketing";
    int winners = 0;
    for (const auto& [b, ok] : chk.second_display) {
        s.candidates[to_string(b)] = ok;
        if (ok) {
            s.selected = to_string(b);
            ++winners;
        }
    }
    if (winners != 1) s.selected = "";
    return s;
}

}  // namespace rank2lab
