#include "rank2lab/systems.hpp"

#include <functional>
#include <type_traits>
#include <mutex>

namespace rank2lab {

namespace {

template <class T> T k_(long n, long d = 1) { return from_q<T>(ratio(n, d)); }

template <class T> using M2 = Mat<T>;

template <class T> M2<T> component(const UMat<T>& u, size_t mask) {
    M2<T> m(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) m(a, b) = u[a][b][mask];
    return m;
}

template <class T> M2<T> adjugate(const M2<T>& m) {
    M2<T> r(2, 2);
    r(0, 0) = m(1, 1);
    r(0, 1) = -m(0, 1);
    r(1, 0) = -m(1, 0);
    r(1, 1) = m(0, 0);
    return r;
}

// u, det u, and det(u) * u (u^-1 u_x)_y = det u_xy - u_y adj(u) u_x.
template <class T> struct UData {
    M2<T> u;
    T det;
    M2<T> detw;
};

template <class T> UData<T> u_data(const PointData<T>& pd, SystemId s) {
    const UMat<T> uj = extract_u(pd, s);
    UData<T> d;
    d.u = component(uj, 0);
    d.det = d.u(0, 0) * d.u(1, 1) - d.u(0, 1) * d.u(1, 0);
    if (is_zero(d.det)) throw Error("SingularU", "det u vanishes at the sample point");
    d.detw = component(uj, 3) * d.det - component(uj, 2) * adjugate(d.u) * component(uj, 1);
    return d;
}

template <class T>
M2<T> m2(const T& a, const std::type_identity_t<T>& b, const std::type_identity_t<T>& c,
       const std::type_identity_t<T>& d) {
    M2<T> m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

template <class T> void push_matrix(Residuals<T>& out, const std::string& name, const M2<T>& m) {
    T worst = from_q<T>(Q(0));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const T v = scalar_traits<T>::abs(m(a, b));
            if (v > worst) worst = v;
        }
    out.push_back({name, worst});
}

template <class T> void push_scalar(Residuals<T>& out, const std::string& name, const std::type_identity_t<T>& v) {
    out.push_back({name, scalar_traits<T>::abs(v)});
}

template <class T> T cv(const PointData<T>& pd, const char* n) { return pd.coeffs.at(n); }

constexpr size_t DX = 1, DY = 2;

template <class T> Residuals<T> a2_10(const PointData<T>& pd, const Conventions& conv) {
    const auto d = u_data(pd, SystemId::A2_10);
    const T c1 = cv(pd, "c1"), c2 = cv(pd, "c2"), cb1 = cv(pd, "cb1"), cb2 = cv(pd, "cb2");
    const T corner = conv.corner == CornerEntry::Repeated ? T(c2 * cb2) : T(c1 * cb1);
    Residuals<T> out;
    push_matrix(out, "u_equation", M2<T>(d.detw - m2<T>(c2 * cb2, c1 * cb2, c2 * cb1, corner)));
    return out;
}

template <class T> Residuals<T> b2_10(const PointData<T>& pd, const Conventions& conv) {
    const auto d = u_data(pd, SystemId::B2_10);
    const auto [p1, p2, pb1, pb2] = b2_10_pfields(pd);
    const T cc = cv(pd, "c^2"), cbb = cv(pd, "cb^2");
    const T p[2] = {p1.value(), p2.value()}, pb[2] = {pb1.value(), pb2.value()};
    M2<T> rank1(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            rank1(a, b) = conv.rank1 == Rank1Orientation::BarColumn ? T(pb[a] * p[b]) : T(p[a] * pb[b]);
    const M2<T>& u = d.u;
    Residuals<T> out;
    push_matrix(out, "u_equation", M2<T>(d.detw - rank1 * (k_<T>(2) * d.det) - u * (k_<T>(4) * cc * cbb)));
    const T two = k_<T>(2);
    push_scalar(out, "p1_y", d.det * p1[DY] - two * cc * (u(0, 0) * pb[1] - u(1, 0) * pb[0]));
    push_scalar(out, "p2_y", d.det * p2[DY] - two * cc * (u(0, 1) * pb[1] - u(1, 1) * pb[0]));
    push_scalar(out, "pb1_x", d.det * pb1[DX] - two * cbb * (u(0, 0) * p[1] - u(0, 1) * p[0]));
    push_scalar(out, "pb2_x", d.det * pb2[DX] - two * cbb * (u(1, 0) * p[1] - u(1, 1) * p[0]));
    return out;
}

template <class T> Residuals<T> b2_01(const PointData<T>& pd) {
    const auto d = u_data(pd, SystemId::B2_01);
    const T d1 = cv(pd, "d1"), d2 = cv(pd, "d2"), d3 = cv(pd, "d3");
    const T db1 = cv(pd, "db1"), db2 = cv(pd, "db2"), db3 = cv(pd, "db3");
    const M2<T> dbar = m2<T>(db2, -db3, db1, -db2);
    const M2<T> dm = m2<T>(d2, d1, -d3, -d2);
    Residuals<T> out;
    push_matrix(out, "u_equation", M2<T>(d.detw - dbar * d.u * dm));
    return out;
}

// Cubic right-hand sides of the multiplet evolution, index 0..3 for P_1..P_4.
template <class T> std::array<T, 4> g2_01_cubics(const M2<T>& u, const std::array<T, 4>& p) {
    const T &u11 = u(0, 0), &u12 = u(0, 1), &u21 = u(1, 0), &u22 = u(1, 1);
    const T two = k_<T>(2), three = k_<T>(3);
    std::array<T, 4> r;
    r[3] = p[0] * u11 * u11 * u11 - three * p[1] * u11 * u11 * u12 + three * p[2] * u11 * u12 * u12 -
           p[3] * u12 * u12 * u12;
    r[2] = p[0] * u11 * u11 * u21 - p[1] * (u11 * u11 * u22 + two * u11 * u21 * u12) +
           p[2] * (two * u11 * u12 * u22 + u12 * u12 * u21) - p[3] * u12 * u12 * u22;
    r[1] = p[0] * u11 * u21 * u21 - p[1] * (u21 * u21 * u12 + two * u11 * u21 * u22) +
           p[2] * (two * u22 * u12 * u21 + u22 * u22 * u11) - p[3] * u22 * u22 * u12;
    r[0] = p[0] * u21 * u21 * u21 - three * p[1] * u21 * u21 * u22 + three * p[2] * u21 * u22 * u22 -
           p[3] * u22 * u22 * u22;
    return r;
}

template <class T> Residuals<T> g2_01(const PointData<T>& pd, const Conventions& conv) {
    const auto d = u_data(pd, SystemId::G2_01);
    const auto [P, Pb] = g2_01_multiplets(pd, conv.multiplet_sign);
    const T dd = cv(pd, "d^2"), dbb = cv(pd, "db^2");
    std::array<T, 4> pv, pbv;
    for (int i = 0; i < 4; ++i) {
        pv[i] = P[i].value();
        pbv[i] = Pb[i].value();
    }
    // p^{ik} pairs of multiplet indices: p^11 = (P2, P1), p^22 = (P4, P3), p^12 = p^21 = (P3, P2).
    const int pair[2][2][2] = {{{1, 0}, {2, 1}}, {{2, 1}, {3, 2}}};
    const int eps[2][2] = {{1, -1}, {-1, 1}};
    M2<T> quad(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    const int e = eps[i][k] * eps[j][l];
                    const T w = d.u(i, j) * d.u(k, l) * k_<T>(e);
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) quad(a, b) += w * pbv[pair[i][k][a]] * pv[pair[j][l][b]];
                }
    Residuals<T> out;
    push_matrix(out, "u_equation", M2<T>(d.detw - quad - d.u * (k_<T>(4) * dd * dbb)));
    const T det2 = d.det * d.det;
    const auto cx = g2_01_cubics(d.u, pv);
    const auto cy = g2_01_cubics(d.u.transpose(), pbv);
    for (int i = 0; i < 4; ++i)
        push_scalar(out, "pb" + std::to_string(i + 1) + "_x", det2 * Pb[i][DX] + k_<T>(2) * dbb * cx[i]);
    for (int i = 0; i < 4; ++i)
        push_scalar(out, "p" + std::to_string(i + 1) + "_y", det2 * P[i][DY] + k_<T>(2) * dd * cy[i]);
    return out;
}

template <class T> T real_cube_root(const T& v) {
    if (!(v > 0)) throw Error("NegativeDeterminant", "det u <= 0 at the sample point");
    return cube_root(v);
}

template <class T> Residuals<T> g2_10(const PointData<T>& pd, const Conventions& conv) {
    const auto d = u_data(pd, SystemId::G2_10);
    const T f = real_cube_root(d.det);
    const auto fl = g2_10_fields(pd);
    const T c31 = cv(pd, "c^3_1"), cb31 = cv(pd, "cb^3_1");
    const T p1[2] = {fl.p1[0].value(), fl.p1[1].value()};
    const T pb1[2] = {fl.pb1[0].value(), fl.pb1[1].value()};
    const T p2 = fl.p2.value(), pb2 = fl.pb2.value();
    const M2<T>& u = d.u;
    const T kk = c31 * cb31;
    M2<T> rhs(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            T quad = conv.quadratic == QuadraticTerm::Printed
                         ? T(k_<T>(18) * u(a, 0) * u(0, b))
                         : T(k_<T>(72) * u(0, 0) * u(a, b) - k_<T>(36) * u(a, 0) * u(0, b));
            rhs(a, b) = k_<T>(3) * f * pb1[a] * p1[b] + k_<T>(12) * pb2 * p2 * u(a, b) / f + kk * quad / d.det;
        }
    Residuals<T> out;
    push_matrix(out, "u_equation", M2<T>(d.detw * (k_<T>(1) / d.det) - rhs));
    const T f2 = f * f;
    // v = u eps p1, eps = [[0, 1], [-1, 0]]; vb = u^T eps pb1.
    const T q[2] = {p1[1], -p1[0]}, qb[2] = {pb1[1], -pb1[0]};
    const T v[2] = {u(0, 0) * q[0] + u(0, 1) * q[1], u(1, 0) * q[0] + u(1, 1) * q[1]};
    const T vb[2] = {u(0, 0) * qb[0] + u(1, 0) * qb[1], u(0, 1) * qb[0] + u(1, 1) * qb[1]};
    push_scalar(out, "pb2_x", fl.pb2[DX] + k_<T>(3) * cb31 * v[0] / f2);
    push_scalar(out, "pb1_1_x", fl.pb1[0][DX] - k_<T>(4) * pb2 * v[0] / f2);
    push_scalar(out, "pb1_2_x", fl.pb1[1][DX] - k_<T>(4) * pb2 * v[1] / f2 - k_<T>(12) * cb31 * p2 / f);
    push_scalar(out, "p2_y", fl.p2[DY] + k_<T>(3) * c31 * vb[0] / f2);
    push_scalar(out, "p1_1_y", fl.p1[0][DY] - k_<T>(4) * p2 * vb[0] / f2);
    push_scalar(out, "p1_2_y", fl.p1[1][DY] - k_<T>(4) * p2 * vb[1] / f2 - k_<T>(12) * c31 * pb2 / f);
    return out;
}

}  // namespace

template <class T> std::array<Jet<T>, 4> b2_10_pfields(const PointData<T>& pd) {
    const auto& a = pd.acc;
    const T two = k_<T>(2);
    const T cc = cv(pd, "c^2"), cbb = cv(pd, "cb^2");
    return {a.alpha({1}) * (two * cc) + cv(pd, "c2"), a.alpha({2, 1}) * (two * cc) + cv(pd, "c1"),
            a.alphab({1}) * (two * cbb) + cv(pd, "cb2"), a.alphab({1, 2}) * (two * cbb) + cv(pd, "cb1")};
}

template <class T>
std::pair<std::array<Jet<T>, 4>, std::array<Jet<T>, 4>> g2_01_multiplets(const PointData<T>& pd, MultipletSign sign) {
    const std::array<Word, 4> words{Word{1, 1, 1, 2}, Word{1, 1, 2}, Word{1, 2}, Word{2}};
    const std::array<Q, 4> fac{Q(1, 3), Q(1, 3), Q(2, 3), Q(2)};
    const T s = k_<T>(sign == MultipletSign::Plus ? 1 : -1);
    const char* dn[4] = {"d1", "d2", "d3", "d4"};
    const char* dbn[4] = {"db1", "db2", "db3", "db4"};
    const T dd = cv(pd, "d^2"), dbb = cv(pd, "db^2");
    std::array<Jet<T>, 4> P, Pb;
    for (int i = 0; i < 4; ++i) {
        const T f = s * from_q<T>(fac[i]);
        P[i] = pd.acc.alpha(words[i]) * (f * dd) + cv(pd, dn[i]);
        Pb[i] = pd.acc.alphab(Word(words[i].rbegin(), words[i].rend())) * (f * dbb) + cv(pd, dbn[i]);
    }
    return {P, Pb};
}

template <class T> G210Fields<T> g2_10_fields(const PointData<T>& pd) {
    auto build = [&](const Jet<T>& x1, const Jet<T>& x21, const Jet<T>& x121, const T& c11, const T& c12, const T& c2,
                     const T& c31, std::array<Jet<T>, 2>& p1, Jet<T>& p2) {
        p1[0] = x1 * (k_<T>(4) * c2) - x1 * x1 * (k_<T>(6) * c31) - c12;
        p1[1] = x21 * (k_<T>(4) * c2) - (x121 + x1 * x21 * k_<T>(2)) * (k_<T>(3) * c31) + c11;
        p2 = c2 - x1 * (k_<T>(3) * c31);
    };
    G210Fields<T> fl;
    const auto& a = pd.acc;
    build(a.alpha({1}), a.alpha({2, 1}), a.alpha({1, 2, 1}), cv(pd, "c^1_1"), cv(pd, "c^1_2"), cv(pd, "c^2"),
          cv(pd, "c^3_1"), fl.p1, fl.p2);
    build(a.alphab({1}), a.alphab({1, 2}), a.alphab({1, 2, 1}), cv(pd, "cb^1_1"), cv(pd, "cb^1_2"), cv(pd, "cb^2"),
          cv(pd, "cb^3_1"), fl.pb1, fl.pb2);
    return fl;
}

template <class T> Residuals<T> system_residuals(const PointData<T>& pd0, SystemId s, const Conventions& conv) {
    PointData<T> pd = pd0;
    pd.acc.order = conv.alpha_order;
    switch (s) {
        case SystemId::A2_10: return a2_10(pd, conv);
        case SystemId::B2_10: return b2_10(pd, conv);
        case SystemId::B2_01: return b2_01(pd);
        case SystemId::G2_01: return g2_01(pd, conv);
        case SystemId::G2_10: return g2_10(pd, conv);
    }
    return {};
}

template std::array<Jet<Q>, 4> b2_10_pfields(const PointData<Q>&);
template std::array<Jet<Real>, 4> b2_10_pfields(const PointData<Real>&);
template std::pair<std::array<Jet<Q>, 4>, std::array<Jet<Q>, 4>> g2_01_multiplets(const PointData<Q>&, MultipletSign);
template std::pair<std::array<Jet<Real>, 4>, std::array<Jet<Real>, 4>> g2_01_multiplets(const PointData<Real>&,
                                                                                        MultipletSign);
template G210Fields<Q> g2_10_fields(const PointData<Q>&);
template G210Fields<Real> g2_10_fields(const PointData<Real>&);
template Residuals<Q> system_residuals(const PointData<Q>&, SystemId, const Conventions&);
template Residuals<Real> system_residuals(const PointData<Real>&, SystemId, const Conventions&);

std::vector<SystemConfig> random_configs(SystemId s, int sets, uint64_t seed) {
    std::vector<SystemConfig> out;
    for (int k = 0; k < sets; ++k) {
        SystemConfig c;
        c.system = s;
        c.coeffs = random_constant_coefficients(s, seed * 1000003ULL + uint64_t(k));
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// Small-denominator rational in (0, 1).
Q sample_coordinate(Rng& rng) {
    const long d = rng.uniform(2, 7);
    return ratio(rng.uniform(1, d - 1), d);
}

// Sample points in (0, 2^-m)^2; the box halves after a run of rejected
// points, so regions where det u > 0 only near the origin are still reached.
class Sampler {
public:
    explicit Sampler(uint64_t seed) : rng_(seed) {}
    std::pair<Q, Q> exact() {
        const Q scale = ratio(1, 1L << level_);
        return {sample_coordinate(rng_) * scale, sample_coordinate(rng_) * scale};
    }
    std::pair<unsigned, unsigned> node(unsigned steps) {
        const long top = std::max(1L, long(steps >> level_));
        return {unsigned(rng_.uniform(1, top)), unsigned(rng_.uniform(1, top))};
    }
    void accept() { streak_ = 0; }
    void reject() {
        if (++streak_ >= 10 && level_ < 12) {
            ++level_;
            streak_ = 0;
        }
    }
    int level() const { return level_; }

private:
    Rng rng_;
    int level_ = 0, streak_ = 0;
};

bool all_zero(const Residuals<Q>& r) {
    for (const auto& [n, v] : r)
        if (sgn(v) != 0) return false;
    return true;
}

// Does the candidate convention make every residual vanish on a small sample?
bool candidate_passes(SystemId s, const Conventions& conv, uint64_t seed) {
    for (const auto& cfg : random_configs(s, 1, seed)) {
        const ExactSolution sol = solve_exact(cfg);
        Rng rng(seed);
        int found = 0;
        for (int attempt = 0; attempt < 40 && found < 2; ++attempt) {
            const Q x = sample_coordinate(rng), y = sample_coordinate(rng);
            try {
                if (!all_zero(system_residuals(sol.point(x, y), s, conv))) return false;
                ++found;
            } catch (const Error& e) {
                if (e.kind != "SingularU" && e.kind != "SingularDenominator" && e.kind != "NegativeDeterminant")
                    return false;
            }
        }
        if (found == 0) return false;
    }
    return true;
}

template <class E>
Selection select(const std::string& name, const std::vector<E>& options, const std::vector<SystemId>& systems,
                 const std::function<void(Conventions&, E)>& set) {
    Selection sel;
    sel.name = name;
    int winners = 0;
    for (E o : options) {
        Conventions c;
        set(c, o);
        bool ok = true;
        for (SystemId s : systems) ok = ok && candidate_passes(s, c, 7);
        sel.candidates[to_string(o)] = ok;
        if (ok) {
            sel.selected = to_string(o);
            ++winners;
        }
    }
    if (winners != 1) sel.selected = "";
    return sel;
}

template <class E> E pick(const Selection& s, const std::vector<E>& options, E fallback) {
    for (E o : options)
        if (to_string(o) == s.selected) return o;
    return fallback;
}

}  // namespace

const ResolvedConventions& resolve_conventions() {
    static std::once_flag once;
    static ResolvedConventions rc;
    std::call_once(once, [] {
        auto& sel = rc.selections;
        const std::vector<Theta2Form> th{Theta2Form::SameIndex, Theta2Form::CrossIndex};
        const std::vector<AlphaOrder> ao{AlphaOrder::Written, AlphaOrder::Reversed};
        const std::vector<CornerEntry> ce{CornerEntry::Repeated, CornerEntry::Symmetric};
        const std::vector<Rank1Orientation> ro{Rank1Orientation::BarColumn, Rank1Orientation::PlainColumn};
        const std::vector<MultipletSign> ms{MultipletSign::Plus, MultipletSign::Minus};
        const std::vector<QuadraticTerm> qt{QuadraticTerm::Printed, QuadraticTerm::Rebalanced};
        const std::vector<BraBracketing> bb{BraBracketing::ClosingAtEnd, BraBracketing::PrefixDropped};

        sel["theta2_denominator"] = select_theta2(11);
        sel["alpha_word_order"] = select<AlphaOrder>(
            "alpha_word_order", ao, {SystemId::B2_10, SystemId::G2_01, SystemId::G2_10},
            [](Conventions& c, AlphaOrder v) { c.alpha_order = v; });
        sel["a2_10_corner_entry"] = select<CornerEntry>("a2_10_corner_entry", ce, {SystemId::A2_10},
                                                        [](Conventions& c, CornerEntry v) { c.corner = v; });
        sel["b2_10_rank1_orientation"] = select<Rank1Orientation>(
            "b2_10_rank1_orientation", ro, {SystemId::B2_10}, [](Conventions& c, Rank1Orientation v) { c.rank1 = v; });
        sel["g2_01_multiplet_sign"] = select<MultipletSign>(
            "g2_01_multiplet_sign", ms, {SystemId::G2_01}, [](Conventions& c, MultipletSign v) { c.multiplet_sign = v; });
        sel["g2_10_quadratic_term"] = select<QuadraticTerm>(
            "g2_10_quadratic_term", qt, {SystemId::G2_10}, [](Conventions& c, QuadraticTerm v) { c.quadratic = v; });
        sel["g2_10_bra_bracketing"] = select_bracketing();

        Conventions& c = rc.conv;
        c.theta2 = pick(sel["theta2_denominator"], th, c.theta2);
        c.alpha_order = pick(sel["alpha_word_order"], ao, c.alpha_order);
        c.corner = pick(sel["a2_10_corner_entry"], ce, c.corner);
        c.rank1 = pick(sel["b2_10_rank1_orientation"], ro, c.rank1);
        c.multiplet_sign = pick(sel["g2_01_multiplet_sign"], ms, c.multiplet_sign);
        c.quadratic = pick(sel["g2_10_quadratic_term"], qt, c.quadratic);
        c.bracketing = pick(sel["g2_10_bra_bracketing"], bb, c.bracketing);
    });
    return rc;
}

Real default_tolerance(const SystemConfig& cfg, unsigned precision) {
    if (cfg.constant()) return boost::multiprecision::pow(Real(10), -Real(precision / 2));
    return Real("1e-8");
}

namespace {

struct Tally {
    std::map<std::string, Q> exact;
    std::map<std::string, Real> numeric;
};

template <class T> void merge(std::map<std::string, T>& into, const Residuals<T>& r) {
    for (const auto& [n, v] : r) {
        auto it = into.find(n);
        if (it == into.end() || v > it->second) into[n] = v;
    }
}

bool black(SystemId s, int i) { return system_grading(s)[i - 1] == 1; }

GroupPair pair_of(const PointData<Q>& pd) {
    GroupPair g;
    g.p = pd.acc.p;
    for (int j = 0; j < 2; ++j) g.g[j] = pd.acc.k[j].c[0];
    return g;
}

// Exact-mode extras: derivative calculus and the identities on solution data.
Residuals<Q> exact_extras(const ExactSolution& sol, const PointData<Q>& pd, const Conventions& conv) {
    const SystemId s = sol.cfg.system;
    Residuals<Q> out;
    for (int i = 1; i <= 2; ++i)
        if (black(s, i))
            out.push_back({"mixed_derivative_" + std::to_string(i), abs(mixed_derivative_residual(sol, i, pd.x, pd.y))});
    const GroupPair g = pair_of(pd);
    out.push_back({"second_jacobi", abs(second_jacobi_residual(g, true)) + abs(second_jacobi_residual(g, false))});
    if (s == SystemId::G2_01) {
        std::array<Q, 5> d;
        const char* dn[5] = {"d1", "d2", "d3", "d4", "d^2"};
        for (int k = 0; k < 5; ++k) d[k] = pd.coeffs.at(dn[k]);
        Q worst = 0;
        for (const Q& r : q_table_residuals(g, d, conv)) worst = std::max(worst, Q(abs(r)));
        out.push_back({"q_action_table", worst});
    }
    return out;
}

bool skippable(const Error& e) {
    return e.kind == "SingularU" || e.kind == "SingularDenominator" || e.kind == "NegativeDeterminant";
}

}  // namespace

nlohmann::json verify_system(const std::vector<SystemConfig>& configs, const VerifyOptions& opt, bool& passed) {
    if (configs.empty()) throw Error("InvalidConfig", "no coefficient sets");
    const SystemId s = configs.front().system;
    const ResolvedConventions& rc = resolve_conventions();
    const Conventions& conv = rc.conv;
    Tally tally;
    nlohmann::json runs = nlohmann::json::array();
    std::optional<Real> tol;
    unsigned steps = 0;

    for (size_t ci = 0; ci < configs.size(); ++ci) {
        const SystemConfig& cfg = configs[ci];
        require_gauge(cfg);
        if (!cfg.grade_zero_free()) throw Error("NonzeroGradeZero", "the system equations assume A0 = B0 = 0");
        Sampler sampler(opt.seed * 7919ULL + ci);
        nlohmann::json pts = nlohmann::json::array();
        int resampled = 0;
        const int max_attempts = 50 * std::max(opt.points, 1);

        if (opt.mode == Mode::Exact) {
            const ExactSolution sol = solve_exact(cfg);
            tally.exact["derivative_identities"] = derivative_identities_hold(sol) ? Q(0) : Q(1);
            int found = 0;
            for (int attempt = 0; found < opt.points && attempt < max_attempts; ++attempt) {
                const auto [x, y] = sampler.exact();
                try {
                    const PointData<Q> pd = sol.point(x, y);
                    const auto r = system_residuals(pd, s, conv);
                    merge(tally.exact, r);
                    merge(tally.exact, exact_extras(sol, pd, conv));
                    pts.push_back({to_string(x), to_string(y)});
                    sampler.accept();
                    ++found;
                } catch (const Error& e) {
                    if (!skippable(e)) throw;
                    sampler.reject();
                    ++resampled;
                }
            }
            if (found < opt.points) throw Error("SamplingFailed", "too many singular sample points");
        } else {
            set_precision(opt.precision);
            const Real t = opt.tolerance ? Real(*opt.tolerance) : default_tolerance(cfg, opt.precision);
            if (!tol || t > *tol) tol = t;
            const double inv = 1.0 / opt.step;
            if (!(opt.step > 0) || opt.step > 1 || inv > 1e7)
                throw Error("InvalidStep", "step must lie in (0, 1]");
            steps = unsigned(std::lround(inv));
            // The step check never demands more than the default accuracy.
            const Real dt = default_tolerance(cfg, opt.precision);
            const NumericSolution sol = solve_numeric(cfg, steps, opt.precision, t > dt ? t : dt);
            int found = 0;
            for (int attempt = 0; found < opt.points && attempt < max_attempts; ++attempt) {
                const auto [i, k] = sampler.node(steps);
                try {
                    merge(tally.numeric, system_residuals(sol.point(i, k), s, conv));
                    Q x{long(i), long(steps)}, y{long(k), long(steps)};
                    x.canonicalize();
                    y.canonicalize();
                    pts.push_back({to_string(x), to_string(y)});
                    sampler.accept();
                    ++found;
                } catch (const Error& e) {
                    if (!skippable(e)) throw;
                    sampler.reject();
                    ++resampled;
                }
            }
            if (found < opt.points) throw Error("SamplingFailed", "too many singular sample points");
        }
        runs.push_back({{"config", config_to_json(cfg)}, {"points", pts}, {"resampled", resampled}});
    }

    passed = true;
    nlohmann::json eqs = nlohmann::json::array();
    if (opt.mode == Mode::Exact) {
        for (const auto& [n, v] : tally.exact) {
            const bool ok = sgn(v) == 0;
            passed = passed && ok;
            eqs.push_back({{"name", n}, {"max_residual", to_string(v)}, {"pass", ok}});
        }
    } else {
        for (const auto& [n, v] : tally.numeric) {
            const bool ok = v <= *tol;
            passed = passed && ok;
            eqs.push_back({{"name", n}, {"max_residual", to_string(v, 6)}, {"pass", ok}});
        }
    }
    for (const auto& [name, sel] : rc.selections) passed = passed && !sel.selected.empty();

    nlohmann::json report{{"command", "verify"},
                          {"system", system_name(s)},
                          {"mode", mode_name(opt.mode)},
                          {"seed", opt.seed},
                          {"points", opt.points},
                          {"coefficient_sets", configs.size()},
                          {"runs", runs},
                          {"equations", eqs},
                          {"conventions", rc.to_json()},
                          {"passed", passed}};
    if (opt.mode == Mode::Numeric) {
        report["precision"] = opt.precision;
        report["steps"] = steps;
        report["tolerance"] = to_string(*tol, 6);
    }
    return report;
}

}  // namespace rank2lab
