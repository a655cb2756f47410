#include "rank2lab/identities.hpp"

namespace rank2lab {

namespace {

Q me(const GroupPair& g, int j, const Word& bra, const Word& ket) {
    return matrix_element(fundamental_internal(g.p, j), g[j], bra, ket);
}

Q fj(const GroupPair& g, int j) { return me(g, j, {}, {}); }

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Q monomial(const GroupPair& g, std::array<int, 2> e) {
    Q r = 1;
    for (int i = 0; i < 2; ++i) r *= pow_int(fj(g, i + 1), e[i]);
    return r;
}

Q det_over(const GroupPair& g, int j, const std::vector<Word>& kets) {
    const size_t n = kets.size();
    QMat m(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) m(a, b) = me(g, j, reversed(kets[a]), kets[b]);
    return det(m);
}

bool nonsingular(const GroupPair& g) { return sgn(fj(g, 1)) != 0 && sgn(fj(g, 2)) != 0; }

}  // namespace

Q first_jacobi_residual(const GroupPair& g, int j) {
    const Word w{j};
    const Q lhs = me(g, j, w, w) * me(g, j, {}, {}) - me(g, j, w, {}) * me(g, j, {}, w);
    const CartanMatrix cm = cartan_matrix(g.p == 1 ? Algebra::A2 : g.p == 2 ? Algebra::C2 : Algebra::G2);
    Q rhs = 1;
    for (int i = 1; i <= 2; ++i)
        if (i != j) rhs *= pow_int(fj(g, i), -cm.k[j - 1][i - 1]);
    return lhs - rhs;
}

Q second_jacobi_residual(const GroupPair& g, bool plain) {
    const Q p(g.p);
    const Q f1 = fj(g, 1), f2 = fj(g, 2);
    if (!plain) {
        // ab21 = <2|X+2 X+1 G|2>/f2, ab12 = <1|X+1 X+2 G|1>/f1
        const Q n21 = me(g, 2, {2, 1}, {}), n12 = me(g, 1, {1, 2}, {});
        const Q n1 = me(g, 1, {1}, {}), n2 = me(g, 2, {2}, {});
        return n21 * f1 + p * n12 * f2 - p * n1 * n2;
    }
    // a12 = <2|G X-1 X-2|2>/f2, a21 = <1|G X-2 X-1|1>/f1
    const Q n12 = me(g, 2, {}, {1, 2}), n21 = me(g, 1, {}, {2, 1});
    const Q n1 = me(g, 1, {}, {1}), n2 = me(g, 2, {}, {2});
    return n12 * f1 + p * n21 * f2 - p * n1 * n2;
}

std::vector<MinorData> minor_data(int p, int j) {
    const Representation& rep = fundamental_internal(p, j);
    const GroupPair id = identity_pair(p);
    std::vector<MinorData> out;
    std::array<int, 2> l{0, 0};
    std::vector<Word> kets;
    for (size_t s = 1; s <= rep.dim; ++s) {
        const auto& b = rep.basis[s - 1];
        kets.push_back(b.word);
        l[0] += b.weight[0];
        l[1] += b.weight[1];
        out.push_back({s, det_over(id, j, kets), l});
    }
    return out;
}

std::vector<Q> generalized_jacobi_residuals(const GroupPair& g, int j) {
    static std::map<std::pair<int, int>, std::vector<MinorData>> cache;
    auto key = std::make_pair(g.p, j);
    if (!cache.count(key)) cache[key] = minor_data(g.p, j);
    const auto& data = cache[key];
    const Representation& rep = fundamental_internal(g.p, j);
    std::vector<Word> kets;
    std::vector<Q> res;
    for (const auto& md : data) {
        kets.push_back(rep.basis[md.order - 1].word);
        const Q m = det_over(g, j, kets);
        std::array<int, 2> neg{std::max(0, -md.cartan[0]), std::max(0, -md.cartan[1])};
        std::array<int, 2> pos{std::max(0, md.cartan[0]), std::max(0, md.cartan[1])};
        res.push_back(m * monomial(g, neg) - md.constant * monomial(g, pos));
    }
    return res;
}

std::vector<NamedMinor> named_minors(int p) {
    switch (p) {
        case 1: return {{"A2 (1,0): three-term minor equals 1", 1, 2, {{}, {2}, {1, 2}}, 1, {0, 0}}};
        case 2:
            return {{"B2 (1,0): three-term minor equals 2 f1^2", 2, 2, {{}, {2}, {1, 2}}, 2, {2, 0}},
                    {"B2 (0,1): three-term minor equals f1", 2, 1, {{}, {1}, {2, 1}}, 1, {1, 0}}};
        default:
            return {{"G2 (1,0): three-term minor equals 3 f1^4", 3, 2, {{}, {2}, {1, 2}}, 3, {4, 0}},
                    {"G2 (0,1): three-term minor lies in the (2,0) module", 3, 1, {{}, {1}, {2, 1}}, 1, {2, 0}}};
    }
}

Q named_minor_value(const GroupPair& g, const NamedMinor& m) { return det_over(g, m.fund, m.kets); }

Q named_minor_residual(const GroupPair& g, const NamedMinor& m) {
    return named_minor_value(g, m) - m.constant * monomial(g, m.cartan);
}

AlphaTheta compute_alpha_theta(const GroupPair& g, const std::vector<Word>& words, const Conventions& conv) {
    const auto acc = plain_access<Q>(g, conv.alpha_order);
    AlphaTheta at;
    at.theta[0] = acc.theta(1, conv.theta2).value();
    at.theta[1] = acc.theta(2, conv.theta2).value();
    for (const auto& w : words) {
        at.alpha[word_string(w)] = acc.alpha(w).value();
        at.alphab[word_string(w)] = acc.alphab(w).value();
    }
    return at;
}

int differentiation_rule_failures(const GroupPair& g, Theta2Form form, std::string* first) {
    const CartanMatrix cm = cartan_matrix(g.p == 1 ? Algebra::A2 : g.p == 2 ? Algebra::C2 : Algebra::G2);
    const auto base = plain_access<Q>(g);
    int failures = 0;
    auto note = [&](bool ok, const std::string& what) {
        if (ok) return;
        if (failures == 0 && first) *first = what;
        ++failures;
    };
    for (int i = 1; i <= 2; ++i)
        for (int q = 1; q <= 2; ++q) {
            const Q th = base.theta(i, form).value();
            const Q kiq(cm.k[i - 1][q - 1]);
            const Q delta = i == q ? th : Q(0);
            const auto right = perturbed_access<Q>(g, {}, {-q});
            const auto left = perturbed_access<Q>(g, {q}, {});
            const std::string tag = " (i=" + std::to_string(i) + ", q=" + std::to_string(q) + ")";
            note(right.theta(i, form)[1] == -th * kiq * base.alpha({q}).value(), "right X-_q on theta_i" + tag);
            note(left.theta(i, form)[1] == -th * kiq * base.alphab({q}).value(), "left X+_q on theta_i" + tag);
            note(right.alphab({i})[1] == delta, "right X-_q on barred alpha_i" + tag);
            note(left.alpha({i})[1] == delta, "left X+_q on alpha_i" + tag);
        }
    return failures;
}

Q det3_value(const GroupPair& g) {
    const std::vector<Word> bras{{}, {1}, {1, 2, 1, 1, 2}};
    const std::vector<Word> kets{{}, {1}, {2, 1, 1, 2, 1}};
    QMat m(3, 3);
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) m(a, b) = me(g, 1, bras[a], kets[b]);
    return det(m);
}

namespace {
// Leibniz expansion of (bra word)_l (ket word)_r applied to <j|G|j>^power.
Q leibniz(const GroupPair& g, int j, const Word& lw, const Word& rw, int power) {
    const size_t nl = lw.size(), nr = rw.size();
    size_t combos = 1;
    for (size_t k = 0; k < nl + nr; ++k) combos *= size_t(power);
    Q total = 0;
    std::vector<int> assign(nl + nr);
    for (size_t c = 0; c < combos; ++c) {
        size_t x = c;
        for (auto& a : assign) {
            a = int(x % size_t(power));
            x /= size_t(power);
        }
        Q v = 1;
        for (int f = 0; f < power && sgn(v) != 0; ++f) {
            Word bra, ket;
            for (size_t t = 0; t < nl; ++t)
                if (assign[t] == f) bra.push_back(lw[t]);
            for (size_t t = 0; t < nr; ++t)
                if (assign[nl + t] == f) ket.push_back(rw[t]);
            v *= me(g, j, bra, ket);
        }
        total += v;
    }
    return total;
}
}  // namespace

Q det3_decomposition(const GroupPair& g) {
    const std::vector<std::pair<int, Word>> left{{2, {1, 2, 1}}, {-3, {1, 1, 2}}};
    const std::vector<std::pair<int, Word>> right{{2, {1, 2, 1}}, {-3, {2, 1, 1}}};
    Q s = 0;
    for (const auto& [cl, lw] : left)
        for (const auto& [cr, rw] : right) s += Q(cl * cr) * leibniz(g, 1, lw, rw, 2);
    return s / 16 + fj(g, 1);
}

Q det3_residual(const GroupPair& g) { return det3_value(g) - det3_decomposition(g); }

namespace {
std::array<Jet<Q>, 4> multiplet_plus(const FieldAccess<Q>& a, const std::array<Q, 5>& d) {
    const std::array<Word, 4> ws{Word{1, 1, 1, 2}, Word{1, 1, 2}, Word{1, 2}, Word{2}};
    const std::array<Q, 4> fac{Q(1, 3), Q(1, 3), Q(2, 3), Q(2)};
    std::array<Jet<Q>, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = a.alpha(ws[i]) * (fac[i] * d[4]) + d[i];
    return out;
}

Jet<Q> line_q(const FieldAccess<Q>& a, const std::array<Q, 5>& d, int which) {
    const auto P = multiplet_plus(a, d);
    const Jet<Q> a1 = a.alpha({1});
    if (which == 1) return P[1] - Q(2) * P[2] * a1 + P[3] * a1 * a1;
    return P[0] - Q(2) * P[1] * a1 + P[2] * a1 * a1;
}

Jet<Q> big_p(const FieldAccess<Q>& a, const std::array<Q, 5>& d) {
    const auto P = multiplet_plus(a, d);
    return P[3] * a.alpha({1}) - P[2];
}

template <class F> Q left_top(const GroupPair& g, const Word& w, const Conventions& conv, F fn) {
    const auto acc = perturbed_access<Q>(g, std::vector<int>(w.begin(), w.end()), {}, conv.alpha_order);
    const Jet<Q> v = fn(acc);
    return v.c.back();
}
}  // namespace

std::vector<Q> q_table_residuals(const GroupPair& g, const std::array<Q, 5>& d, const Conventions& conv) {
    const auto base = plain_access<Q>(g, conv.alpha_order);
    const Q th1 = base.theta(1, conv.theta2).value();
    const Q th2 = base.theta(2, conv.theta2).value();
    const Q P = big_p(base, d).value();
    const Q p221 = multiplet_plus(base, d)[3].value();
    const Q ab1 = base.alphab({1}).value(), ab2 = base.alphab({2}).value();
    const Q ab21 = base.alphab({2, 1}).value(), ab12 = base.alphab({1, 2}).value();
    auto q1 = [&](const FieldAccess<Q>& a) { return line_q(a, d, 1); };
    auto q2 = [&](const FieldAccess<Q>& a) { return line_q(a, d, 2); };
    auto pp = [&](const FieldAccess<Q>& a) { return big_p(a, d); };
    std::vector<Q> r;
    r.push_back(left_top(g, {1}, conv, q1) - 2 * th1 * P);
    r.push_back(left_top(g, {2}, conv, pp));
    r.push_back(left_top(g, {2, 1}, conv, q1) - 2 * th1 * ab2 * P);
    r.push_back(left_top(g, {1, 1}, conv, q1) - (2 * th1 * th1 * p221 - 4 * th1 * ab1 * P));
    r.push_back(left_top(g, {1, 2, 1}, conv, q1) - (2 * th1 * (ab21 - 2 * ab1 * ab2) * P + 2 * th1 * th1 * ab2 * p221));
    r.push_back(left_top(g, {2, 1, 1}, conv, q1) -
                (4 * th1 * th1 * ab2 * p221 + 4 * d[4] * th1 * th1 * th2 - 4 * th1 * ab1 * ab2 * P - 4 * th1 * ab12 * P));
    r.push_back(left_top(g, {2}, conv, q1));
    r.push_back(left_top(g, {2}, conv, q2));
    return r;
}

LoweringRelation lowering_relation() {
    const Representation& rep = fundamental(Algebra::G2, 1);
    const size_t n = rep.dim, N = n * n;
    auto doubled = [&](const QMat& m) {
        QMat d(N, N);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c) {
                    if (sgn(m(a, c)) != 0) d(a * n + b, c * n + b) += m(a, c);
                    if (sgn(m(b, c)) != 0) d(a * n + b, a * n + c) += m(b, c);
                }
        return d;
    };
    const QMat xm1 = doubled(rep.lower(1)), xm2 = doubled(rep.lower(2)), xp1 = doubled(rep.raise(1));
    QMat v(N, 1);
    v(0, 0) = 1;
    const QMat w211 = xm2 * (xm1 * (xm1 * v));
    const QMat w121 = xm1 * (xm2 * (xm1 * v));
    const QMat i211 = xp1 * w211, i121 = xp1 * w121;
    // Solve a*i211 + b*i121 = 0 for a nonzero (a, b).
    LoweringRelation lr;
    for (size_t k = 0; k < N; ++k) {
        if (sgn(i211(k, 0)) == 0 && sgn(i121(k, 0)) == 0) continue;
        lr.a = i121(k, 0);
        lr.b = -i211(k, 0);
        break;
    }
    const QMat comb = i211 * lr.a + i121 * lr.b;
    if (!comb.is_zero()) lr.a = lr.b = 0;
    lr.relation_3a_2b = sgn(lr.a) != 0 && 3 * lr.a + 2 * lr.b == 0;
    lr.relation_2a_3b = sgn(lr.a) != 0 && 2 * lr.a + 3 * lr.b == 0;
    return lr;
}

Selection select_theta2(uint64_t seed) {
    Selection s;
    s.name = "theta2_denominator";
    const std::array<Theta2Form, 2> forms{Theta2Form::SameIndex, Theta2Form::CrossIndex};
    for (auto form : forms) {
        bool ok = true;
        for (int p = 1; p <= 3 && ok; ++p)
            for (uint64_t t = 0; t < 3 && ok; ++t) {
                const GroupPair g = gauss_factor_random(p, seed * 7919 + t * 31 + uint64_t(p));
                if (!nonsingular(g)) continue;
                ok = differentiation_rule_failures(g, form) == 0;
            }
        s.candidates[to_string(form)] = ok;
    }
    int winners = 0;
    for (auto form : forms)
        if (s.candidates[to_string(form)]) {
            s.selected = to_string(form);
            ++winners;
        }
    if (winners != 1) s.selected = "";
    return s;
}

nlohmann::json run_identity_suite(Algebra a, int trials, uint64_t seed, const Conventions& conv, bool& all_pass) {
    const int p = algebra_p(a);
    const std::string an = algebra_name(a);
    struct Tally {
        int failures = 0;
        std::string first;
    };
    std::vector<std::string> names{"first_jacobi", "second_jacobi", "generalized_jacobi", "three_term_minors",
                                   "differentiation_rules"};
    if (p == 3) {
        names.push_back("det3_decomposition");
        names.push_back("q_action_table");
    }
    std::map<std::string, Tally> tally;
    Rng rng(seed);
    int resampled = 0;
    const auto named = named_minors(p);
    for (int t = 0; t < trials; ++t) {
        GroupPair g;
        while (true) {
            g = gauss_factor_random(p, uint64_t(rng.uniform(0, 1L << 40)));
            if (nonsingular(g)) break;
            ++resampled;
        }
        auto record = [&](const std::string& name, bool ok, const std::string& what) {
            if (ok) return;
            auto& tl = tally[name];
            if (tl.failures == 0) tl.first = "trial " + std::to_string(t) + ": " + what;
            ++tl.failures;
        };
        {
            bool ok = true;
            for (int j = 1; j <= 2; ++j) ok = ok && sgn(first_jacobi_residual(g, j)) == 0;
            record("first_jacobi", ok, "nonzero residual");
        }
        record("second_jacobi", sgn(second_jacobi_residual(g, false)) == 0 && sgn(second_jacobi_residual(g, true)) == 0,
               "nonzero residual");
        {
            bool ok = true;
            for (int j = 1; j <= 2 && ok; ++j)
                for (const Q& r : generalized_jacobi_residuals(g, j)) ok = ok && sgn(r) == 0;
            record("generalized_jacobi", ok, "nonzero minor residual");
        }
        {
            bool ok = true;
            std::string what;
            for (const auto& m : named)
                if (sgn(named_minor_residual(g, m)) != 0) {
                    ok = false;
                    what = m.name;
                }
            record("three_term_minors", ok, what);
        }
        {
            std::string what;
            record("differentiation_rules", differentiation_rule_failures(g, conv.theta2, &what) == 0, what);
        }
        if (p == 3) {
            record("det3_decomposition", sgn(det3_residual(g)) == 0, "nonzero residual");
            std::array<Q, 5> d;
            for (auto& x : d) x = rng.rational(5);
            bool ok = true;
            for (const Q& r : q_table_residuals(g, d, conv)) ok = ok && sgn(r) == 0;
            record("q_action_table", ok, "nonzero entry residual");
        }
    }

    all_pass = true;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& n : names) {
        nlohmann::json c{{"identity", n}, {"algebra", an}, {"trials", trials}, {"failures", tally[n].failures},
                         {"seed", seed}};
        if (tally[n].failures) {
            c["first_failure"] = tally[n].first;
            all_pass = false;
        }
        checks.push_back(c);
    }
    nlohmann::json constants = nlohmann::json::array();
    const GroupPair id = identity_pair(p);
    for (const auto& m : named) {
        const Q at_id = named_minor_value(id, m);
        const bool ok = at_id == m.constant;
        if (!ok) all_pass = false;
        constants.push_back({{"minor", m.name},
                             {"constant", to_string(m.constant)},
                             {"cartan_values", m.cartan},
                             {"value_at_identity", to_string(at_id)},
                             {"constant_matches", ok}});
    }
    nlohmann::json rep;
    rep["algebra"] = an;
    rep["trials"] = trials;
    rep["seed"] = seed;
    rep["resampled"] = resampled;
    rep["checks"] = checks;
    rep["three_term_constants"] = constants;
    if (p == 3) {
        const auto lr = lowering_relation();
        const bool ok = lr.relation_2a_3b && !lr.relation_3a_2b;
        rep["lowering_relation"] = {{"a", to_string(lr.a)},
                                    {"b", to_string(lr.b)},
                                    {"3a+2b=0", lr.relation_3a_2b},
                                    {"2a+3b=0", lr.relation_2a_3b}};
        if (!ok) all_pass = false;
        rep["det3_at_identity"] = to_string(det3_value(id));
    }
    if (trials == 0) rep["warnings"] = nlohmann::json::array({"trials=0: no samples drawn, pass is vacuous"});
    rep["passed"] = all_pass;
    return rep;
}

}  // namespace rank2lab
