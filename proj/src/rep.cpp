#include "rank2lab/rep.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace rank2lab {

namespace {

using Sparse = std::map<size_t, Q>;  // row index -> coefficient

// Gauss-Jordan on the matrix whose columns are `cols`. Returns pivot column
// indices and, for every column, its coordinates in the pivot columns.
void rank_solve(const std::vector<std::vector<Q>>& cols, std::vector<size_t>& piv,
                std::vector<std::vector<Q>>& coords) {
    piv.clear();
    coords.clear();
    const size_t n = cols.size();
    if (n == 0) return;
    const size_t m = cols[0].size();
    std::vector<std::vector<Q>> a(m, std::vector<Q>(n));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < m; ++i) a[i][j] = cols[j][i];
    std::vector<size_t> pivrow;
    size_t row = 0;
    for (size_t c = 0; c < n && row < m; ++c) {
        size_t pr = row;
        while (pr < m && sgn(a[pr][c]) == 0) ++pr;
        if (pr == m) continue;
        std::swap(a[row], a[pr]);
        Q inv = 1 / a[row][c];
        for (auto& x : a[row]) x *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || sgn(a[r][c]) == 0) continue;
            Q f = a[r][c];
            for (size_t k = 0; k < n; ++k) a[r][k] -= f * a[row][k];
        }
        piv.push_back(c);
        pivrow.push_back(row);
        ++row;
    }
    coords.assign(n, std::vector<Q>(piv.size()));
    for (size_t c = 0; c < n; ++c)
        for (size_t q = 0; q < piv.size(); ++q) coords[c][q] = a[pivrow[q]][c];
}

struct Candidate {
    Word word;
    std::array<int, 2> weight;
    int letter;  // 0-based
    size_t from;
};

constexpr size_t kDimBound = 64;

}  // namespace

Representation build_fundamental(Algebra a, int label) {
    const int internal = internal_fundamental(a, label);
    const CartanMatrix cm = cartan_matrix(a);

    std::vector<WeightWord> basis;
    basis.push_back({{}, internal == 1 ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1}});
    std::array<std::map<size_t, Sparse>, 2> xp, xm;  // column -> sparse column
    xp[0][0] = {};
    xp[1][0] = {};
    std::vector<size_t> cur{0};

    while (true) {
        std::vector<Candidate> cands;
        for (size_t v : cur)
            for (int i = 0; i < 2; ++i) {
                Candidate c;
                c.word.push_back(i + 1);
                c.word.insert(c.word.end(), basis[v].word.begin(), basis[v].word.end());
                c.weight = {basis[v].weight[0] - cm.k[i][0], basis[v].weight[1] - cm.k[i][1]};
                c.letter = i;
                c.from = v;
                cands.push_back(std::move(c));
            }

        // X+_k X-_i v = X-_i X+_k v + delta_ik <h_i, v> v, expressed over the current level.
        std::vector<std::array<Sparse, 2>> imgs(cands.size());
        for (size_t t = 0; t < cands.size(); ++t) {
            const auto& c = cands[t];
            for (int k = 0; k < 2; ++k) {
                Sparse out;
                for (const auto& [b, cf] : xp[k][c.from])
                    for (const auto& [tt, c2] : xm[c.letter][b]) out[tt] += cf * c2;
                if (k == c.letter) out[c.from] += basis[c.from].weight[c.letter];
                imgs[t][k] = std::move(out);
            }
        }

        std::vector<size_t> order(cands.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t x, size_t y) { return cands[x].word < cands[y].word; });
        std::vector<std::array<int, 2>> weights;
        std::map<std::array<int, 2>, std::vector<size_t>> byw;
        for (size_t t : order) {
            if (!byw.count(cands[t].weight)) weights.push_back(cands[t].weight);
            byw[cands[t].weight].push_back(t);
        }
        std::map<size_t, size_t> curidx;
        for (size_t n = 0; n < cur.size(); ++n) curidx[cur[n]] = n;

        std::vector<size_t> next;
        for (const auto& w : weights) {
            const auto& ts = byw[w];
            std::vector<std::vector<Q>> vecs;
            for (size_t t : ts) {
                std::vector<Q> vec(2 * cur.size());
                for (int k = 0; k < 2; ++k)
                    for (const auto& [b, cf] : imgs[t][k]) vec[k * cur.size() + curidx.at(b)] += cf;
                vecs.push_back(std::move(vec));
            }
            std::vector<size_t> piv;
            std::vector<std::vector<Q>> coords;
            rank_solve(vecs, piv, coords);
            std::vector<size_t> newidx;
            for (size_t pc : piv) {
                const auto& c = cands[ts[pc]];
                basis.push_back({c.word, c.weight});
                const size_t id = basis.size() - 1;
                if (id >= kDimBound) throw Error("InternalInconsistency", "lowering orbit exceeded the dimension bound");
                newidx.push_back(id);
                for (int k = 0; k < 2; ++k) {
                    Sparse s;
                    for (const auto& [b, cf] : imgs[ts[pc]][k])
                        if (sgn(cf) != 0) s[b] = cf;
                    xp[k][id] = std::move(s);
                }
                next.push_back(id);
            }
            for (size_t n = 0; n < ts.size(); ++n) {
                const auto& c = cands[ts[n]];
                auto& col = xm[c.letter][c.from];
                for (size_t q = 0; q < piv.size(); ++q)
                    if (sgn(coords[n][q]) != 0) col[newidx[q]] += coords[n][q];
            }
        }
        for (size_t v : cur)
            for (int i = 0; i < 2; ++i) xm[i][v];
        if (next.empty()) break;
        cur = next;
    }

    // Final ordering: by word length, then lexicographic on the word.
    const size_t n = basis.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](size_t x, size_t y) {
        const auto& a1 = basis[x].word;
        const auto& b1 = basis[y].word;
        if (a1.size() != b1.size()) return a1.size() < b1.size();
        return a1 < b1;
    });
    std::vector<size_t> pos(n);
    for (size_t k = 0; k < n; ++k) pos[perm[k]] = k;

    Representation rep;
    rep.algebra = a;
    rep.fundamental = label;
    rep.internal = internal;
    rep.p = algebra_p(a);
    rep.dim = n;
    for (size_t k = 0; k < n; ++k) rep.basis.push_back(basis[perm[k]]);
    for (int i = 0; i < 2; ++i) {
        rep.Xp[i] = QMat(n, n);
        rep.Xm[i] = QMat(n, n);
        rep.h[i] = QMat(n, n);
        for (const auto& [c, col] : xp[i])
            for (const auto& [r, v] : col) rep.Xp[i](pos[r], pos[c]) = v;
        for (const auto& [c, col] : xm[i])
            for (const auto& [r, v] : col) rep.Xm[i](pos[r], pos[c]) = v;
        for (size_t k = 0; k < n; ++k) rep.h[i](k, k) = rep.basis[k].weight[i];
    }
    return rep;
}

const Representation& fundamental(Algebra a, int label) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Representation>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(int(a), label);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Representation>(build_fundamental(a, label))).first;
    return *it->second;
}

const Representation& fundamental_internal(int p, int internal) {
    switch (p) {
        case 1: return fundamental(Algebra::A2, internal);
        case 2: return fundamental(Algebra::C2, internal);
        case 3: return fundamental(Algebra::G2, internal);
    }
    throw Error("UnknownAlgebra", "p = " + std::to_string(p));
}

RelationReport verify_relations(const Representation& rep) {
    RelationReport rr;
    const CartanMatrix cm = cartan_matrix(rep.algebra);
    auto check = [&](bool ok, const std::string& what) {
        ++rr.checked;
        if (!ok && rr.ok) {
            rr.ok = false;
            rr.first_failure = what;
        }
    };
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const std::string si = std::to_string(i + 1), sk = std::to_string(k + 1);
            QMat c = commutator(rep.Xp[i], rep.Xm[k]);
            if (i == k)
                check((c - rep.h[i]).is_zero(), "[X+" + si + ",X-" + sk + "]=h" + si);
            else
                check(c.is_zero(), "[X+" + si + ",X-" + sk + "]=0");
            const Q kk(cm.k[k][i]);
            check((commutator(rep.h[i], rep.Xp[k]) - rep.Xp[k] * kk).is_zero(),
                  "[h" + si + ",X+" + sk + "]=" + std::to_string(cm.k[k][i]) + "X+" + sk);
            check((commutator(rep.h[i], rep.Xm[k]) + rep.Xm[k] * kk).is_zero(),
                  "[h" + si + ",X-" + sk + "]=" + std::to_string(-cm.k[k][i]) + "X-" + sk);
        }
    check(commutator(rep.h[0], rep.h[1]).is_zero(), "[h1,h2]=0");
    return rr;
}

QMat grading_matrix(const Representation& rep, Algebra a, const GradingSpec& g) {
    if (algebra_p(a) != rep.p) throw Error("AlgebraMismatch", algebra_name(a) + " grading on " + algebra_name(rep.algebra) + " representation");
    return rep.h[0] * g.coeffs[0] + rep.h[1] * g.coeffs[1];
}

namespace {
nlohmann::json mat_json(const QMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

QMat mat_from_json(const nlohmann::json& j, size_t n) {
    if (!j.is_array() || j.size() != n) throw Error("ParseError", "matrix has wrong shape");
    QMat m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw Error("ParseError", "matrix row has wrong length");
        for (size_t k = 0; k < n; ++k) m(i, k) = parse_rational(j[i][k].get<std::string>());
    }
    return m;
}
}  // namespace

nlohmann::json rep_to_json(const Representation& rep) {
    nlohmann::json j;
    j["algebra"] = algebra_name(rep.algebra);
    j["fundamental"] = rep.fundamental;
    j["dim"] = rep.dim;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : rep.basis) basis.push_back({{"word", b.word}, {"weight", b.weight}});
    j["basis"] = basis;
    j["h1"] = mat_json(rep.h[0]);
    j["h2"] = mat_json(rep.h[1]);
    j["Xp1"] = mat_json(rep.Xp[0]);
    j["Xp2"] = mat_json(rep.Xp[1]);
    j["Xm1"] = mat_json(rep.Xm[0]);
    j["Xm2"] = mat_json(rep.Xm[1]);
    return j;
}

Representation rep_from_json(const nlohmann::json& j) {
    Representation rep;
    try {
        rep.algebra = parse_algebra(j.at("algebra").get<std::string>());
        rep.fundamental = j.at("fundamental").get<int>();
        rep.internal = internal_fundamental(rep.algebra, rep.fundamental);
        rep.p = algebra_p(rep.algebra);
        rep.dim = j.at("dim").get<size_t>();
        for (const auto& b : j.at("basis"))
            rep.basis.push_back({b.at("word").get<Word>(), b.at("weight").get<std::array<int, 2>>()});
        if (rep.basis.size() != rep.dim) throw Error("ParseError", "basis size differs from dim");
        rep.h[0] = mat_from_json(j.at("h1"), rep.dim);
        rep.h[1] = mat_from_json(j.at("h2"), rep.dim);
        rep.Xp[0] = mat_from_json(j.at("Xp1"), rep.dim);
        rep.Xp[1] = mat_from_json(j.at("Xp2"), rep.dim);
        rep.Xm[0] = mat_from_json(j.at("Xm1"), rep.dim);
        rep.Xm[1] = mat_from_json(j.at("Xm2"), rep.dim);
    } catch (const nlohmann::json::exception& e) {
        throw Error("ParseError", e.what());
    }
    return rep;
}

std::vector<Q> bra_vector(const Representation& rep, const Word& w) {
    std::vector<Q> v(rep.dim);
    v[0] = 1;
    for (int letter : w) {
        const QMat& g = rep.raise(letter);
        std::vector<Q> r(rep.dim);
        for (size_t i = 0; i < rep.dim; ++i) {
            if (sgn(v[i]) == 0) continue;
            for (size_t k = 0; k < rep.dim; ++k)
                if (sgn(g(i, k)) != 0) r[k] += v[i] * g(i, k);
        }
        v = std::move(r);
    }
    return v;
}

std::vector<Q> ket_vector(const Representation& rep, const Word& w) {
    std::vector<Q> v(rep.dim);
    v[0] = 1;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const QMat& g = rep.lower(*it);
        std::vector<Q> r(rep.dim);
        for (size_t k = 0; k < rep.dim; ++k) {
            if (sgn(v[k]) == 0) continue;
            for (size_t i = 0; i < rep.dim; ++i)
                if (sgn(g(i, k)) != 0) r[i] += g(i, k) * v[k];
        }
        v = std::move(r);
    }
    return v;
}

std::string word_string(const Word& w) {
    std::string s;
    for (int x : w) s += char('0' + x);
    return s.empty() ? "()" : s;
}

}  // namespace rank2lab
