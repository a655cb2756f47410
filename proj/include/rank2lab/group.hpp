#pragma once
// Group elements in a representation and their matrix elements.

#include "rank2lab/jet.hpp"
#include "rank2lab/rep.hpp"

#include <cstdint>
#include <random>

namespace rank2lab {

// Deterministic integer sampler (portable across standard libraries).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    // Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const uint64_t span = uint64_t(hi - lo) + 1;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t x;
        do x = eng_();
        while (x >= limit);
        return lo + long(x % span);
    }
    // Rational with numerator in [-m, m] and denominator in [1, m].
    Q rational(long m) {
        if (m <= 0) return Q(0);
        Q q(uniform(-m, m), uniform(1, m));
        q.canonicalize();
        return q;
    }
    Q nonzero_rational(long m) {
        Q q;
        do q = rational(m);
        while (sgn(q) == 0);
        return q;
    }

private:
    std::mt19937_64 eng_;
};

// exp(M) for nilpotent M, as the terminating power series.
template <class T> Mat<T> exp_nilpotent(const Mat<T>& m) {
    const size_t n = m.rows();
    Mat<T> r = Mat<T>::identity(n);
    Mat<T> term = Mat<T>::identity(n);
    for (size_t k = 1; k <= n + 1; ++k) {
        term = term * m;
        term *= from_q<T>(Q(1, k));
        if (term.is_zero()) return r;
        r += term;
    }
    throw Error("NotNilpotent", "powers did not vanish within the representation dimension");
}

QMat torus_element(const Representation& rep, const Q& t1, const Q& t2);

// Parameters of N- T N+ with N± products of one-parameter unipotents along a
// reduced word of the longest Weyl element.
struct GaussParams {
    Word word;
    std::vector<Q> lower, upper;
    Q t1 = 1, t2 = 1;
};

GaussParams random_gauss_params(int p, uint64_t seed, long magnitude);
QMat gauss_element(const Representation& rep, const GaussParams& gp);

// The same abstract group element realised in both fundamentals
// (indexed by internal label 1, 2).
struct GroupPair {
    int p = 1;
    std::array<QMat, 2> g;
    const QMat& operator[](int j) const { return g.at(j - 1); }
};

GroupPair gauss_factor_random(int p, uint64_t seed, long magnitude = 4);
GroupPair identity_pair(int p);

// <j| X+_{bra} M X-_{ket} |j>
template <class T>
T matrix_element(const Representation& rep, const Mat<T>& m, const Word& bra, const Word& ket) {
    const auto r = bra_vector(rep, bra);
    const auto c = ket_vector(rep, ket);
    T s = from_q<T>(Q(0));
    for (size_t i = 0; i < rep.dim; ++i) {
        if (sgn(r[i]) == 0) continue;
        T acc = from_q<T>(Q(0));
        for (size_t k = 0; k < rep.dim; ++k)
            if (sgn(c[k]) != 0) acc += m(i, k) * from_q<T>(c[k]);
        s += acc * from_q<T>(r[i]);
    }
    return s;
}

template <class T>
Jet<T> matrix_element(const Representation& rep, const JetMat<T>& m, const Word& bra, const Word& ket) {
    Jet<T> j(m.nv, from_q<T>(Q(0)));
    for (size_t k = 0; k < m.c.size(); ++k) j.c[k] = matrix_element(rep, m.c[k], bra, ket);
    return j;
}

enum class Side { Left, Right };

// Regular action of a generator (or any algebra element) on G.
template <class T> Mat<T> act_regular(const Mat<T>& g, const Mat<T>& gen, Side side) {
    return side == Side::Left ? gen * g : g * gen;
}

// Jet perturbation realising iterated regular actions:
//   left word (a1..an)  -> (1 + e_n X_an) ... (1 + e_1 X_a1) G, so the mixed
//                          coefficient equals (X_a1)_l (X_a2)_l ... (X_an)_l f
//   right word (b1..bm) -> G (1 + e'_1 X_b1) ... (1 + e'_m X_bm), giving
//                          (X_b1)_r ... (X_bm)_r f
// Letters are signed: +i for X+_i, -i for X-_i. Infinitesimals are numbered
// left letters first, then right letters.
template <class T>
JetMat<T> perturb(const Representation& rep, const Mat<T>& g, const std::vector<int>& left,
                  const std::vector<int>& right) {
    const unsigned nv = unsigned(left.size() + right.size());
    JetMat<T> m(nv, g);
    for (size_t k = 0; k < left.size(); ++k)
        m = JetMat<T>::unit_plus(nv, unsigned(k), convert<T>(rep.gen(left[k]))) * m;
    for (size_t k = 0; k < right.size(); ++k)
        m = m * JetMat<T>::unit_plus(nv, unsigned(left.size() + k), convert<T>(rep.gen(right[k])));
    return m;
}

}  // namespace rank2lab
