#pragma once
// Matrix-element functions of a group element realised in both fundamentals:
// <j|..K..|j>, the normalised ratios alpha and the theta monomials.
// Entries are jets, so the same code yields values and derivatives.

#include "rank2lab/conventions.hpp"
#include "rank2lab/group.hpp"

namespace rank2lab {

template <class T>
struct FieldAccess {
    int p = 1;
    std::array<JetMat<T>, 2> k;  // by internal label
    AlphaOrder order = AlphaOrder::Written;

    const Representation& rep(int j) const { return fundamental_internal(p, j); }

    Jet<T> me(int j, const Word& bra, const Word& ket) const { return matrix_element(rep(j), k[j - 1], bra, ket); }
    Jet<T> f(int j) const { return me(j, {}, {}); }

    // alpha_w: ket-side ratio; alphab_w: bra-side ratio.
    Jet<T> alpha(const Word& w) const {
        if (order == AlphaOrder::Written) {
            const int j = w.back();
            return me(j, {}, w) / f(j);
        }
        const int j = w.front();
        return me(j, {}, Word(w.rbegin(), w.rend())) / f(j);
    }
    Jet<T> alphab(const Word& w) const {
        if (order == AlphaOrder::Written) {
            const int j = w.front();
            return me(j, w, {}) / f(j);
        }
        const int j = w.back();
        return me(j, Word(w.rbegin(), w.rend()), {}) / f(j);
    }

    Jet<T> theta(int i, Theta2Form form) const {
        if (i == 1) return f(2) / (f(1) * f(1));
        const Jet<T> num = jpow(f(1), p);
        return form == Theta2Form::CrossIndex ? num / (f(2) * f(2)) : num / (f(1) * f(1));
    }
};

template <class T>
FieldAccess<T> plain_access(const GroupPair& g, AlphaOrder order = AlphaOrder::Written) {
    FieldAccess<T> a;
    a.p = g.p;
    a.order = order;
    for (int j = 0; j < 2; ++j) a.k[j] = JetMat<T>(0, convert<T>(g.g[j]));
    return a;
}

// Access to G perturbed by iterated regular actions (see perturb()).
template <class T>
FieldAccess<T> perturbed_access(const GroupPair& g, const std::vector<int>& left, const std::vector<int>& right,
                                AlphaOrder order = AlphaOrder::Written) {
    FieldAccess<T> a;
    a.p = g.p;
    a.order = order;
    for (int j = 1; j <= 2; ++j) a.k[j - 1] = perturb(fundamental_internal(g.p, j), convert<T>(g[j]), left, right);
    return a;
}

}  // namespace rank2lab
