#pragma once
// Truncated multivariate jets with nilpotent infinitesimals e_k (e_k^2 = 0).
//
// A jet over n infinitesimals stores one coefficient per subset of {e_1..e_n}
// (bitmask index), so the coefficient at mask m is the mixed derivative along
// the variables in m. Multiplication is subset convolution.

#include "rank2lab/matrix.hpp"

#include <vector>

namespace rank2lab {

template <class T>
struct Jet {
    unsigned nv = 0;
    std::vector<T> c;

    Jet() : nv(0), c(1, from_q<T>(Q(0))) {}
    Jet(unsigned n, const T& v) : nv(n), c(size_t(1) << n, from_q<T>(Q(0))) { c[0] = v; }

    const T& value() const { return c[0]; }
    const T& operator[](size_t m) const { return c[m]; }
    T& operator[](size_t m) { return c[m]; }

    Jet& operator+=(const Jet& o) {
        for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (size_t k = 0; k < c.size(); ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(const T& s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Jet operator*(Jet a, const T& s) { return a *= s; }
    friend Jet operator*(const T& s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, const T& s) {
        a.c[0] += s;
        return a;
    }
    friend Jet operator+(const T& s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, const T& s) {
        a.c[0] -= s;
        return a;
    }
    friend Jet operator-(const T& s, const Jet& a) { return -(a - s); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.nv, from_q<T>(Q(0)));
        const size_t full = r.c.size() - 1;
        for (size_t x = 0; x <= full; ++x) {
            if (is_zero(a.c[x])) continue;
            const size_t comp = full & ~x;
            for (size_t y = comp;; y = (y - 1) & comp) {
                if (!is_zero(b.c[y])) r.c[x | y] += a.c[x] * b.c[y];
                if (y == 0) break;
            }
        }
        return r;
    }

    Jet inverse() const {
        if (is_zero(c[0])) throw Error("SingularDenominator", "division by a jet with zero value");
        T inv0 = from_q<T>(Q(1)) / c[0];
        Jet n = *this * inv0;
        n.c[0] = from_q<T>(Q(0));
        // 1/(a(1+n)) = (1/a) sum (-n)^k, terminating after nv terms
        Jet r(nv, from_q<T>(Q(1)));
        Jet t(nv, from_q<T>(Q(1)));
        for (unsigned k = 0; k < nv; ++k) {
            t = t * (-n);
            r += t;
        }
        return r * inv0;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }
    friend Jet operator/(Jet a, const T& s) {
        T inv = from_q<T>(Q(1)) / s;
        return a *= inv;
    }

    bool is_zero_jet() const {
        for (const auto& x : c)
            if (!is_zero(x)) return false;
        return true;
    }
};

template <class T> Jet<T> jpow(const Jet<T>& b, int e) {
    if (e < 0) return jpow(b, -e).inverse();
    Jet<T> r(b.nv, from_q<T>(Q(1)));
    for (int k = 0; k < e; ++k) r = r * b;
    return r;
}

// A matrix whose entries are jets, stored as one matrix per subset mask.
template <class T>
struct JetMat {
    unsigned nv = 0;
    std::vector<Mat<T>> c;

    JetMat() = default;
    JetMat(unsigned n, const Mat<T>& v) : nv(n), c(size_t(1) << n, Mat<T>(v.rows(), v.cols())) { c[0] = v; }

    friend JetMat operator*(const JetMat& a, const JetMat& b) {
        JetMat r(a.nv, Mat<T>(a.c[0].rows(), b.c[0].cols()));
        const size_t full = r.c.size() - 1;
        for (size_t x = 0; x <= full; ++x) {
            if (a.c[x].is_zero()) continue;
            const size_t comp = full & ~x;
            for (size_t y = comp;; y = (y - 1) & comp) {
                if (!b.c[y].is_zero()) r.c[x | y] += a.c[x] * b.c[y];
                if (y == 0) break;
            }
        }
        return r;
    }

    // (1 + e_k G) as a jet matrix.
    static JetMat unit_plus(unsigned n, unsigned k, const Mat<T>& g) {
        JetMat r(n, Mat<T>::identity(g.rows()));
        r.c[size_t(1) << k] = g;
        return r;
    }
};

}  // namespace rank2lab
