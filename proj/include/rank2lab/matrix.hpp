#pragma once
// Dense matrices over an arbitrary scalar type.

#include "rank2lab/scalar.hpp"

#include <vector>

namespace rank2lab {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(size_t r, size_t c) : r_(r), c_(c), a_(r * c, from_q<T>(Q(0))) {}

    static Mat zero(size_t n) { return Mat(n, n); }
    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = from_q<T>(Q(1));
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!rank2lab::is_zero(x)) return false;
        return true;
    }

    Mat& operator+=(const Mat& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const T& s) { return a *= s; }
    friend Mat operator*(const T& s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t t = 0; t < a.c_; ++t) {
                const T& x = a(i, t);
                if (rank2lab::is_zero(x)) continue;
                for (size_t j = 0; j < b.c_; ++j) {
                    const T& y = b(t, j);
                    if (!rank2lab::is_zero(y)) r(i, j) += x * y;
                }
            }
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Mat transpose() const {
        Mat t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using QMat = Mat<Q>;

template <class T> Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) { return a * b - b * a; }

template <class T> Mat<T> convert(const QMat& m) {
    Mat<T> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = from_q<T>(m(i, j));
    return r;
}

// Determinant by elimination with first-nonzero pivoting (exact for Q).
template <class T> T det(Mat<T> m) {
    const size_t n = m.rows();
    T d = from_q<T>(Q(1));
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        if constexpr (scalar_traits<T>::exact) {
            while (p < n && is_zero(m(p, c))) ++p;
        } else {
            for (size_t r = c + 1; r < n; ++r)
                if (scalar_traits<T>::abs(m(r, c)) > scalar_traits<T>::abs(m(p, c))) p = r;
        }
        if (p == n || is_zero(m(p, c))) return from_q<T>(Q(0));
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (size_t r = c + 1; r < n; ++r) {
            if (is_zero(m(r, c))) continue;
            T f = m(r, c) / m(c, c);
            for (size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

// Leading s×s block.
template <class T> Mat<T> leading(const Mat<T>& m, size_t s) {
    Mat<T> r(s, s);
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) r(i, j) = m(i, j);
    return r;
}

}  // namespace rank2lab
