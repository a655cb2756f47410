#pragma once
// Scalar types used across the library.
//
//   Q     exact rationals (GMP)
//   Real  arbitrary-precision binary floating point (MPFR), precision set per run
//
// Generic code is written against the small trait set below so that the same
// templates serve exact mode and numeric mode.

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace rank2lab {

using Q = mpq_class;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg) : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

// Parse "a", "a/b", or a decimal literal like "0.25" into an exact rational.
Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

// Working precision for Real, in decimal digits.
void set_precision(unsigned digits);
unsigned precision();
// Decimal string with the given number of significant digits (scientific form).
std::string to_string(const Real& r, unsigned digits);

Real to_real(const Q& q);

template <class T> struct scalar_traits;

template <> struct scalar_traits<Q> {
    static constexpr bool exact = true;
    static Q from_q(const Q& q) { return q; }
    static bool is_zero(const Q& q) { return sgn(q) == 0; }
    static Q abs(const Q& q) { return ::abs(q); }
};

template <> struct scalar_traits<Real> {
    static constexpr bool exact = false;
    static Real from_q(const Q& q) { return to_real(q); }
    static bool is_zero(const Real& r) { return r == 0; }
    static Real abs(const Real& r) { return boost::multiprecision::abs(r); }
};

template <class T> T from_q(const Q& q) { return scalar_traits<T>::from_q(q); }
template <class T> bool is_zero(const T& v) { return scalar_traits<T>::is_zero(v); }

// Exact rational cube root; throws if the argument is not a perfect cube.
Q cube_root(const Q& q);
Real cube_root(const Real& r);

Q pow_int(const Q& b, int e);

// n/d in canonical form (GMP arithmetic requires it).
inline Q ratio(long n, long d) {
    Q q(n, d);
    q.canonicalize();
    return q;
}

template <class T> T ipow(const T& b, int e) {
    T r = from_q<T>(Q(1));
    T base = b;
    bool neg = e < 0;
    unsigned n = neg ? unsigned(-e) : unsigned(e);
    while (n) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1;
    }
    if (neg) r = from_q<T>(Q(1)) / r;
    return r;
}

}  // namespace rank2lab
