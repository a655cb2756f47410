#include "rank2lab/scalar.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace rank2lab {

namespace {
unsigned g_digits = 50;

bool valid_integer(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
}  // namespace

Q parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!valid_integer(a) || !valid_integer(b)) throw Error("ParseError", "bad rational '" + raw + "'");
        if (b[0] == '+') b = b.substr(1);
        if (a[0] == '+') a = a.substr(1);
        mpz_class den(b);
        if (den == 0) throw Error("ParseError", "zero denominator in '" + raw + "'");
        Q q(mpz_class(a), den);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        if (!valid_integer(ip) || (!fp.empty() && !valid_integer(fp)) || fp.find_first_of("+-") != std::string::npos)
            throw Error("ParseError", "bad decimal '" + raw + "'");
        mpz_class den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        Q q(mpz_class(ip + fp), den);
        q.canonicalize();
        return neg ? Q(-q) : q;
    }
    if (!valid_integer(s)) throw Error("ParseError", "bad rational '" + raw + "'");
    if (s[0] == '+') s = s.substr(1);
    return Q(mpz_class(s));
}

std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

void set_precision(unsigned digits) {
    g_digits = digits;
    Real::default_precision(digits);
}

unsigned precision() { return g_digits; }

std::string to_string(const Real& r, unsigned digits) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(int(digits ? digits - 1 : 0)) << r;
    return os.str();
}

Real to_real(const Q& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

namespace {
mpz_class exact_cbrt(const mpz_class& z) {
    mpz_class a = abs(z), r;
    if (!mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3)) throw Error("NotPerfectCube", z.get_str());
    return sgn(z) < 0 ? mpz_class(-r) : r;
}
}  // namespace

Q cube_root(const Q& q) {
    Q r(exact_cbrt(q.get_num()), exact_cbrt(q.get_den()));
    r.canonicalize();
    return r;
}

Real cube_root(const Real& r) { return boost::multiprecision::cbrt(r); }

Q pow_int(const Q& b, int e) { return ipow<Q>(b, e); }

}  // namespace rank2lab
