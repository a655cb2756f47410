#pragma once
// General solution K = M+(y) M-(x) of the S-matrix type equations
//   M-_x = M- (A0(x) + L-(x)),  M+_y = (B0(y) + L+(y)) M+,  M±(0) = 1,
// exactly (constant coefficients, terminating exponentials) or numerically
// (classical RK4 in MPFR). Derivatives of K are taken by insertion:
//   K_x = K (A0 + L-),  K_y = (B0 + L+) K,  K_xy = (B0 + L+) K (A0 + L-).

#include "rank2lab/fields.hpp"
#include "rank2lab/lax.hpp"

#include <optional>

namespace rank2lab {

enum class Mode { Exact, Numeric };
Mode parse_mode(const std::string& s);
std::string mode_name(Mode m);

// Grade-zero part: keys h1, h2 and the red generators Xp<r>, Xm<r>.
using GradeZero = std::map<std::string, Poly>;

struct SystemConfig {
    SystemId system = SystemId::A2_10;
    CoefficientSet coeffs;
    GradeZero azero, bzero;  // functions of x and of y

    bool constant() const;
    bool grade_zero_free() const;
};

// {"system": ..., "coeffs": {"c1": ["1/2", "3"], ...}, "Azero": {...}, "Bzero": {...}}
// Scalars are accepted in place of one-element lists. The system key is
// optional when a system is supplied.
SystemConfig parse_config(const nlohmann::json& j, std::optional<SystemId> system = std::nullopt);
nlohmann::json config_to_json(const SystemConfig& c);
nlohmann::json coefficients_to_json(const CoefficientSet& cs);
// G2-10 equations are stated in the gauge c^3_2 = cb^3_2 = 0.
void require_gauge(const SystemConfig& c);

// Everything the residuals need at one point: K with its x, y, xy
// derivatives (jet bits: 1 = x, 2 = y) in both fundamentals, and the
// coefficient values there.
template <class T>
struct PointData {
    T x, y;
    FieldAccess<T> acc;
    std::map<std::string, T> coeffs;
};

template <class T> using UMat = std::array<std::array<Jet<T>, 2>, 2>;

// u_ab = <a|K|b> over {|r>, X-_r|r>}, r the red root.
template <class T> UMat<T> extract_u(const PointData<T>& pd, SystemId s) {
    const int r = system_red_root(s);
    const Word w[2] = {{}, {r}};
    UMat<T> u;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) u[a][b] = pd.acc.me(r, w[a], w[b]);
    return u;
}

// Grade-zero matrix in one representation.
template <class T>
Mat<T> grade_zero_matrix(const GradeZero& gz, const Representation& rep, const T& t) {
    Mat<T> m(rep.dim, rep.dim);
    for (const auto& [key, poly] : gz) {
        const T v = poly.eval(t);
        if (is_zero(v)) continue;
        const int i = key.back() - '0';
        const QMat& g = key[0] == 'h' ? rep.h[i - 1] : key[1] == 'p' ? rep.raise(i) : rep.lower(i);
        m += convert<T>(g) * v;
    }
    return m;
}

// Generators A0 + L- (at x) and B0 + L+ (at y) in internal fundamental j.
template <class T>
std::pair<Mat<T>, Mat<T>> generators(const SystemConfig& cfg, int j, const T& x, const T& y) {
    const Representation& rep = fundamental_internal(system_p(cfg.system), j);
    const auto vals = coefficient_values(cfg.coeffs, x, y);
    const auto plus = lax_plus(cfg.system);
    Mat<T> a = lax_matrix(hermitian_conjugate(plus), rep, vals) + grade_zero_matrix(cfg.azero, rep, x);
    Mat<T> b = lax_matrix(plus, rep, vals) + grade_zero_matrix(cfg.bzero, rep, y);
    return {a, b};
}

template <class T>
PointData<T> make_point(const SystemConfig& cfg, const std::array<Mat<T>, 2>& k, const T& x, const T& y) {
    PointData<T> pd{x, y, {}, coefficient_values(cfg.coeffs, x, y)};
    pd.acc.p = system_p(cfg.system);
    for (int j = 1; j <= 2; ++j) {
        const auto [a, b] = generators(cfg, j, x, y);
        JetMat<T> jm(2, k[j - 1]);
        jm.c[1] = k[j - 1] * a;
        jm.c[2] = b * k[j - 1];
        jm.c[3] = b * k[j - 1] * a;
        pd.acc.k[j - 1] = std::move(jm);
    }
    return pd;
}

struct ExactSolution {
    SystemConfig cfg;
    // Per internal fundamental: (L+)^a / a! and (L-)^b / b!, so that
    // K = sum_{a,b} mplus[a] mminus[b] y^a x^b.
    std::array<std::vector<QMat>, 2> mplus, mminus;
    std::array<QMat, 2> lplus, lminus;

    QMat k(int j, const Q& x, const Q& y) const;
    // Coefficient matrix of y^a x^b.
    QMat term(int j, size_t a, size_t b) const;
    PointData<Q> point(const Q& x, const Q& y) const;
    template <class T> PointData<T> point_as(const T& x, const T& y) const {
        std::array<Mat<T>, 2> ks;
        for (int j = 1; j <= 2; ++j) ks[j - 1] = horner<T>(mplus[j - 1], y) * horner<T>(mminus[j - 1], x);
        return make_point(cfg, ks, x, y);
    }
    nlohmann::json to_json() const;

private:
    template <class T> static Mat<T> horner(const std::vector<QMat>& cs, const T& t) {
        Mat<T> r(cs[0].rows(), cs[0].cols());
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) r = r * t + convert<T>(*it);
        return r;
    }
};

// Throws NonConstantCoefficients / NonzeroGradeZero.
ExactSolution solve_exact(const SystemConfig& cfg);

// K_x - K L- = 0 and K_y - L+ K = 0 coefficientwise.
bool derivative_identities_hold(const ExactSolution& s);

// f f_xy - f_x f_y from the polynomial minus the insertion determinant
// det[[<i|L+ K L-|i>, <i|L+ K|i>], [<i|K L-|i>, <i|K|i>]], f = <i|K|i>.
Q mixed_derivative_residual(const ExactSolution& s, int i, const Q& x, const Q& y);

struct NumericSolution {
    SystemConfig cfg;
    unsigned steps = 0;  // grid nodes 0..steps on [0, 1]
    unsigned digits = 0;
    // Per internal fundamental, M+ at y_k and M- at x_i.
    std::array<std::vector<Mat<Real>>, 2> mplus, mminus;

    Real node(unsigned i) const { return Real(i) / Real(steps); }
    PointData<Real> point(unsigned i, unsigned k) const;
    Mat<Real> k(int j, unsigned i, unsigned k) const;
};

// RK4 with step 1/steps. When check_tol is set, the run is repeated with
// half the step and StepTooLarge is thrown if the node values of M± differ
// by more than the tolerance.
NumericSolution solve_numeric(const SystemConfig& cfg, unsigned steps, unsigned digits,
                              std::optional<Real> check_tol = std::nullopt);

// Largest entry difference between the numeric K and the exact K at a node.
Real cross_mode_difference(const NumericSolution& n, const ExactSolution& e, unsigned i, unsigned k);

// Exact M± for polynomial coefficients and A0 = B0 = 0, by Picard iteration
//   M-(x) = 1 + int_0^x M-(s) L-(s) ds,  M+(y) = 1 + int_0^y L+(s) M+(s) ds,
// which terminates because L± are nilpotent of fixed grade sign. Serves as
// the reference solution for integrator convergence checks.
struct PolynomialSolution {
    SystemConfig cfg;
    // Per internal fundamental, matrix coefficients of t^0, t^1, ...
    std::array<std::vector<QMat>, 2> mplus, mminus;

    QMat mplus_at(int j, const Q& y) const;
    QMat mminus_at(int j, const Q& x) const;
    QMat k(int j, const Q& x, const Q& y) const { return mplus_at(j, y) * mminus_at(j, x); }
};

PolynomialSolution solve_polynomial(const SystemConfig& cfg);

// Largest entry of M±_numeric - M±_reference over all grid nodes and both
// fundamentals: the global integration error.
Real global_error(const NumericSolution& n, const PolynomialSolution& ref);

nlohmann::json numeric_samples_json(const NumericSolution& n, const std::vector<std::pair<unsigned, unsigned>>& nodes);

template <class T> T max_abs(const Mat<T>& m) {
    T r = from_q<T>(Q(0));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const T v = scalar_traits<T>::abs(m(i, j));
            if (v > r) r = v;
        }
    return r;
}

}  // namespace rank2lab
