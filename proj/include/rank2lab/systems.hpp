#pragma once
// The five integrable systems as residual functionals on solution data.
// Exact-mode residuals are cleared of det(u) denominators so that a pass is
// the zero rational.

#include "rank2lab/identities.hpp"
#include "rank2lab/solutions.hpp"

namespace rank2lab {

template <class T> using Residuals = std::vector<std::pair<std::string, T>>;

// Auxiliary fields of B2-10: p1, p2, pb1, pb2 as jets.
template <class T> std::array<Jet<T>, 4> b2_10_pfields(const PointData<T>& pd);

// G2-01 multiplets P_1..P_4 and Pb_1..Pb_4.
template <class T>
std::pair<std::array<Jet<T>, 4>, std::array<Jet<T>, 4>> g2_01_multiplets(const PointData<T>& pd, MultipletSign sign);

// G2-10 spinor p1 and scalar p2 (plain, then barred).
template <class T> struct G210Fields {
    std::array<Jet<T>, 2> p1, pb1;
    Jet<T> p2, pb2;
};
template <class T> G210Fields<T> g2_10_fields(const PointData<T>& pd);

// Every equation of the system at one point. Throws SingularU if det u = 0
// and NegativeDeterminant for G2-10 when det u <= 0.
template <class T> Residuals<T> system_residuals(const PointData<T>& pd, SystemId s, const Conventions& conv);

// Runs every ambiguity through the exact pipeline and keeps the unique winner.
const ResolvedConventions& resolve_conventions();

struct VerifyOptions {
    Mode mode = Mode::Exact;
    int points = 20;
    uint64_t seed = 1;
    unsigned precision = 60;
    double step = 1e-3;
    // Numeric residual tolerance; the step-halving check uses the larger of
    // this and the default.
    std::optional<std::string> tolerance;
};

// Default numeric tolerance: 10^(-precision/2) for constant coefficients
// (the integrator is exact there), 1e-8 otherwise.
Real default_tolerance(const SystemConfig& cfg, unsigned precision);

// Full pipeline over the given coefficient sets: solve, sample, extract,
// evaluate. Deterministic in the seed.
nlohmann::json verify_system(const std::vector<SystemConfig>& configs, const VerifyOptions& opt, bool& passed);

// Random constant coefficient sets (G2-10 in the c^3_2 = cb^3_2 = 0 gauge).
std::vector<SystemConfig> random_configs(SystemId s, int sets, uint64_t seed);

}  // namespace rank2lab
