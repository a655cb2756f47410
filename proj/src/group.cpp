#include "rank2lab/group.hpp"

namespace rank2lab {

QMat torus_element(const Representation& rep, const Q& t1, const Q& t2) {
    if (sgn(t1) == 0 || sgn(t2) == 0) throw Error("ZeroParameter", "torus parameters must be nonzero");
    QMat t(rep.dim, rep.dim);
    for (size_t k = 0; k < rep.dim; ++k) t(k, k) = pow_int(t1, rep.basis[k].weight[0]) * pow_int(t2, rep.basis[k].weight[1]);
    return t;
}

namespace {
Word longest_word(int p) {
    switch (p) {
        case 1: return {1, 2, 1};
        case 2: return {1, 2, 1, 2};
        default: return {1, 2, 1, 2, 1, 2};
    }
}
}  // namespace

GaussParams random_gauss_params(int p, uint64_t seed, long magnitude) {
    Rng rng(seed);
    GaussParams gp;
    gp.word = longest_word(p);
    if (magnitude <= 0) return {gp.word, std::vector<Q>(gp.word.size()), std::vector<Q>(gp.word.size()), 1, 1};
    gp.t1 = rng.nonzero_rational(magnitude);
    gp.t2 = rng.nonzero_rational(magnitude);
    for (size_t k = 0; k < gp.word.size(); ++k) gp.lower.push_back(rng.rational(magnitude));
    for (size_t k = 0; k < gp.word.size(); ++k) gp.upper.push_back(rng.rational(magnitude));
    return gp;
}

QMat gauss_element(const Representation& rep, const GaussParams& gp) {
    QMat g = QMat::identity(rep.dim);
    for (size_t k = 0; k < gp.word.size(); ++k) g = g * exp_nilpotent(rep.lower(gp.word[k]) * gp.lower[k]);
    g = g * torus_element(rep, gp.t1, gp.t2);
    for (size_t k = 0; k < gp.word.size(); ++k) g = g * exp_nilpotent(rep.raise(gp.word[k]) * gp.upper[k]);
    return g;
}

GroupPair gauss_factor_random(int p, uint64_t seed, long magnitude) {
    const GaussParams gp = random_gauss_params(p, seed, magnitude);
    GroupPair pair;
    pair.p = p;
    for (int j = 1; j <= 2; ++j) pair.g[j - 1] = gauss_element(fundamental_internal(p, j), gp);
    return pair;
}

GroupPair identity_pair(int p) {
    GroupPair pair;
    pair.p = p;
    for (int j = 1; j <= 2; ++j) pair.g[j - 1] = QMat::identity(fundamental_internal(p, j).dim);
    return pair;
}

}  // namespace rank2lab
