#pragma once
// Fundamental representations built as lowering orbits of the highest vector.

#include "rank2lab/algebra.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace rank2lab {

using Word = std::vector<int>;  // letters 1 or 2

// Basis vector X-_{w1} X-_{w2} ... |j> (rightmost letter applied first).
struct WeightWord {
    Word word;
    std::array<int, 2> weight{};
};

struct Representation {
    Algebra algebra = Algebra::A2;
    int fundamental = 1;  // label as named for the algebra
    int internal = 1;     // label in the shared p-indexed convention
    int p = 1;
    size_t dim = 0;
    std::vector<WeightWord> basis;
    std::array<QMat, 2> h, Xp, Xm;

    const QMat& raise(int i) const { return Xp.at(i - 1); }
    const QMat& lower(int i) const { return Xm.at(i - 1); }
    const QMat& gen(int signed_letter) const { return signed_letter > 0 ? raise(signed_letter) : lower(-signed_letter); }
};

Representation build_fundamental(Algebra a, int label);

// The same representation, built once per process.
const Representation& fundamental(Algebra a, int label);
// Lookup by p and internal label (A2, C2 or G2 naming).
const Representation& fundamental_internal(int p, int internal);

struct RelationReport {
    bool ok = true;
    std::string first_failure;
    int checked = 0;
};

RelationReport verify_relations(const Representation& rep);

QMat grading_matrix(const Representation& rep, Algebra a, const GradingSpec& g);

nlohmann::json rep_to_json(const Representation& rep);
Representation rep_from_json(const nlohmann::json& j);

// Coordinates of <j| X+_{w1} ... X+_{wn} as a row vector.
std::vector<Q> bra_vector(const Representation& rep, const Word& w);
// Coordinates of X-_{w1} ... X-_{wn} |j> as a column vector.
std::vector<Q> ket_vector(const Representation& rep, const Word& w);

std::string word_string(const Word& w);

}  // namespace rank2lab
