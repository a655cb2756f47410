#pragma once
// Variant choices for formula readings that admit more than one candidate.
// Each choice is settled at run time by an exact check (see systems.hpp) and
// written into every report.

#include "json.hpp"

#include <map>
#include <string>

namespace rank2lab {

// How a multi-letter alpha subscript maps to a ket (bra) word.
//   Written:  alpha_w = <k|K X-_{w1}..X-_{wn}|k>/<k|K|k>, k = last letter;
//             barred  <k|X+_{w1}..X+_{wn} K|k>/<k|K|k>, k = first letter.
//   Reversed: the subscript read right to left.
enum class AlphaOrder { Written, Reversed };

// Second theta: f1^p / f1^2 as printed, or f1^p / f2^2.
enum class Theta2Form { SameIndex, CrossIndex };

// Lower-right entry of the A2-10 source matrix: c2 cb2 (printed) or c1 cb1.
enum class CornerEntry { Repeated, Symmetric };

// B2-10 rank-one term: entry (a,b) = pb_a p_b, or p_a pb_b.
enum class Rank1Orientation { BarColumn, PlainColumn };

// Sign in front of the d^2 corrections of the G2-01 multiplet.
enum class MultipletSign { Plus, Minus };

// G2-10 quadratic c3 cb3 term: 18 det^-1 (u cb3)(c3 u) as printed, or
// det^-1 [72 (c3 u cb3) u - 36 (u cb3)(c3 u)].
enum class QuadraticTerm { Printed, Rebalanced };

// Reading of the unbalanced G2-10 bra display <2|X+_2 L+.
enum class BraBracketing { ClosingAtEnd, PrefixDropped };

struct Conventions {
    AlphaOrder alpha_order = AlphaOrder::Written;
    Theta2Form theta2 = Theta2Form::CrossIndex;
    CornerEntry corner = CornerEntry::Symmetric;
    Rank1Orientation rank1 = Rank1Orientation::BarColumn;
    MultipletSign multiplet_sign = MultipletSign::Minus;
    QuadraticTerm quadratic = QuadraticTerm::Rebalanced;
    BraBracketing bracketing = BraBracketing::ClosingAtEnd;
};

std::string to_string(AlphaOrder v);
std::string to_string(Theta2Form v);
std::string to_string(CornerEntry v);
std::string to_string(Rank1Orientation v);
std::string to_string(MultipletSign v);
std::string to_string(QuadraticTerm v);
std::string to_string(BraBracketing v);

// Outcome of one variant selection: every candidate with its verdict.
struct Selection {
    std::string name;
    std::string selected;
    std::map<std::string, bool> candidates;  // candidate -> passed
};

struct ResolvedConventions {
    Conventions conv;
    std::map<std::string, Selection> selections;
    nlohmann::json to_json() const;
};

}  // namespace rank2lab
