#include "rank2lab/conventions.hpp"

namespace rank2lab {

std::string to_string(AlphaOrder v) {
    return v == AlphaOrder::Written ? "written-order (ket fundamental = last letter)"
                                    : "reversed-order (ket fundamental = first letter)";
}
std::string to_string(Theta2Form v) {
    return v == Theta2Form::SameIndex ? "f1^p/f1^2" : "f1^p/f2^2";
}
std::string to_string(CornerEntry v) { return v == CornerEntry::Repeated ? "c2*cb2" : "c1*cb1"; }
std::string to_string(Rank1Orientation v) {
    return v == Rank1Orientation::BarColumn ? "pb column x p row" : "p column x pb row";
}
std::string to_string(MultipletSign v) { return v == MultipletSign::Plus ? "+d^2" : "-d^2"; }
std::string to_string(QuadraticTerm v) {
    return v == QuadraticTerm::Printed ? "18 det^-1 (u cb3)(c3 u)" : "det^-1 [72 (c3 u cb3) u - 36 (u cb3)(c3 u)]";
}
std::string to_string(BraBracketing v) {
    return v == BraBracketing::ClosingAtEnd ? "prefix multiplies the whole sum" : "prefix dropped from the c3 part";
}

nlohmann::json ResolvedConventions::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, s] : selections) {
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [cand, ok] : s.candidates) c[cand] = ok ? "pass" : "fail";
        j[name] = {{"selected", s.selected}, {"candidates", c}};
    }
    return j;
}

}  // namespace rank2lab
