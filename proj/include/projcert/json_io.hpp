#pragma once

#include <json.hpp>

#include "projcert/c0_projection.hpp"
#include "projcert/chebyshev.hpp"
#include "projcert/coderivative.hpp"
#include "projcert/l1_ball.hpp"
#include "projcert/measures.hpp"
#include "projcert/sequences.hpp"

// Wire formats:
//   sequences:      {"kind":"finite","head":[...]}
//                   {"kind":"evconst","head":[...],"tail":d}
//                   {"kind":"geotail","head":[...],"geo":d}
//                   {"kind":"cstar","head":[...],"q0":q}
//   atomic measure: {"atoms":[{"t":..,"w":..}, ...]}
//   certificate:    {"coeffs":[...],"A":..,"S":[...],"eps":+-1,"defect":..,...}
// Doubles round-trip losslessly (shortest-representation serialization).

namespace projcert {

using nlohmann::json;

inline void to_json(json& j, const FiniteSeq& x) {
    j = json{{"kind", "finite"}, {"head", x.dense_prefix(x.max_index())}};
}

inline void to_json(json& j, const EvConstSeq& x) {
    j = json{{"kind", "evconst"}, {"head", x.head()}, {"tail", x.tail()}};
}

inline void to_json(json& j, const GeoTailSeq& x) {
    j = json{{"kind", "geotail"}, {"head", x.head()}, {"geo", x.geo()}};
}

inline void to_json(json& j, const CStarFunctional& x) {
    j = json{{"kind", "cstar"},
             {"head", x.rest().dense_prefix(x.rest().max_index())},
             {"q0", x.q0()}};
}

inline void from_json(const json& j, FiniteSeq& x) {
    x = FiniteSeq::from_dense(j.at("head").get<std::vector<double>>());
}

inline void from_json(const json& j, EvConstSeq& x) {
    x = EvConstSeq(j.at("head").get<std::vector<double>>(), j.at("tail").get<double>());
}

inline void from_json(const json& j, GeoTailSeq& x) {
    x = GeoTailSeq(j.at("head").get<std::vector<double>>(), j.at("geo").get<double>());
}

inline void from_json(const json& j, CStarFunctional& x) {
    x = CStarFunctional(j.at("q0").get<double>(),
                        FiniteSeq::from_dense(j.at("head").get<std::vector<double>>()));
}

inline void to_json(json& j, const L1Elem& x) {
    std::visit([&j](const auto& v) { to_json(j, v); }, x);
}

/// Parses any of the four sequence kinds; bare arrays are finite sequences.
inline json sequence_to_json(const L1Elem& x) {
    json j;
    to_json(j, x);
    return j;
}

inline L1Elem l1_elem_from_json(const json& j) {
    if (j.is_array()) return FiniteSeq::from_dense(j.get<std::vector<double>>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") return j.get<FiniteSeq>();
    if (kind == "geotail") return j.get<GeoTailSeq>();
    throw std::invalid_argument("expected an l1 element (finite or geotail), got kind '" + kind + "'");
}

inline void to_json(json& j, const AtomicMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms) atoms.push_back(json{{"t", a.t}, {"w", a.w}});
    j = json{{"atoms", atoms}};
}

inline void from_json(const json& j, AtomicMeasure& m) {
    std::vector<AtomicMeasure::Atom> atoms;
    for (const auto& a : j.at("atoms"))
        atoms.push_back({a.at("t").get<double>(), a.at("w").get<double>()});
    m = AtomicMeasure(std::move(atoms));
}

inline void to_json(json& j, const BestApprox& cert) {
    j = json{{"coeffs", cert.p.coeffs()},
             {"A", cert.A},
             {"S", cert.S},
             {"eps", cert.eps},
             {"defect", cert.defect},
             {"converged", cert.converged},
             {"certificate_applicable", cert.certificate_applicable},
             {"iterations", cert.iterations}};
}

inline void from_json(const json& j, BestApprox& cert) {
    cert.p = Poly(j.at("coeffs").get<std::vector<double>>());
    cert.A = j.at("A").get<double>();
    cert.S = j.at("S").get<std::vector<double>>();
    cert.eps = j.at("eps").get<int>();
    cert.defect = j.value("defect", 0.0);
    cert.converged = j.value("converged", true);
    cert.certificate_applicable = j.value("certificate_applicable", true);
    cert.iterations = j.value("iterations", 0);
}

inline void to_json(json& j, const L1BallProjectionSet& set) {
    j = json{{"upper", sequence_to_json(set.upper)}, {"r", set.radius}};
}

inline void to_json(json& j, const QuotientTrace& tr) {
    j = json{{"t", tr.ts},
             {"value", tr.values},
             {"extrapolated", tr.extrapolated},
             {"approach_decreasing", tr.approach_decreasing},
             {"spread", tr.spread}};
}

inline json report_to_json(const std::string& space, const json& target, const json& candidate,
                           const ExclusionReport& rep) {
    json j{{"space", space},
           {"target", target},
           {"candidate", candidate},
           {"verdict", to_string(rep.verdict)},
           {"best_path", rep.best_path},
           {"extrapolated", rep.extrapolated},
           {"threshold", rep.threshold},
           {"trace", rep.trace}};
    if (rep.expected)
        j["expected"] = *rep.expected;
    else
        j["expected"] = nullptr;
    return j;
}

inline json report_to_json(const std::string& space, const json& target, const json& candidate,
                           const ConsistencyReport& rep) {
    return json{{"space", space},
                {"target", target},
                {"candidate", candidate},
                {"verdict", to_string(rep.verdict)},
                {"max_quotient", rep.max_quotient},
                {"worst_direction", rep.worst_direction},
                {"extrapolated", rep.worst_extrapolated},
                {"note", "CONSISTENT is sample-relative and weaker than membership"}};
}

}  // namespace projcert
