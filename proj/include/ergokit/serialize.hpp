#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "closedform.hpp"
#include "parse.hpp"
#include "structure.hpp"
#include "weyl.hpp"

namespace ergokit {

using json = nlohmann::json;

inline constexpr int report_schema = 1;

inline json complex_json(std::complex<double> z, const char* provenance) {
    return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}, {"provenance", provenance}};
}
inline json complex_json(std::complex<long double> z, const char* provenance) {
    return complex_json(std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag())), provenance);
}

inline json polys_json(const std::vector<RPoly>& p) {
    json a = json::array();
    for (const auto& q : p) a.push_back(q.to_string());
    return a;
}
inline json scalars_json(const std::vector<SymbolicReal>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}
inline json intvec_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json to_json_value(const ExpSum& s) {
    json terms = json::array();
    for (const auto& t : s.terms())
        terms.push_back({{"coeff_re", t.coeff.re.str()},
                         {"coeff_im", t.coeff.im.str()},
                         {"over_two_pi", t.two_pi_power > 0},
                         {"inv_two_pi_power", t.two_pi_power},
                         {"phase", t.phase.to_string()}});
    return terms;
}

inline json to_json_value(const ComplexExact& v) {
    json den = json::array();
    for (const auto& d : v.denominators()) {
        if (d.is_sum)
            den.push_back({{"kind", "sum"}, {"terms", to_json_value(d.sum)}});
        else
            den.push_back({{"kind", "scalar"}, {"scalar", d.scalar.to_string()}});
    }
    return {{"terms", to_json_value(v.numerator())}, {"denominators", den}, {"exact_zero", v.exact_zero()}};
}

inline ExpSum expsum_from_json(const json& terms) {
    ExpSum s;
    for (const auto& t : terms) {
        RatComplex c(Rational(t.at("coeff_re").get<std::string>()), Rational(t.at("coeff_im").get<std::string>()));
        unsigned k = t.contains("inv_two_pi_power") ? t.at("inv_two_pi_power").get<unsigned>()
                                                     : (t.at("over_two_pi").get<bool>() ? 1u : 0u);
        s = s + ExpSum::exp(parse_scalar(t.at("phase").get<std::string>()), c, k);
    }
    return s;
}

inline ComplexExact complex_exact_from_json(const json& j) {
    if (j.at("exact_zero").get<bool>()) return ComplexExact::zero();
    ComplexExact v(expsum_from_json(j.at("terms")));
    if (j.contains("denominators"))
        for (const auto& d : j.at("denominators")) {
            if (d.at("kind") == "sum")
                v.divide_by_sum(expsum_from_json(d.at("terms")));
            else
                v.divide_by_scalar(parse_scalar(d.at("scalar").get<std::string>()));
        }
    return v;
}

inline json to_json_value(const IntegralConditions& c) {
    json a = json::array();
    for (const auto& m : c.conditions)
        a.push_back({{"kind", m.kind == ConditionKind::NotInZStar ? "not_in_Z_star" : "not_in_Z_over_s_minus_Z"},
                     {"scalar", m.scalar.to_string()},
                     {"s", m.s.str()},
                     {"holds", m.holds},
                     {"text", m.describe()}});
    return a;
}

inline json to_json_value(const DependenceWitness& w) {
    return {{"type", "DependenceWitness"},
            {"coefficients", scalars_json(w.coefficients)},
            {"target", w.target.to_string()},
            {"kind", w.kind == DependenceKind::Rational ? "rational" : "irrational_or_zero"},
            {"searched_ring", w.searched_ring},
            {"fresh_symbols", w.fresh_symbols}};
}

inline json to_json_value(const TypeBCertificate& c) {
    return {{"type", "TypeBCertificate"},
            {"f", c.f.to_string()},
            {"g", c.g.to_string()},
            {"c", c.c.to_string()},
            {"d", c.d.str()},
            {"u1", c.u1.str()},
            {"u2", c.u2.str()},
            {"f_not_multiple_of_g", c.f_not_multiple_of_g},
            {"dg_integer_valued", c.dg_integer_valued}};
}

inline json to_json_value(const CounterexampleWitness& w) {
    json j = {{"type", "CounterexampleWitness"},
              {"construction", w.construction},
              {"system", {{"generators", scalars_json(w.system.generators)}}},
              {"t", scalars_json(w.t)},
              {"W", w.W.str()},
              {"r_off", w.r_off.str()},
              {"predicted_value", to_json_value(w.predicted)},
              {"fresh_symbols", w.fresh_symbols}};
    json rec = json::array();
    for (const auto& [name, x] : w.reciprocals) rec.push_back({{"symbol", name}, {"reciprocal_of", x.to_string()}});
    j["reciprocals"] = rec;
    if (w.type_b) j["type_b"] = to_json_value(*w.type_b);
    if (w.dependence) j["dependence"] = to_json_value(*w.dependence);
    return j;
}

inline json to_json_value(const IndependenceCertificate& c) {
    return {{"type", "IndependenceCertificate"}, {"searched_ring", c.searched_ring}, {"statement", c.statement}};
}

inline json to_json_value(const Certificate& c) {
    return std::visit(
        [](const auto& x) -> json {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>)
                return nullptr;
            else
                return to_json_value(x);
        },
        c);
}

inline json to_json_value(const VerificationResult& v) {
    json ms = json::array();
    for (const auto& m : v.measurements) {
        json e = {{"t", scalars_json(m.t)},
                  {"W", m.W.str()},
                  {"r_off", m.r_off.str()},
                  {"measured", complex_json(m.measured, "measured")},
                  {"error_budget", m.error_budget},
                  {"pass", m.pass}};
        if (m.predicted) e["predicted"] = complex_json(*m.predicted, "predicted");
        ms.push_back(e);
    }
    return {{"pass", v.pass}, {"N", v.N}, {"tol", v.tol}, {"assignment", v.assignment}, {"measurements", ms},
            {"warnings", v.warnings}};
}

inline json to_json_value(const ClassificationReport& r) {
    json j = {{"family", polys_json(r.family)},
              {"verdict", to_string(r.verdict)},
              {"basis", to_string(r.basis)},
              {"certificate", to_json_value(r.certificate)},
              {"ring_caveat", r.ring_caveat},
              {"explanation", r.explanation}};
    j["verification"] = r.verification ? to_json_value(*r.verification) : json(nullptr);
    return j;
}

inline json to_json_value(const WeylResult& w) {
    return {{"mean", complex_json(w.mean, "measured")}, {"error_budget", w.error_budget}, {"N_used", w.N_used}};
}

// minimal structural check of a report against the published layout
inline bool report_conforms(const json& j, std::string* why = nullptr) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (!j.is_object()) return fail("report is not an object");
    if (!j.contains("schema") || j["schema"] != report_schema) return fail("missing or wrong schema version");
    if (!j.contains("command") || !j["command"].is_string()) return fail("missing command");
    const std::string cmd = j["command"];
    if (cmd == "classify") {
        for (const char* k : {"verdict", "basis", "certificate", "ring_caveat", "verification"})
            if (!j.contains(k)) return fail(std::string("classify report lacks ") + k);
        if (j["verdict"] == "NotTJE" && (!j["certificate"].is_object() || j["certificate"]["type"] != "CounterexampleWitness"))
            return fail("NotTJE without a counterexample witness");
    }
    // every complex number carries a provenance tag
    std::function<bool(const json&)> walk = [&](const json& x) -> bool {
        if (x.is_object()) {
            if (x.contains("re") && x.contains("im") && !x.contains("provenance")) return false;
            for (const auto& [k, v] : x.items())
                if (!walk(v)) return false;
        } else if (x.is_array()) {
            for (const auto& v : x)
                if (!walk(v)) return false;
        }
        return true;
    };
    if (!walk(j)) return fail("numeric value without provenance");
    return true;
}

}  // namespace ergokit
