#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <ergokit/ergokit.hpp>

namespace corpus {

using ergokit::Basis;
using ergokit::RPoly;
using ergokit::Verdict;

struct Entry {
    std::vector<std::string> family;
    Verdict verdict;
    Basis basis;
};

// classifier corpus with expected verdicts
inline std::vector<Entry> classifier() {
    return {
        {{"n^3 + a*n^2 + a^2*n", "n^2 + a*n"}, Verdict::TJE, Basis::TheoremB_i},
        {{"n^2 + c*n", "n^2 + (c+1)*n"}, Verdict::TJE, Basis::TheoremB_ii},
        {{"n^3 + c*n^2/4", "n^3 + (c+1)*n^2/4"}, Verdict::NotTJE, Basis::Counterexample},
        {{"c*n", "c*n^2"}, Verdict::TJE, Basis::TheoremB_i},
        {{"c*n*(n+1)/2"}, Verdict::NotTJE, Basis::Corollary_single},
    };
}

// triples for the relation-lattice brute force
inline std::vector<std::vector<std::string>> triples() {
    return {
        {"n^3 + a*n^2 + a^2*n", "n^2 + a*n", "a*n"},
        {"n^2 + c*n", "n^2 + (c+1)*n", "n"},
        {"n^3 + c*n^2/4", "n^3 + (c+1)*n^2/4", "n^2/4"},
        {"c*n", "c*n^2", "n^2/2"},
        {"c*n*(n+1)/2", "c*n", "n/2"},
        {"n^2/2 + c*n", "c*n", "n^3/3"},
        {"c*n^2", "(c+1)*n^2", "n^2"},
        {"a*n", "b*n", "(a+b)*n"},
        {"n^2 + c*n", "2*n^2 + 2*c*n + n/3", "c^2*n"},
    };
}

inline std::vector<RPoly> parse_all(const std::vector<std::string>& v) {
    std::vector<RPoly> out;
    for (const auto& s : v) out.push_back(ergokit::parse_poly(s));
    return out;
}

using namespace ergokit;

inline ClassificationReport classify_any(const std::vector<RPoly>& p) {
    if (p.size() == 2) return classify_pair(p[0], p[1]);
    bool rpr = std::all_of(p.begin(), p.end(), [](const RPoly& q) { return q.is_rational_plus_real(); });
    return classify_family_special(p, rpr ? FamilyClass::rational_plus_real : FamilyClass::q_independent_irrationals);
}

// re-derive each certificate from scratch
inline bool certificate_holds(const ClassificationReport& r) {
    if (const auto* w = r.witness()) {
        if (!w->self_check()) return false;
        if (w->type_b && !w->type_b->verify(r.family[0], r.family[1])) return false;
        if (w->dependence && !w->dependence->verify(r.family)) return false;
        return true;
    }
    if (const auto* b = std::get_if<TypeBCertificate>(&r.certificate)) return b->verify(r.family[0], r.family[1]);
    if (std::holds_alternative<IndependenceCertificate>(r.certificate)) {
        if (r.basis == Basis::Corollary_single) return true;
        return !irrational_or_zero_dependence(r.family).has_value();
    }
    return false;
}

}  // namespace corpus
