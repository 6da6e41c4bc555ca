#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "closedform.hpp"
#include "exactalg.hpp"
#include "rpoly.hpp"
#include "structure.hpp"
#include "symreal.hpp"
#include "weyl.hpp"

namespace ergokit {

// span_Z of the generators plus Z; generators with 1 are Q-independent
struct SpectrumGroup {
    std::vector<SymbolicReal> generators;

    bool independent() const {
        if (generators.empty()) return true;
        std::map<Monomial, std::size_t> idx;
        for (const auto& g : generators)
            for (const auto& [m, q] : g.terms())
                if (!m.is_constant()) idx.emplace(m, idx.size());
        RatMatrix A(idx.size(), generators.size());
        for (std::size_t j = 0; j < generators.size(); ++j)
            for (const auto& [m, q] : generators[j].terms())
                if (!m.is_constant()) A(idx[m], j) = q;
        return rank(A) == generators.size();
    }

    // integer coordinates k with t - sum k_j g_j in Z
    std::optional<IntVector> coordinates(const SymbolicReal& t) const {
        std::map<Monomial, std::size_t> idx;
        for (const auto& g : generators)
            for (const auto& [m, q] : g.terms())
                if (!m.is_constant()) idx.emplace(m, idx.size());
        for (const auto& [m, q] : t.terms())
            if (!m.is_constant() && !idx.count(m)) return std::nullopt;
        const std::size_t n = generators.size();
        RatMatrix A(idx.size(), n + 1);
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [m, q] : generators[j].terms())
                if (!m.is_constant()) A(idx[m], j) = q;
        for (const auto& [m, q] : t.terms())
            if (!m.is_constant()) A(idx[m], n) = q;
        IntVector k(n);
        if (!idx.empty()) {
            Rref e = rref(A);
            if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
            for (std::size_t i = 0; i < e.pivots.size(); ++i) {
                Rational v = e.reduced(i, n);
                if (!is_integer(v)) return std::nullopt;
                k[e.pivots[i]] = num(v);
            }
        }
        SymbolicReal rest = t;
        for (std::size_t j = 0; j < n; ++j) rest -= generators[j] * SymbolicReal(k[j]);
        if (!rest.is_rational() || !is_integer(rest.constant_term())) return std::nullopt;
        return k;
    }
    bool contains(const SymbolicReal& t) const { return coordinates(t).has_value(); }
};

struct RotationSystem {
    Integer D = 1;
    SpectrumGroup group;
};

// monomials of the c_i as rotation coordinates; D clears every denominator
inline RotationSystem build_rotation_system(const std::vector<SymbolicReal>& c) {
    RotationSystem rs;
    std::set<Monomial> mons;
    for (const auto& x : c)
        for (const auto& [m, q] : x.terms()) {
            rs.D = lcm_int(rs.D, den(q));
            if (!m.is_constant()) mons.insert(m);
        }
    for (const auto& m : mons) rs.group.generators.push_back(SymbolicReal::monomial(m, 1));
    return rs;
}

struct CounterexampleWitness {
    SpectrumGroup system;
    std::vector<SymbolicReal> t;
    Integer W = 1, r_off = 0;
    ComplexExact predicted;
    std::string construction;
    std::vector<std::string> fresh_symbols;
    std::vector<std::pair<std::string, SymbolicReal>> reciprocals;  // name = 1 / value
    std::optional<TypeBCertificate> type_b;
    std::optional<DependenceWitness> dependence;

    // invariants: nonzero prediction, weights inside the spectrum group
    bool self_check() const {
        if (predicted.exact_zero() || !system.independent()) return false;
        for (const auto& x : t)
            if (!system.contains(x)) return false;
        return W >= 1;
    }
};

struct IndependenceCertificate {
    std::string searched_ring;
    std::string statement;
};

enum class Verdict { TJE, NotTJE, Undetermined };
enum class Basis { TheoremB_i, TheoremB_ii, TheoremD, Corollary_single, Counterexample, None };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::TJE: return "TJE";
        case Verdict::NotTJE: return "NotTJE";
        default: return "Undetermined";
    }
}
inline const char* to_string(Basis b) {
    switch (b) {
        case Basis::TheoremB_i: return "TheoremB_i";
        case Basis::TheoremB_ii: return "TheoremB_ii";
        case Basis::TheoremD: return "TheoremD";
        case Basis::Corollary_single: return "Corollary_single";
        case Basis::Counterexample: return "Counterexample";
        default: return "None";
    }
}

using Certificate =
    std::variant<std::monostate, IndependenceCertificate, DependenceWitness, TypeBCertificate, CounterexampleWitness>;

struct Measurement {
    std::vector<SymbolicReal> t;
    Integer W = 1, r_off = 0;
    std::complex<double> measured;
    std::optional<std::complex<double>> predicted;
    double error_budget = 0;
    bool pass = false;
};

struct VerificationResult {
    bool pass = false;
    std::uint64_t N = 0;
    double tol = 0;
    std::map<std::string, std::string> assignment;  // symbol -> decimal value used
    std::vector<Measurement> measurements;
    std::vector<std::string> warnings;
};

struct ClassificationReport {
    std::vector<RPoly> family;
    Verdict verdict = Verdict::Undetermined;
    Basis basis = Basis::None;
    Certificate certificate;
    std::string ring_caveat;
    std::string explanation;
    std::optional<VerificationResult> verification;

    const CounterexampleWitness* witness() const { return std::get_if<CounterexampleWitness>(&certificate); }
};

namespace detail {

inline void require_zero_constants(const std::vector<RPoly>& p, const char* who) {
    for (const auto& q : p)
        if (!q.constant_term().is_zero()) throw std::invalid_argument(std::string(who) + ": requires p(0) = 0");
}

// least S with every extra polynomial and every K-combination integer-valued along S n
inline Integer least_step(const std::vector<RPoly>& family, const std::vector<RPoly>& extra) {
    std::vector<RPoly> checks = extra;
    const IntLattice K = relation_lattice(family, false);
    for (const auto& k : K.basis()) checks.push_back(combination(k, family));
    Integer L = 1;
    for (const auto& g : checks)
        for (const auto& q : g.rational_coefficients()) L = lcm_int(L, den(q));
    for (Integer S = 1; S <= L; ++S) {
        bool ok = true;
        for (const auto& g : checks)
            if (!is_integer_valued(reparametrize(g, S, 0))) {
                ok = false;
                break;
            }
        if (ok) return S;
    }
    throw std::logic_error("least_step: no step found");
}

inline ClassificationReport undetermined(std::vector<RPoly> family, std::string why) {
    ClassificationReport r;
    r.family = std::move(family);
    r.verdict = Verdict::Undetermined;
    r.explanation = std::move(why);
    return r;
}

inline ClassificationReport not_tje(std::vector<RPoly> family, CounterexampleWitness w, Basis basis, std::string why) {
    if (!w.self_check()) throw std::logic_error("counterexample witness failed its self-check: " + w.construction);
    ClassificationReport r;
    r.family = std::move(family);
    r.verdict = Verdict::NotTJE;
    r.basis = basis;
    r.explanation = std::move(why);
    r.certificate = std::move(w);
    return r;
}

// rotation built from an irrational-or-zero dependence sum c_i p_i = q: weights t = D c
inline std::optional<CounterexampleWitness> dependence_counterexample(const std::vector<RPoly>& p,
                                                                      const DependenceWitness& dep, std::string& why) {
    RotationSystem rs = build_rotation_system(dep.coefficients);
    CounterexampleWitness w;
    w.system = rs.group;
    w.dependence = dep;
    w.fresh_symbols = dep.fresh_symbols;
    for (const auto& c : dep.coefficients) w.t.push_back(c * SymbolicReal(rs.D));
    RPoly q = dep.target;
    if (!q.is_rational() || !q.constant_term().is_zero()) {
        why = "dependence target has a nonzero constant term";
        return std::nullopt;
    }
    std::vector<std::size_t> irr;
    std::vector<RPoly> extra{q.scaled(SymbolicReal(rs.D))};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_rational())
            extra.push_back(p[i]);
        else
            irr.push_back(i);
    }
    std::vector<RPoly> irr_family;
    for (auto i : irr) irr_family.push_back(p[i]);
    IntLattice K = irr_family.empty() ? IntLattice() : relation_lattice(irr_family, false);
    if (K.rank() == 0) {
        w.predicted = ComplexExact::one();
        for (auto i : irr) w.predicted = w.predicted * star_ratio_integral(-w.t[i]);
        w.construction = "rotation from an irrational-or-zero dependence; irrational members independent";
    } else if (irr.size() == 2 && K.rank() == 1) {
        const auto& k = K.basis()[0];
        auto I = subtorus_integral_2d(-w.t[irr[0]], -w.t[irr[1]], k[0], k[1]);
        w.predicted = I.value;
        w.construction = "rotation from an irrational-or-zero dependence; integral over a 1-dimensional subtorus";
    } else {
        why = "orbit closure is a subtorus shape without a proved closed form";
        return std::nullopt;
    }
    if (w.predicted.exact_zero()) {
        why = "predicted limit vanishes for the chosen witness";
        return std::nullopt;
    }
    extra.erase(std::remove_if(extra.begin(), extra.end(), [](const RPoly& g) { return g.is_zero(); }), extra.end());
    w.W = least_step(p, extra);
    w.r_off = 0;
    return w;
}

}  // namespace detail

// decision for a pair with p(0) = 0
inline ClassificationReport classify_pair(const RPoly& p1, const RPoly& p2) {
    std::vector<RPoly> fam{p1, p2};
    detail::require_zero_constants(fam, "classify_pair");
    const std::string ring = searched_ring_description(fam);
    auto dep = irrational_or_zero_dependence(fam);
    if (!dep) {
        ClassificationReport r;
        r.family = fam;
        r.verdict = Verdict::TJE;
        r.basis = Basis::TheoremB_i;
        r.ring_caveat = "no irrational-or-zero dependence exists within " + ring;
        r.certificate = IndependenceCertificate{ring, "no c1, c2 in (R\\Q*) not both zero with c1 p1 + c2 p2 in Q[x] + R"};
        r.explanation = "TJE: the pair is R\\Q*-independent";
        return r;
    }

    std::optional<TypeBCertificate> cert;
    if (!p1.is_rational() && !p2.is_rational()) cert = type_b_extract(p1, p2);

    if (cert && cert->f_not_multiple_of_g && abs_int(cert->u1) == 1 && abs_int(cert->u2) == 1 && cert->dg_integer_valued) {
        ClassificationReport r;
        r.family = fam;
        r.verdict = Verdict::TJE;
        r.basis = Basis::TheoremB_ii;
        r.ring_caveat = "dependence witness found within " + ring;
        r.certificate = *cert;
        r.explanation = "TJE: Type-B with |u1| = |u2| = 1, f not a multiple of g, dg integer-valued";
        return r;
    }

    if (cert) {
        const TypeBCertificate& B = *cert;
        CounterexampleWitness w;
        w.type_b = B;
        if (!B.f_not_multiple_of_g) {
            // f = s g: weights with t1 u1 c' + t2 u2 (c' + d) = c'
            Rational s = B.f.is_zero() ? Rational(0)
                                       : B.f.coefficients().back().constant_term() / B.g.coefficients().back().constant_term();
            SymbolicReal cp = B.c + SymbolicReal(s);
            auto taken = detail::family_symbols(fam);
            std::string tau_name = detail::fresh_names(taken, 1)[0];
            SymbolicReal tau = SymbolicReal::symbol(tau_name);
            SymbolicReal t1 = SymbolicReal(Rational(1) / Rational(B.u1)) - SymbolicReal(B.u2) * (cp + SymbolicReal(B.d)) * tau;
            SymbolicReal t2 = SymbolicReal(B.u1) * cp * tau;
            auto lim = limit_case2(B.g, cp, B.d, B.u1, B.u2, t1, t2, Rational(1), Rational(0));
            if (!std::holds_alternative<ComplexExact>(lim))
                return detail::undetermined(fam, "limit for f a multiple of g undetermined: " + std::get<Undetermined>(lim).reason);
            w.t = {t1, t2};
            w.system.generators = {t1, t2};
            w.fresh_symbols = {tau_name};
            w.predicted = std::get<ComplexExact>(lim);
            w.construction = "f a multiple of g: s = 1, t = 0";
            RPoly p3 = p1.scaled(t1) + p2.scaled(t2);
            w.W = detail::least_step({p1, p2, p3}, {});
        } else if (abs_int(B.u1 * B.u2) > 1) {
            Rational a = Rational(1) / (Rational(B.u2) * B.d);
            Integer M = den(a / Rational(B.u1));
            SymbolicReal gen = B.c / Rational(M);
            SymbolicReal t2 = B.c * SymbolicReal(a);
            SymbolicReal t1 = B.c * SymbolicReal(-(a * Rational(B.u2) / Rational(B.u1)));
            auto lim = limit_case1(B, t1, t2);
            if (!std::holds_alternative<ComplexExact>(lim))
                return detail::undetermined(fam, "limit for |u1 u2| > 1 undetermined: " + std::get<Undetermined>(lim).reason);
            w.t = {t1, t2};
            w.system.generators = {gen};
            w.predicted = std::get<ComplexExact>(lim);
            w.construction = "|u1 u2| > 1: a = 1/(u2 d), M = " + M.str();
            RPoly p3 = p1.scaled(t1) + p2.scaled(t2);
            w.W = detail::least_step({p1, p2, p3}, {});
        } else {
            RPoly dg = B.g.scaled(SymbolicReal(B.d));
            Integer r = 1;
            while (is_integer(dg(Rational(r)).constant_term())) ++r;
            auto v = case22_value(B.f, B.g, B.c, B.d, static_cast<int>(B.u2 * B.u1), r);
            w.t = {v.t1, v.t2};
            w.system.generators = {B.c / B.d};
            w.predicted = v.value;
            w.W = v.W;
            w.r_off = r;
            w.construction = "|u1 u2| = 1, dg not integer-valued: r_off = " + r.str();
        }
        auto rep = detail::not_tje(fam, w, Basis::Counterexample, "not TJE, " + w.construction);
        rep.ring_caveat = "dependence witness found within " + ring;
        return rep;
    }

    std::string why;
    auto w = detail::dependence_counterexample(fam, *dep, why);
    if (!w) return detail::undetermined(fam, "dependent pair that is not Type-B: " + why);
    auto rep = detail::not_tje(fam, *w, Basis::Counterexample, "Theorem B fails: dependent pair that is not Type-B");
    rep.ring_caveat = "dependence witness found within " + ring;
    return rep;
}

// classify_pair after removing integer constant terms; other constants are left open
inline ClassificationReport classify_pair_relaxed(const RPoly& p1, const RPoly& p2) {
    auto k1 = p1.constant_term(), k2 = p2.constant_term();
    if (k1.is_zero() && k2.is_zero()) return classify_pair(p1, p2);
    if (is_integer(k1) && is_integer(k2)) {
        auto r = classify_pair(p1 - RPoly(k1), p2 - RPoly(k2));
        r.family = {p1, p2};
        r.explanation += " (integer constant terms removed; they only rotate the averages by a constant)";
        return r;
    }
    return detail::undetermined({p1, p2},
                                "nonzero non-integer constant terms: the criterion needs p(0) = 0, and a shift by 1/4 "
                                "already turns a TJE pair into a non-TJE one");
}

enum class FamilyClass { rational_plus_real, q_independent_irrationals };

inline ClassificationReport classify_family_special(const std::vector<RPoly>& p, FamilyClass cls) {
    if (p.empty()) throw std::invalid_argument("classify_family_special: empty family");
    if (cls == FamilyClass::rational_plus_real) {
        for (const auto& q : p)
            if (!q.is_rational_plus_real())
                return detail::undetermined(p, "class hypothesis fails: " + q.to_string() + " is not in Q[x] + R");
    } else {
        std::vector<RPoly> irr;
        for (const auto& q : p)
            if (!q.is_rational()) irr.push_back(q);
        if (!irr.empty() && relation_lattice(irr, false).rank() != 0)
            return detail::undetermined(p, "class hypothesis fails: the irrational members are Q-dependent");
    }
    for (const auto& q : p)
        if (!q.constant_term().is_zero())
            return detail::undetermined(p, "nonzero constant terms are outside the proved criteria");

    if (p.size() == 1) {
        const RPoly& q = p[0];
        ClassificationReport r;
        r.family = p;
        r.basis = Basis::Corollary_single;
        if (q.is_zero()) return detail::undetermined(p, "zero polynomial");
        // p = x * (rational polynomial) with x irrational
        SymbolicReal x = q.coefficients().back();
        bool proportional = is_irrational(x);
        std::vector<Rational> ratio;
        if (proportional) {
            auto lead = x.leading_nonconstant();
            for (const auto& cj : q.coefficients()) {
                Rational k = cj.coefficient(lead->first) / lead->second;
                if (cj != x * SymbolicReal(k)) {
                    proportional = false;
                    break;
                }
                ratio.push_back(k);
            }
        }
        if (!proportional) {
            r.verdict = Verdict::TJE;
            r.certificate = IndependenceCertificate{"exact", "p is not an irrational multiple of a rational polynomial"};
            r.explanation = "not TJE: p is not of the form c q with c irrational and q rational";
            return r;
        }
        RPoly qr = RPoly::from_rationals(ratio);
        std::string name = detail::fresh_names(detail::family_symbols(p), 1)[0];
        name = "recip_" + name;
        SymbolicReal t = SymbolicReal::symbol(name);
        CounterexampleWitness w;
        w.t = {t};
        w.system.generators = {t};
        w.reciprocals.emplace_back(name, x);
        w.fresh_symbols = {name};
        w.predicted = star_ratio_integral(-t);
        w.W = detail::least_step(p, {qr});
        w.construction = "p = x q with x = " + x.to_string() + ", weight t = 1/x";
        return detail::not_tje(p, w, Basis::Corollary_single, "p is an irrational multiple of a rational polynomial");
    }

    if (p.size() > 4) return detail::undetermined(p, "dependence search supports at most 4 polynomials");
    const std::string ring = searched_ring_description(p);
    auto dep = irrational_or_zero_dependence(p);
    if (!dep) {
        ClassificationReport r;
        r.family = p;
        r.verdict = Verdict::TJE;
        r.basis = Basis::TheoremD;
        r.ring_caveat = "no irrational-or-zero dependence exists within " + ring;
        r.certificate = IndependenceCertificate{ring, "family is R\\Q*-independent"};
        r.explanation = "TJE: R\\Q*-independent family in the special class";
        return r;
    }
    std::string why;
    auto w = detail::dependence_counterexample(p, *dep, why);
    if (!w) return detail::undetermined(p, "dependent family: " + why);
    auto rep = detail::not_tje(p, *w, Basis::Counterexample, "Corollary 3.8: the family is R\\Q*-dependent");
    rep.ring_caveat = "dependence witness found within " + ring;
    return rep;
}

// ---------------------------------------------------------------- verification

namespace detail {

inline std::vector<std::string> default_constants() {
    return {"sqrt3", "sqrt5", "sqrt7", "sqrt11", "sqrt13", "sqrt17", "sqrt19", "sqrt23", "sqrt29", "sqrt31"};
}

// fills missing symbols: reciprocals exactly, everything else from the default list
inline NumericAssignment complete_assignment(const ClassificationReport& rep, const NumericAssignment& given,
                                             const std::set<std::string>& needed) {
    NumericAssignment nu = given;
    const auto* w = rep.witness();
    auto defaults = default_constants();
    std::size_t next = 0;
    auto used = [&](const HighPrec& v) {
        for (const auto& [k, x] : nu.values())
            if (x == v) return true;
        return false;
    };
    std::vector<std::string> order(needed.begin(), needed.end());
    for (const auto& s : order) {
        if (nu.has(s)) continue;
        bool is_recip = false;
        if (w)
            for (const auto& [name, x] : w->reciprocals)
                if (name == s) is_recip = true;
        if (is_recip) continue;
        while (next < defaults.size() && used(named_constant(defaults[next]))) ++next;
        if (next >= defaults.size()) throw std::runtime_error("verify: ran out of default constants");
        nu.set(s, defaults[next++]);
    }
    if (w)
        for (const auto& [name, x] : w->reciprocals) {
            if (nu.has(name)) continue;
            for (const auto& s : x.symbols())
                if (!nu.has(s)) nu.set(s, defaults.at(next++));
            nu.set(name, HighPrec(1) / evaluate(x, nu));
        }
    return nu;
}

}  // namespace detail

struct VerifyOptions {
    std::uint64_t N = 1000000;
    double tol = 1e-2;
    WeylOptions weyl;
};

// TJE: panel of weights drawn from the first family symbol (or theta)
inline std::vector<std::vector<SymbolicReal>> tje_panel(const std::vector<RPoly>& family) {
    auto syms = detail::family_symbols(family);
    SymbolicReal g = SymbolicReal::symbol(syms.empty() ? std::string("theta") : *syms.begin());
    std::vector<SymbolicReal> vals{g, -g, g + SymbolicReal(1), g - SymbolicReal(1), -g + SymbolicReal(1), -g - SymbolicReal(1)};
    std::vector<std::vector<SymbolicReal>> out;
    const std::size_t l = family.size();
    if (l == 2) {
        for (const auto& a : vals)
            for (const auto& b : vals) out.push_back({a, b});
        for (const auto& a : {g, -g}) {
            out.push_back({a, SymbolicReal()});
            out.push_back({SymbolicReal(), a});
        }
    } else {
        for (std::size_t i = 0; i < l; ++i)
            for (const auto& a : vals) {
                std::vector<SymbolicReal> t(l);
                t[i] = a;
                out.push_back(t);
            }
        out.push_back(std::vector<SymbolicReal>(l, g));
    }
    return out;
}

inline VerificationResult verify_report(const ClassificationReport& rep, const NumericAssignment& given,
                                        const VerifyOptions& opt = {}) {
    VerificationResult res;
    res.N = opt.N;
    res.tol = opt.tol;
    std::set<std::string> needed = detail::family_symbols(rep.family);
    const auto* w = rep.witness();
    std::vector<std::vector<SymbolicReal>> panel;
    std::vector<std::pair<Integer, Integer>> progressions;
    if (rep.verdict == Verdict::NotTJE) {
        if (!w) throw std::invalid_argument("verify_report: NotTJE report without a witness");
        for (const auto& t : w->t)
            for (const auto& s : t.symbols()) needed.insert(s);
        for (const auto& s : w->predicted.symbols()) needed.insert(s);
    } else if (rep.verdict == Verdict::TJE) {
        panel = tje_panel(rep.family);
        for (const auto& t : panel)
            for (const auto& x : t)
                for (const auto& s : x.symbols()) needed.insert(s);
        progressions = {{1, 0}, {1, 1}, {2, 0}, {2, 1}};
    } else {
        throw std::invalid_argument("verify_report: nothing to verify for an Undetermined verdict");
    }
    NumericAssignment nu = detail::complete_assignment(rep, given, needed);
    for (const auto& [k, v] : nu.values()) res.assignment[k] = v.str(30);
    // symbolic irrationals that the numeric values make (nearly) rational
    std::vector<SymbolicReal> scalars;
    for (const auto& q : rep.family)
        for (const auto& c : q.coefficients()) scalars.push_back(c);
    if (w)
        for (const auto& t : w->t) scalars.push_back(t);
    for (const auto& x : scalars)
        if (auto msg = consistency_warning(x, nu)) res.warnings.push_back(*msg);

    auto run = [&](const std::vector<SymbolicReal>& t, const Integer& W, const Integer& r) {
        WeylJob job;
        job.polynomials = rep.family;
        job.weights = t;
        job.W = W;
        job.r_off = r;
        job.N = opt.N;
        job.assignment = nu;
        return weyl_average(job, opt.weyl);
    };

    if (rep.verdict == Verdict::NotTJE) {
        auto wr = run(w->t, w->W, w->r_off);
        auto pred = w->predicted.evaluate(nu);
        Measurement m;
        m.t = w->t;
        m.W = w->W;
        m.r_off = w->r_off;
        m.measured = wr.mean;
        m.predicted = std::complex<double>(static_cast<double>(pred.real()), static_cast<double>(pred.imag()));
        m.error_budget = wr.error_budget;
        m.pass = std::abs(m.measured - *m.predicted) <= opt.tol && std::abs(m.measured) >= std::abs(*m.predicted) / 2;
        res.measurements.push_back(m);
        res.pass = m.pass;
        return res;
    }
    res.pass = true;
    for (const auto& [W, r] : progressions)
        for (const auto& t : panel) {
            bool all_int = std::all_of(t.begin(), t.end(), [](const SymbolicReal& x) { return is_integer(x); });
            if (all_int) continue;
            auto wr = run(t, W, r);
            Measurement m;
            m.t = t;
            m.W = W;
            m.r_off = r;
            m.measured = wr.mean;
            m.error_budget = wr.error_budget;
            m.pass = std::abs(m.measured) <= opt.tol + wr.error_budget;
            res.pass = res.pass && m.pass;
            res.measurements.push_back(m);
        }
    return res;
}

}  // namespace ergokit
