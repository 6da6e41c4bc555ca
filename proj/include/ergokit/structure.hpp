#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exactalg.hpp"
#include "rpoly.hpp"
#include "symreal.hpp"

namespace ergokit {

struct Subtorus {
    std::size_t ambient_dim = 0;
    IntLattice relations;

    std::size_t dimension() const { return ambient_dim - relations.rank(); }
    friend bool operator==(const Subtorus& a, const Subtorus& b) {
        return a.ambient_dim == b.ambient_dim && a.relations == b.relations;
    }
};

enum class DependenceKind { Rational, IrrationalOrZero };

struct DependenceWitness {
    std::vector<SymbolicReal> coefficients;
    RPoly target;
    DependenceKind kind = DependenceKind::IrrationalOrZero;
    std::string searched_ring;
    std::vector<std::string> fresh_symbols;

    // exact recombination plus the kind's side conditions
    bool verify(const std::vector<RPoly>& p, bool constant_free = true) const {
        if (p.size() != coefficients.size()) return false;
        RPoly sum;
        bool any = false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            sum += p[i].scaled(coefficients[i]);
            auto k = classify_scalar(coefficients[i]).kind;
            if (k != ScalarKind::Zero) any = true;
            if (kind == DependenceKind::IrrationalOrZero && k == ScalarKind::NonzeroRational) return false;
        }
        if (!any || sum != target) return false;
        return constant_free ? target.is_rational_plus_real() : target.is_rational();
    }
};

struct TypeBCertificate {
    RPoly f, g;
    SymbolicReal c;
    Rational d;
    Integer u1, u2;
    bool f_not_multiple_of_g = true;
    bool dg_integer_valued = false;

    RPoly p1() const { return (f + g.scaled(c)).scaled(SymbolicReal(u1)); }
    RPoly p2() const { return (f + g.scaled(c + SymbolicReal(d))).scaled(SymbolicReal(u2)); }

    bool verify(const RPoly& q1, const RPoly& q2) const {
        if (!f.is_rational() || !g.is_rational() || g.is_zero()) return false;
        if (!f.constant_term().is_zero() || !g.constant_term().is_zero()) return false;
        if (!is_irrational(c) || d == 0 || u1 == 0 || u2 == 0 || gcd_int(u1, u2) != 1) return false;
        return p1() == q1 && p2() == q2;
    }
};

inline IntLattice rational_dependencies(const std::vector<RPoly>& p, bool constant_free = false) {
    return relation_lattice(p, constant_free);
}

inline Subtorus subtorus_of(const std::vector<RPoly>& p) {
    return Subtorus{p.size(), rational_dependencies(p, false)};
}

namespace detail {

inline std::set<std::string> family_symbols(const std::vector<RPoly>& p) {
    std::set<std::string> s;
    for (const auto& q : p) {
        auto t = q.symbols();
        s.insert(t.begin(), t.end());
    }
    return s;
}

inline std::vector<std::string> fresh_names(const std::set<std::string>& taken, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 1; out.size() < count; ++i) {
        std::string name = "xi" + std::to_string(i);
        while (taken.count(name)) name += "_";
        out.push_back(name);
    }
    return out;
}

// all monomials in `symbols` with total degree <= D
inline std::vector<Monomial> monomials_up_to(const std::vector<std::string>& symbols, unsigned D) {
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> cur;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t idx, unsigned left) {
        if (idx == symbols.size()) {
            out.emplace_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            if (e) cur.emplace_back(symbols[idx], e);
            rec(idx + 1, left - e);
            if (e) cur.pop_back();
        }
    };
    rec(0, D);
    std::sort(out.begin(), out.end());
    return out;
}

struct SearchSpec {
    std::size_t extra_symbols = 1;
    bool constant_free = true;
    std::vector<RatVector> rational_combos;  // sum w_i c_i must be rational
    std::vector<RatVector> nonzero_combos;   // sum w_i c_i must be nonzero
};

inline std::optional<DependenceWitness> search_dependence(const std::vector<RPoly>& p, const SearchSpec& spec) {
    const std::size_t l = p.size();
    if (l == 0 || l > 4) throw std::invalid_argument("dependence search supports 1 <= l <= 4");
    auto sym_set = family_symbols(p);
    std::vector<std::string> syms(sym_set.begin(), sym_set.end());
    auto fresh = fresh_names(sym_set, spec.extra_symbols);
    unsigned delta = 0;
    for (const auto& q : p) delta = std::max(delta, q.coefficient_degree());
    const unsigned dmax = std::min(6u, std::max(1u, static_cast<unsigned>(l) * delta));

    std::string ring = "Q[";
    for (std::size_t i = 0; i < syms.size(); ++i) ring += (i ? ", " : "") + syms[i];
    for (std::size_t i = 0; i < fresh.size(); ++i) ring += (syms.empty() && i == 0 ? "" : ", ") + fresh[i];
    ring += "], total degree <= " + std::to_string(dmax) + ", degree <= 1 in fresh symbols";

    for (std::size_t s = 1; s <= l; ++s) {
        for (unsigned D = 0; D <= dmax; ++D) {
            std::vector<Monomial> basis = monomials_up_to(syms, D);
            if (D >= 1)
                for (const auto& phi : fresh)
                    for (const auto& m : monomials_up_to(syms, D - 1)) basis.push_back(Monomial(phi) * m);
            const std::size_t nb = basis.size();

            std::vector<std::size_t> subset(s);
            for (std::size_t i = 0; i < s; ++i) subset[i] = i;
            for (;;) {
                const std::size_t nu = s * nb;
                auto idx = [&](std::size_t local, std::size_t mu) { return local * nb + mu; };
                std::map<std::pair<std::size_t, Monomial>, RatVector> eqs;
                for (std::size_t a = 0; a < s; ++a) {
                    const auto& coeffs = p[subset[a]].coefficients();
                    for (std::size_t j = spec.constant_free ? 1 : 0; j < coeffs.size(); ++j)
                        for (const auto& [mv, q] : coeffs[j].terms())
                            for (std::size_t mu = 0; mu < nb; ++mu) {
                                Monomial prod = basis[mu] * mv;
                                if (prod.is_constant()) continue;
                                auto& row = eqs[{j, prod}];
                                row.resize(nu);
                                row[idx(a, mu)] += q;
                            }
                }
                RatMatrix M(0, nu);
                for (auto& [k, row] : eqs) M.append_row(row);
                for (const auto& w : spec.rational_combos)
                    for (std::size_t mu = 0; mu < nb; ++mu) {
                        if (basis[mu].is_constant()) continue;
                        RatVector row(nu);
                        for (std::size_t a = 0; a < s; ++a) row[idx(a, mu)] = w[subset[a]];
                        M.append_row(row);
                    }
                std::vector<RatVector> ker;
                if (M.rows() == 0) {
                    for (std::size_t u = 0; u < nu; ++u) {
                        RatVector e(nu);
                        e[u] = 1;
                        ker.push_back(e);
                    }
                } else {
                    ker = rational_kernel(M);
                }

                // each requirement: a set of linear functionals that must not all vanish
                std::vector<std::vector<RatVector>> reqs;
                for (std::size_t a = 0; a < s; ++a) {
                    std::vector<RatVector> fs;
                    for (std::size_t mu = 0; mu < nb; ++mu) {
                        if (basis[mu].is_constant()) continue;
                        RatVector f(nu);
                        f[idx(a, mu)] = 1;
                        fs.push_back(f);
                    }
                    reqs.push_back(fs);
                }
                for (const auto& w : spec.nonzero_combos) {
                    std::vector<RatVector> fs;
                    for (std::size_t mu = 0; mu < nb; ++mu) {
                        RatVector f(nu);
                        for (std::size_t a = 0; a < s; ++a) f[idx(a, mu)] = w[subset[a]];
                        fs.push_back(f);
                    }
                    reqs.push_back(fs);
                }
                auto dot = [](const RatVector& x, const RatVector& y) {
                    Rational t = 0;
                    for (std::size_t i = 0; i < x.size(); ++i)
                        if (!x[i].is_zero() && !y[i].is_zero()) t += x[i] * y[i];
                    return t;
                };
                bool feasible = !ker.empty();
                // the functional each requirement uses: first one nonzero on the kernel
                std::vector<RatVector> chosen;
                for (const auto& fs : reqs) {
                    if (!feasible) break;
                    bool found = false;
                    for (const auto& f : fs) {
                        for (const auto& b : ker)
                            if (!dot(f, b).is_zero()) {
                                found = true;
                                break;
                            }
                        if (found) {
                            chosen.push_back(f);
                            break;
                        }
                    }
                    if (!found) feasible = false;
                }
                if (feasible) {
                    const std::size_t k = ker.size();
                    auto try_lambda = [&](const std::vector<Integer>& lam) -> std::optional<RatVector> {
                        RatVector x(nu);
                        for (std::size_t t = 0; t < k; ++t)
                            if (lam[t] != 0)
                                for (std::size_t u = 0; u < nu; ++u)
                                    if (!ker[t][u].is_zero()) x[u] += Rational(lam[t]) * ker[t][u];
                        for (const auto& fs : reqs) {
                            bool ok = false;
                            for (const auto& f : fs)
                                if (!dot(f, x).is_zero()) {
                                    ok = true;
                                    break;
                                }
                            if (!ok) return std::nullopt;
                        }
                        return x;
                    };
                    std::optional<RatVector> sol;
                    for (std::size_t t = 0; t < k && !sol; ++t) {
                        std::vector<Integer> lam(k);
                        lam[t] = 1;
                        sol = try_lambda(lam);
                    }
                    for (std::size_t t1 = 0; t1 < k && !sol; ++t1)
                        for (std::size_t t2 = t1 + 1; t2 < k && !sol; ++t2)
                            for (int sg : {1, -1}) {
                                std::vector<Integer> lam(k);
                                lam[t1] = 1;
                                lam[t2] = sg;
                                if ((sol = try_lambda(lam))) break;
                            }
                    // moment curve: each requirement fails for at most k-1 values of t
                    for (int t = 2; !sol && t <= static_cast<int>((k + 1) * (reqs.size() + 1)); ++t) {
                        std::vector<Integer> lam(k);
                        Integer pw = 1;
                        for (std::size_t u = 0; u < k; ++u) {
                            lam[u] = pw;
                            pw *= t;
                        }
                        sol = try_lambda(lam);
                    }
                    if (!sol) throw std::logic_error("dependence search: generic point not found");

                    std::vector<SymbolicReal> c(l);
                    for (std::size_t a = 0; a < s; ++a)
                        for (std::size_t mu = 0; mu < nb; ++mu)
                            c[subset[a]] += SymbolicReal::monomial(basis[mu], (*sol)[idx(a, mu)]);
                    for (const auto& ci : c) {
                        if (ci.is_zero()) continue;
                        Rational lead = ci.leading_nonconstant()->second;
                        for (auto& cj : c) cj /= lead;
                        break;
                    }
                    DependenceWitness w;
                    w.coefficients = c;
                    for (std::size_t i = 0; i < l; ++i) w.target += p[i].scaled(c[i]);
                    w.kind = DependenceKind::IrrationalOrZero;
                    w.searched_ring = ring;
                    w.fresh_symbols = fresh;
                    if (!w.verify(p, spec.constant_free)) throw std::logic_error("dependence search: witness failed verification");
                    return w;
                }

                // next subset in lexicographic order
                std::size_t i = s;
                while (i > 0 && subset[i - 1] == l - s + i - 1) --i;
                if (i == 0) break;
                ++subset[i - 1];
                for (std::size_t j = i; j < s; ++j) subset[j] = subset[j - 1] + 1;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Irrational-or-zero coefficients c_i, not all zero, with sum c_i p_i in Q[x]+R,
// searched in Q[input symbols, fresh symbols].
inline std::optional<DependenceWitness> irrational_or_zero_dependence(const std::vector<RPoly>& p,
                                                                      std::size_t extra_symbols = 1,
                                                                      bool constant_free = true) {
    detail::SearchSpec spec;
    spec.extra_symbols = extra_symbols;
    spec.constant_free = constant_free;
    return detail::search_dependence(p, spec);
}

inline std::string searched_ring_description(const std::vector<RPoly>& p, std::size_t extra_symbols = 1) {
    auto sym_set = detail::family_symbols(p);
    auto fresh = detail::fresh_names(sym_set, extra_symbols);
    unsigned delta = 0;
    for (const auto& q : p) delta = std::max(delta, q.coefficient_degree());
    const unsigned dmax = std::min(6u, std::max(1u, static_cast<unsigned>(p.size()) * delta));
    std::string ring = "Q[";
    bool first = true;
    for (const auto& s : sym_set) {
        ring += (first ? "" : ", ") + s;
        first = false;
    }
    for (const auto& s : fresh) {
        ring += (first ? "" : ", ") + s;
        first = false;
    }
    return ring + "], total degree <= " + std::to_string(dmax) + ", degree <= 1 in fresh symbols";
}

// f = s*g for a rational s (f = 0 included)
inline bool is_rational_multiple(const RPoly& f, const RPoly& g) {
    if (f.is_zero()) return true;
    if (g.is_zero() || f.degree() != g.degree()) return false;
    Rational s = f.coefficients().back().constant_term() / g.coefficients().back().constant_term();
    return f == g.scaled(SymbolicReal(s));
}

inline std::optional<TypeBCertificate> type_b_extract(const RPoly& p1, const RPoly& p2) {
    if (!p1.constant_term().is_zero() || !p2.constant_term().is_zero())
        throw std::invalid_argument("type_b_extract: requires p1(0) = p2(0) = 0");
    if (p1.is_rational() || p2.is_rational())
        throw std::invalid_argument("type_b_extract: requires p1, p2 outside Q[x]");
    IntLattice K = rational_dependencies({p1, p2}, false);
    if (K.rank() != 1) return std::nullopt;
    const Integer d1 = K.basis()[0][0], d2 = K.basis()[0][1];
    if (d1 == 0 || d2 == 0) return std::nullopt;

    detail::SearchSpec spec;
    RatVector rcombo{Rational(d2), Rational(-d1)};
    spec.rational_combos.push_back(rcombo);
    spec.nonzero_combos.push_back(rcombo);
    auto w = detail::search_dependence({p1, p2}, spec);
    if (!w) return std::nullopt;
    const SymbolicReal& c1 = w->coefficients[0];
    const SymbolicReal& c2 = w->coefficients[1];
    SymbolicReal rdet = c1 * SymbolicReal(d2) - c2 * SymbolicReal(d1);
    if (classify_scalar(rdet).kind != ScalarKind::NonzeroRational) return std::nullopt;
    const Rational r = rdet.constant_term();

    RPoly q = p1.scaled(c1) + p2.scaled(c2);
    RPoly qp = p1.scaled(SymbolicReal(d1)) + p2.scaled(SymbolicReal(d2));
    if (!q.is_rational() || !qp.is_rational() || qp.is_zero())
        throw std::logic_error("type_b_extract: inconsistent dependence data");

    TypeBCertificate cert;
    cert.f = q.divided(-r);
    cert.g = qp.divided(Rational(d1) * r);
    cert.u1 = -d2;
    cert.u2 = d1;
    cert.c = c1 - SymbolicReal(r / Rational(d2));
    cert.d = r / Rational(d2);

    // canonical normal form
    Rational c0 = cert.c.constant_term();
    if (!c0.is_zero()) {
        cert.f += cert.g.scaled(SymbolicReal(c0));
        cert.c -= SymbolicReal(c0);
    }
    Rational lead = cert.c.leading_nonconstant()->second;
    cert.c /= lead;
    cert.g = cert.g.scaled(SymbolicReal(lead));
    cert.d /= lead;
    if (cert.u1 < 0) {
        cert.u1 = -cert.u1;
        cert.u2 = -cert.u2;
        cert.f = -cert.f;
        cert.g = -cert.g;
    }
    cert.f_not_multiple_of_g = !is_rational_multiple(cert.f, cert.g);
    cert.dg_integer_valued = is_integer_valued(cert.g.scaled(SymbolicReal(cert.d)));
    if (!cert.verify(p1, p2)) throw std::logic_error("type_b_extract: certificate failed recombination");
    return cert;
}

inline bool orbit_in_subtorus(const std::vector<RPoly>& p, const Subtorus& Y, const Integer& W) {
    for (const auto& q : p)
        if (!q.constant_term().is_zero()) throw std::invalid_argument("orbit_in_subtorus: requires p(0) = 0");
    if (Y.ambient_dim != p.size() || !(Y.relations == rational_dependencies(p, false)))
        throw std::invalid_argument("orbit_in_subtorus: subtorus does not match the family");
    for (const auto& k : Y.relations.basis())
        if (!is_integer_valued(reparametrize(combination(k, p), W, 0))) return false;
    return true;
}

}  // namespace ergokit
