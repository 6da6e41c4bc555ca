#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exactalg.hpp"
#include "symreal.hpp"

namespace ergokit {

// Polynomial in n with SymbolicReal coefficients; coefficient index = power.
class RPoly {
public:
    RPoly() = default;
    RPoly(std::vector<SymbolicReal> coeffs) : coeffs_(std::move(coeffs)) { trim(); }  // NOLINT implicit
    RPoly(const SymbolicReal& constant) : coeffs_{constant} { trim(); }                // NOLINT implicit
    RPoly(int constant) : RPoly(SymbolicReal(constant)) {}                             // NOLINT implicit

    static RPoly variable() { return RPoly(std::vector<SymbolicReal>{0, 1}); }
    static RPoly term(const SymbolicReal& coeff, unsigned power) {
        std::vector<SymbolicReal> c(power + 1);
        c[power] = coeff;
        return RPoly(std::move(c));
    }
    static RPoly from_rationals(const std::vector<Rational>& q) {
        std::vector<SymbolicReal> c(q.begin(), q.end());
        return RPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<SymbolicReal>& coefficients() const { return coeffs_; }
    SymbolicReal coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : SymbolicReal(); }
    SymbolicReal constant_term() const { return coeff(0); }

    bool is_rational() const {
        for (const auto& c : coeffs_)
            if (!c.is_rational()) return false;
        return true;
    }
    // rational except possibly the constant term
    bool is_rational_plus_real() const {
        for (std::size_t j = 1; j < coeffs_.size(); ++j)
            if (!coeffs_[j].is_rational()) return false;
        return true;
    }
    std::vector<Rational> rational_coefficients() const {
        std::vector<Rational> out;
        for (const auto& c : coeffs_) {
            auto q = c.as_rational();
            if (!q) throw std::domain_error("polynomial has an irrational coefficient: " + to_string());
            out.push_back(*q);
        }
        return out;
    }

    std::set<std::string> symbols() const {
        std::set<std::string> s;
        for (const auto& c : coeffs_) {
            auto t = c.symbols();
            s.insert(t.begin(), t.end());
        }
        return s;
    }

    // largest total degree of a coefficient monomial
    unsigned coefficient_degree() const {
        unsigned d = 0;
        for (const auto& c : coeffs_) d = std::max(d, c.degree());
        return d;
    }

    RPoly& operator+=(const RPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        trim();
        return *this;
    }
    RPoly& operator-=(const RPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
        trim();
        return *this;
    }
    friend RPoly operator+(RPoly a, const RPoly& b) { return a += b; }
    friend RPoly operator-(RPoly a, const RPoly& b) { return a -= b; }
    friend RPoly operator-(const RPoly& a) { return a.scaled(SymbolicReal(-1)); }
    friend RPoly operator*(const RPoly& a, const RPoly& b) {
        if (a.is_zero() || b.is_zero()) return RPoly();
        std::vector<SymbolicReal> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return RPoly(std::move(c));
    }
    RPoly scaled(const SymbolicReal& s) const {
        std::vector<SymbolicReal> c = coeffs_;
        for (auto& x : c) x = x * s;
        return RPoly(std::move(c));
    }
    RPoly divided(const Rational& q) const {
        std::vector<SymbolicReal> c = coeffs_;
        for (auto& x : c) x /= q;
        return RPoly(std::move(c));
    }
    RPoly pow(unsigned e) const {
        RPoly out(1), base = *this;
        while (e) {
            if (e & 1u) out = out * base;
            base = base * base;
            e >>= 1u;
        }
        return out;
    }

    SymbolicReal operator()(const Rational& n) const {
        SymbolicReal v;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            v *= n;
            v += *it;
        }
        return v;
    }

    friend bool operator==(const RPoly& a, const RPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const RPoly& a, const RPoly& b) { return !(a == b); }

    std::string to_string(const std::string& var = "n") const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const SymbolicReal& c = coeffs_[k];
            if (c.is_zero()) continue;
            std::string pw = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            std::string body;
            bool neg = false;
            if (c.is_rational()) {
                Rational q = c.constant_term();
                neg = q < 0;
                if (neg) q = -q;
                if (k == 0)
                    body = q.str();
                else
                    body = q == 1 ? pw : q.str() + "*" + pw;
            } else {
                body = "(" + c.to_string() + ")" + (k == 0 ? "" : "*" + pw);
            }
            if (s.empty())
                s = neg ? "-" + body : body;
            else
                s += (neg ? " - " : " + ") + body;
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<SymbolicReal> coeffs_;
};

inline RPoly reparametrize(const RPoly& p, const Integer& W, const Integer& r_off) {
    if (W <= 0) throw std::invalid_argument("reparametrize: W must be positive");
    RPoly lin(std::vector<SymbolicReal>{SymbolicReal(r_off), SymbolicReal(W)});
    RPoly out;
    const auto& c = p.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) out = out * lin + RPoly(c[k]);
    return out;
}

// Rational polynomial maps Z to Z iff its binomial-basis coefficients are integers.
inline bool is_integer_valued(const RPoly& q) {
    auto c = q.rational_coefficients();
    const int d = q.degree();
    if (d < 0) return true;
    std::vector<Rational> vals(static_cast<std::size_t>(d) + 1);
    for (int n = 0; n <= d; ++n) {
        Rational v = 0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * n + c[k];
        vals[static_cast<std::size_t>(n)] = v;
    }
    for (int level = 0; level <= d; ++level) {
        if (!is_integer(vals[0])) return false;
        for (int i = 0; i + level < d; ++i) vals[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i) + 1] - vals[static_cast<std::size_t>(i)];
    }
    return true;
}

struct RationalDecomposition {
    RPoly rational_part;
    std::map<Monomial, RPoly> parts;  // non-constant monomial -> rational polynomial

    RPoly recombine() const {
        RPoly out = rational_part;
        for (const auto& [m, q] : parts) out += q.scaled(SymbolicReal::monomial(m, 1));
        return out;
    }
};

inline RationalDecomposition decompose(const RPoly& p) {
    RationalDecomposition out;
    std::map<Monomial, std::vector<Rational>> acc;
    std::vector<Rational> rat(p.coefficients().size());
    for (std::size_t j = 0; j < p.coefficients().size(); ++j) {
        for (const auto& [m, q] : p.coefficients()[j].terms()) {
            if (m.is_constant()) {
                rat[j] = q;
                continue;
            }
            auto& v = acc[m];
            v.resize(p.coefficients().size());
            v[j] = q;
        }
    }
    out.rational_part = RPoly::from_rationals(rat);
    for (auto& [m, v] : acc) out.parts.emplace(m, RPoly::from_rationals(v));
    return out;
}

// Saturated lattice of k in Z^l with sum k_i p_i in Q[x] (or Q[x]+R when constant_free).
inline IntLattice relation_lattice(const std::vector<RPoly>& p, bool constant_free) {
    const std::size_t l = p.size();
    std::map<std::pair<std::size_t, Monomial>, RatVector> rows;
    for (std::size_t i = 0; i < l; ++i) {
        const auto& c = p[i].coefficients();
        for (std::size_t j = constant_free ? 1 : 0; j < c.size(); ++j)
            for (const auto& [m, q] : c[j].terms()) {
                if (m.is_constant()) continue;
                auto& row = rows[{j, m}];
                row.resize(l);
                row[i] = q;
            }
    }
    RatMatrix M(0, l);
    for (auto& [key, row] : rows) M.append_row(row);
    std::vector<RatVector> ker;
    if (M.rows() == 0) {
        for (std::size_t i = 0; i < l; ++i) {
            RatVector e(l);
            e[i] = 1;
            ker.push_back(e);
        }
    } else {
        ker = rational_kernel(M);
    }
    return saturate(ker, l);
}

inline RPoly combination(const IntVector& k, const std::vector<RPoly>& p) {
    if (k.size() != p.size()) throw std::invalid_argument("combination: length mismatch");
    RPoly g;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] != 0) g += p[i].scaled(SymbolicReal(k[i]));
    return g;
}

inline std::uint64_t factorial_u64(std::uint64_t q) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= q; ++i) f *= i;
    return f;
}

// Least Q with g(Q! n)/gcd(k) integer-valued, g = sum k_i p_i.
inline std::uint64_t q_of_k(const IntVector& k, const std::vector<RPoly>& p) {
    Integer G = 0;
    for (const auto& x : k) G = gcd_int(G, x);
    if (G == 0) throw std::invalid_argument("q_of_k: zero vector");
    RPoly g = combination(k, p);
    if (!g.is_rational()) throw std::domain_error("q_of_k: combination is not in Q[x]");
    RPoly h = g.divided(Rational(G));
    auto hc = h.rational_coefficients();
    if (!hc.empty() && !is_integer(hc[0]))
        throw std::domain_error("q_of_k: constant term obstructs integrality for every Q");
    Integer L = 1;
    for (std::size_t j = 1; j < hc.size(); ++j) L = lcm_int(L, den(hc[j]));
    Integer fact = 1;
    for (std::uint64_t Q = 1;; ++Q) {
        fact *= Q;
        if (is_integer_valued(reparametrize(h, fact, 0))) return Q;
        if (Integer(Q) > L) throw std::logic_error("q_of_k: termination cap exceeded");
    }
}

inline std::uint64_t w0_upper_bound(const std::vector<RPoly>& p) {
    for (const auto& pi : p)
        if (!pi.constant_term().is_zero()) throw std::invalid_argument("w0_upper_bound: requires p(0) = 0");
    IntLattice K = relation_lattice(p, false);
    std::uint64_t w = 1;
    for (const auto& k : K.basis()) w = std::max(w, q_of_k(k, p));
    return w;
}

}  // namespace ergokit
