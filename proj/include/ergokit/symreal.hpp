#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "exactalg.hpp"

namespace ergokit {

namespace mp = boost::multiprecision;

using HighPrec = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;
using WidePrec = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;

// Product of symbols with positive exponents, sorted by name.
class Monomial {
public:
    using Factor = std::pair<std::string, unsigned>;

    Monomial() = default;
    explicit Monomial(const std::string& symbol, unsigned exponent = 1) {
        if (exponent) factors_.emplace_back(symbol, exponent);
    }
    explicit Monomial(std::vector<Factor> factors) {
        for (auto& f : factors)
            if (f.second) factors_.push_back(std::move(f));
        std::sort(factors_.begin(), factors_.end());
        for (std::size_t i = 1; i < factors_.size(); ++i)
            if (factors_[i].first == factors_[i - 1].first)
                throw std::invalid_argument("Monomial: repeated symbol");
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_constant() const { return factors_.empty(); }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    unsigned exponent_of(const std::string& s) const {
        for (const auto& f : factors_)
            if (f.first == s) return f.second;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial out;
        std::size_t i = 0, j = 0;
        while (i < a.factors_.size() || j < b.factors_.size()) {
            if (j == b.factors_.size() || (i < a.factors_.size() && a.factors_[i].first < b.factors_[j].first))
                out.factors_.push_back(a.factors_[i++]);
            else if (i == a.factors_.size() || b.factors_[j].first < a.factors_[i].first)
                out.factors_.push_back(b.factors_[j++]);
            else {
                out.factors_.emplace_back(a.factors_[i].first, a.factors_[i].second + b.factors_[j].second);
                ++i;
                ++j;
            }
        }
        return out;
    }

    // divides when b | a, otherwise nullopt
    static std::optional<Monomial> quotient(const Monomial& a, const Monomial& b) {
        std::vector<Factor> out;
        for (const auto& f : a.factors_) {
            unsigned e = b.exponent_of(f.first);
            if (e > f.second) return std::nullopt;
            if (f.second > e) out.emplace_back(f.first, f.second - e);
        }
        for (const auto& f : b.factors_)
            if (a.exponent_of(f.first) == 0) return std::nullopt;
        return Monomial(std::move(out));
    }

    // graded, then lexicographic on factors
    friend bool operator<(const Monomial& a, const Monomial& b) {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.factors_ > b.factors_;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::string to_string() const {
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty()) s += "*";
            s += f.first;
            if (f.second > 1) s += "^" + std::to_string(f.second);
        }
        return s.empty() ? "1" : s;
    }

private:
    std::vector<Factor> factors_;
};

class SymbolicReal {
public:
    using TermMap = std::map<Monomial, Rational>;

    SymbolicReal() = default;
    SymbolicReal(const Rational& q) {  // NOLINT implicit
        if (!q.is_zero()) terms_[Monomial()] = q;
    }
    SymbolicReal(long long v) : SymbolicReal(Rational(v)) {}  // NOLINT implicit
    SymbolicReal(int v) : SymbolicReal(Rational(v)) {}        // NOLINT implicit
    SymbolicReal(const Integer& v) : SymbolicReal(Rational(v)) {}  // NOLINT implicit

    static SymbolicReal symbol(const std::string& name) { return monomial(Monomial(name), 1); }
    static SymbolicReal monomial(const Monomial& m, const Rational& coeff) {
        SymbolicReal x;
        if (!coeff.is_zero()) x.terms_[m] = coeff;
        return x;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial()); }

    SymbolicReal nonconstant_part() const {
        SymbolicReal x = *this;
        x.terms_.erase(Monomial());
        return x;
    }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant()); }
    std::optional<Rational> as_rational() const {
        if (!is_rational()) return std::nullopt;
        return constant_term();
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, q] : terms_) d = std::max(d, m.degree());
        return d;
    }

    std::set<std::string> symbols() const {
        std::set<std::string> s;
        for (const auto& [m, q] : terms_)
            for (const auto& f : m.factors()) s.insert(f.first);
        return s;
    }

    // largest monomial with nonzero coefficient, constant excluded
    std::optional<std::pair<Monomial, Rational>> leading_nonconstant() const {
        if (terms_.empty() || terms_.rbegin()->first.is_constant()) return std::nullopt;
        return *terms_.rbegin();
    }

    SymbolicReal& operator+=(const SymbolicReal& o) {
        for (const auto& [m, q] : o.terms_) add_term(m, q);
        return *this;
    }
    SymbolicReal& operator-=(const SymbolicReal& o) {
        for (const auto& [m, q] : o.terms_) add_term(m, -q);
        return *this;
    }
    SymbolicReal& operator*=(const Rational& q) {
        if (q.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_) kv.second *= q;
        return *this;
    }
    SymbolicReal& operator/=(const Rational& q) {
        if (q.is_zero()) throw std::domain_error("SymbolicReal: division by zero");
        return *this *= Rational(1) / q;
    }

    friend SymbolicReal operator+(SymbolicReal a, const SymbolicReal& b) { return a += b; }
    friend SymbolicReal operator-(SymbolicReal a, const SymbolicReal& b) { return a -= b; }
    friend SymbolicReal operator-(SymbolicReal a) { return a *= Rational(-1); }
    friend SymbolicReal operator/(SymbolicReal a, const Rational& q) { return a /= q; }
    friend SymbolicReal operator*(const SymbolicReal& a, const SymbolicReal& b) {
        SymbolicReal out;
        for (const auto& [ma, qa] : a.terms_)
            for (const auto& [mb, qb] : b.terms_) out.add_term(ma * mb, qa * qb);
        return out;
    }
    SymbolicReal& operator*=(const SymbolicReal& o) { return *this = *this * o; }

    SymbolicReal pow(unsigned e) const {
        SymbolicReal out(1), base = *this;
        while (e) {
            if (e & 1u) out = out * base;
            base = base * base;
            e >>= 1u;
        }
        return out;
    }

    friend bool operator==(const SymbolicReal& a, const SymbolicReal& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SymbolicReal& a, const SymbolicReal& b) { return !(a == b); }
    friend bool operator<(const SymbolicReal& a, const SymbolicReal& b) {
        return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                            [](const auto& x, const auto& y) {
                                                if (x.first != y.first) return x.first < y.first;
                                                return x.second < y.second;
                                            });
    }

    // canonical text, re-parseable: "3/4*c*d - c^2 + 1/3"
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Monomial& m = it->first;
            Rational q = it->second;
            bool neg = q < 0;
            if (neg) q = -q;
            if (first)
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            first = false;
            if (m.is_constant())
                s += q.str();
            else if (q == 1)
                s += m.to_string();
            else
                s += q.str() + "*" + m.to_string();
        }
        return s;
    }

private:
    void add_term(const Monomial& m, const Rational& q) {
        if (q.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, q);
            return;
        }
        it->second += q;
        if (it->second.is_zero()) terms_.erase(it);
    }

    TermMap terms_;
};

enum class ScalarKind { Zero, NonzeroRational, Irrational };

struct ScalarClass {
    ScalarKind kind = ScalarKind::Zero;
    bool integer = false;  // rational with denominator 1 (Zero included)
};

inline ScalarClass classify_scalar(const SymbolicReal& x) {
    if (x.is_zero()) return {ScalarKind::Zero, true};
    if (!x.is_rational()) return {ScalarKind::Irrational, false};
    return {ScalarKind::NonzeroRational, is_integer(x.constant_term())};
}

inline bool is_irrational(const SymbolicReal& x) { return classify_scalar(x).kind == ScalarKind::Irrational; }
inline bool is_integer(const SymbolicReal& x) { return classify_scalar(x).integer; }
inline bool is_nonzero_integer(const SymbolicReal& x) {
    auto k = classify_scalar(x);
    return k.kind == ScalarKind::NonzeroRational && k.integer;
}

inline const char* to_string(ScalarKind k) {
    switch (k) {
        case ScalarKind::Zero: return "Zero";
        case ScalarKind::NonzeroRational: return "NonzeroRational";
        case ScalarKind::Irrational: return "Irrational";
    }
    return "?";
}

// Decimal literals ("1.25"), "p/q", or a named constant: sqrt<k>, golden, e, pi.
inline HighPrec named_constant(const std::string& name) {
    using boost::math::constants::e;
    using boost::math::constants::phi;
    using boost::math::constants::pi;
    if (name == "golden") return phi<HighPrec>();
    if (name == "e") return e<HighPrec>();
    if (name == "pi") return pi<HighPrec>();
    if (name.rfind("sqrt", 0) == 0 && name.size() > 4) {
        std::string k = name.substr(4);
        if (k.front() == '(' && k.back() == ')') k = k.substr(1, k.size() - 2);
        if (!k.empty() && std::all_of(k.begin(), k.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            return mp::sqrt(HighPrec(k));
    }
    auto slash = name.find('/');
    if (slash != std::string::npos) return HighPrec(name.substr(0, slash)) / HighPrec(name.substr(slash + 1));
    bool numeric = !name.empty();
    for (char ch : name)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '+' || ch == 'e' || ch == 'E'))
            numeric = false;
    if (numeric) return HighPrec(name);
    throw std::invalid_argument("unknown numeric constant: " + name);
}

class NumericAssignment {
public:
    NumericAssignment() = default;
    NumericAssignment(std::initializer_list<std::pair<const std::string, HighPrec>> init) : values_(init) {}

    void set(const std::string& symbol, const HighPrec& v) { values_[symbol] = v; }
    void set(const std::string& symbol, const std::string& constant) { values_[symbol] = named_constant(constant); }
    bool has(const std::string& symbol) const { return values_.count(symbol) > 0; }
    const HighPrec& at(const std::string& symbol) const {
        auto it = values_.find(symbol);
        if (it == values_.end()) throw std::out_of_range("no numeric value for symbol '" + symbol + "'");
        return it->second;
    }
    bool covers(const SymbolicReal& x) const {
        for (const auto& s : x.symbols())
            if (!has(s)) return false;
        return true;
    }
    const std::map<std::string, HighPrec>& values() const { return values_; }

private:
    std::map<std::string, HighPrec> values_;
};

class SymbolTable {
public:
    void declare(const std::string& name) {
        for (const auto& s : names_)
            if (s == name) return;
        names_.push_back(name);
    }
    const std::vector<std::string>& names() const { return names_; }
    bool declared(const std::string& name) const { return std::find(names_.begin(), names_.end(), name) != names_.end(); }
    void assign(const std::string& name, const HighPrec& v) {
        declare(name);
        values_.set(name, v);
    }
    const NumericAssignment& assignment() const { return values_; }

private:
    std::vector<std::string> names_;
    NumericAssignment values_;
};

template <class Real = HighPrec>
Real evaluate_as(const SymbolicReal& x, const NumericAssignment& nu) {
    Real total = 0;
    for (const auto& [m, q] : x.terms()) {
        Real t = Real(num(q)) / Real(den(q));
        for (const auto& [s, e] : m.factors()) t *= mp::pow(Real(nu.at(s)), static_cast<int>(e));
        total += t;
    }
    return total;
}

inline HighPrec evaluate(const SymbolicReal& x, const NumericAssignment& nu) { return evaluate_as<HighPrec>(x, nu); }

inline long double evaluate_ld(const SymbolicReal& x, const NumericAssignment& nu) {
    return static_cast<long double>(evaluate(x, nu));
}

// Best rational approximation with bounded denominator via continued fractions.
inline std::pair<Integer, Integer> best_rational(const HighPrec& x, const Integer& max_den) {
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    HighPrec v = x;
    for (int iter = 0; iter < 64; ++iter) {
        HighPrec fl = mp::floor(v);
        Integer a = static_cast<Integer>(fl);
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        HighPrec r = v - fl;
        if (r < HighPrec(1e-30)) break;
        v = 1 / r;
    }
    return {p1, q1};
}

// Warns when a value classified Irrational is numerically (nearly) rational under nu.
inline std::optional<std::string> consistency_warning(const SymbolicReal& x, const NumericAssignment& nu) {
    if (!is_irrational(x)) return std::nullopt;
    HighPrec v = evaluate(x, nu);
    auto [p, q] = best_rational(v, Integer(1000000));
    if (q == 0) return std::nullopt;
    HighPrec diff = mp::abs(v - HighPrec(p) / HighPrec(q));
    if (diff <= HighPrec(1e-24))
        return "value of " + x.to_string() + " is within 1e-24 of " + p.str() + "/" + q.str() +
               " under the numeric assignment, although it is symbolically irrational";
    return std::nullopt;
}

}  // namespace ergokit
