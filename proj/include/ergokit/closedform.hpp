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

#include "exactalg.hpp"
#include "rpoly.hpp"
#include "structure.hpp"
#include "symreal.hpp"

namespace ergokit {

struct RatComplex {
    Rational re = 0, im = 0;

    RatComplex() = default;
    RatComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT implicit
    RatComplex(int r) : re(r) {}                                                    // NOLINT implicit

    static RatComplex i() { return {0, 1}; }
    static RatComplex i_pow(long long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
        }
    }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    RatComplex conj() const { return {re, -im}; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend RatComplex operator-(const RatComplex& a) { return {-a.re, -a.im}; }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const RatComplex& a, const RatComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatComplex& a, const RatComplex& b) { return !(a == b); }

    std::string to_string() const {
        if (im.is_zero()) return re.str();
        if (re.is_zero()) return "(" + im.str() + ")i";
        return "(" + re.str() + (im < 0 ? " - " + Rational(-im).str() : " + " + im.str()) + "i)";
    }
};

// coeff * (2pi)^(-two_pi_power) * e(phase)
struct ExpTerm {
    RatComplex coeff;
    unsigned two_pi_power = 0;
    SymbolicReal phase;
};

inline long double two_pi_ld() { return 2.0L * 3.141592653589793238462643383279502884L; }

// e(x) for a high-precision phase, reduced mod 1 before rounding
inline std::complex<long double> unit_ld(const HighPrec& x) {
    HighPrec f = x - mp::floor(x);
    long double t = static_cast<long double>(f) * two_pi_ld();
    return {std::cos(t), std::sin(t)};
}

class ExpSum {
public:
    ExpSum() = default;
    ExpSum(const RatComplex& constant) {  // NOLINT implicit
        if (!constant.is_zero()) terms_.push_back({constant, 0, SymbolicReal()});
    }
    static ExpSum exp(const SymbolicReal& phase, const RatComplex& coeff = 1, unsigned two_pi_power = 0) {
        ExpSum s;
        s.terms_.push_back({coeff, two_pi_power, phase});
        s.canonicalize();
        return s;
    }

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend ExpSum operator+(const ExpSum& a, const ExpSum& b) {
        ExpSum s = a;
        s.terms_.insert(s.terms_.end(), b.terms_.begin(), b.terms_.end());
        s.canonicalize();
        return s;
    }
    friend ExpSum operator-(const ExpSum& a, const ExpSum& b) { return a + b * RatComplex(-1); }
    friend ExpSum operator*(const ExpSum& a, const RatComplex& k) {
        ExpSum s = a;
        for (auto& t : s.terms_) t.coeff = t.coeff * k;
        s.canonicalize();
        return s;
    }
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b) {
        ExpSum s;
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) s.terms_.push_back({x.coeff * y.coeff, x.two_pi_power + y.two_pi_power, x.phase + y.phase});
        s.canonicalize();
        return s;
    }
    ExpSum conj() const {
        ExpSum s;
        for (const auto& t : terms_) s.terms_.push_back({t.coeff.conj(), t.two_pi_power, -t.phase});
        s.canonicalize();
        return s;
    }

    std::complex<long double> evaluate(const NumericAssignment& nu) const {
        std::complex<long double> total = 0;
        for (const auto& t : terms_) {
            std::complex<long double> c(static_cast<long double>(t.coeff.re), static_cast<long double>(t.coeff.im));
            for (unsigned k = 0; k < t.two_pi_power; ++k) c /= two_pi_ld();
            total += c * unit_ld(evaluate_as<HighPrec>(t.phase, nu));
        }
        return total;
    }

    std::set<std::string> symbols() const {
        std::set<std::string> s;
        for (const auto& t : terms_) {
            auto x = t.phase.symbols();
            s.insert(x.begin(), x.end());
        }
        return s;
    }

    friend bool operator==(const ExpSum& a, const ExpSum& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            const auto &x = a.terms_[i], &y = b.terms_[i];
            if (x.coeff != y.coeff || x.two_pi_power != y.two_pi_power || x.phase != y.phase) return false;
        }
        return true;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += t.coeff.to_string();
            if (t.two_pi_power) s += "/(2pi)" + (t.two_pi_power > 1 ? "^" + std::to_string(t.two_pi_power) : std::string());
            if (!t.phase.is_zero()) s += "*e(" + t.phase.to_string() + ")";
        }
        return s;
    }

private:
    // rational part of each phase reduced into [0,1/4) by rotating the coefficient by i^k
    void canonicalize() {
        std::map<std::pair<unsigned, SymbolicReal>, RatComplex, PhaseLess> acc;
        for (auto& t : terms_) {
            Rational q = t.phase.constant_term();
            Integer k = floor_rat(q * 4);
            Rational rem = q - Rational(k, 4);
            SymbolicReal ph = t.phase.nonconstant_part() + SymbolicReal(rem);
            RatComplex c = t.coeff * RatComplex::i_pow(static_cast<long long>(k % 4));
            auto key = std::make_pair(t.two_pi_power, ph);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, c);
            else
                it->second = it->second + c;
        }
        terms_.clear();
        for (auto& [key, c] : acc)
            if (!c.is_zero()) terms_.push_back({c, key.first, key.second});
    }
    struct PhaseLess {
        bool operator()(const std::pair<unsigned, SymbolicReal>& a, const std::pair<unsigned, SymbolicReal>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        }
    };

    std::vector<ExpTerm> terms_;
};

struct Denominator {
    bool is_sum = false;
    ExpSum sum;           // when is_sum
    SymbolicReal scalar;  // otherwise; never zero

    std::complex<long double> evaluate(const NumericAssignment& nu) const {
        if (is_sum) return sum.evaluate(nu);
        return {evaluate_ld(scalar, nu), 0.0L};
    }
    std::string to_string() const { return is_sum ? "(" + sum.to_string() + ")" : "(" + scalar.to_string() + ")"; }
    friend bool operator==(const Denominator& a, const Denominator& b) {
        return a.is_sum == b.is_sum && (a.is_sum ? a.sum == b.sum : a.scalar == b.scalar);
    }
};

// numerator / product(denominators); exact_zero is set only structurally or by a decided condition
class ComplexExact {
public:
    ComplexExact() = default;
    ComplexExact(const ExpSum& numerator) : numerator_(numerator) {}  // NOLINT implicit
    ComplexExact(const RatComplex& c) : numerator_(c) {}               // NOLINT implicit

    static ComplexExact zero() { return ComplexExact(ExpSum()); }
    static ComplexExact one() { return ComplexExact(RatComplex(1)); }

    bool exact_zero() const { return numerator_.is_zero(); }
    const ExpSum& numerator() const { return numerator_; }
    const std::vector<Denominator>& denominators() const { return denominators_; }

    ComplexExact& divide_by_sum(const ExpSum& s) {
        if (s.is_zero()) throw std::domain_error("ComplexExact: zero denominator");
        denominators_.push_back({true, s, SymbolicReal()});
        sort_denominators();
        return *this;
    }
    ComplexExact& divide_by_scalar(const SymbolicReal& x) {
        if (x.is_zero()) throw std::domain_error("ComplexExact: zero denominator");
        if (auto q = x.as_rational()) {
            numerator_ = numerator_ * RatComplex(Rational(1) / *q);
            return *this;
        }
        denominators_.push_back({false, ExpSum(), x});
        sort_denominators();
        return *this;
    }

    friend ComplexExact operator*(const ComplexExact& a, const ComplexExact& b) {
        ComplexExact out;
        out.numerator_ = a.numerator_ * b.numerator_;
        if (out.numerator_.is_zero()) return out;
        out.denominators_ = a.denominators_;
        out.denominators_.insert(out.denominators_.end(), b.denominators_.begin(), b.denominators_.end());
        out.sort_denominators();
        return out;
    }
    ComplexExact conj() const {
        ComplexExact out;
        out.numerator_ = numerator_.conj();
        for (const auto& d : denominators_)
            out.denominators_.push_back(d.is_sum ? Denominator{true, d.sum.conj(), SymbolicReal()} : d);
        out.sort_denominators();
        return out;
    }

    std::complex<long double> evaluate(const NumericAssignment& nu) const {
        if (exact_zero()) return 0;
        std::complex<long double> v = numerator_.evaluate(nu);
        for (const auto& d : denominators_) v /= d.evaluate(nu);
        return v;
    }

    std::set<std::string> symbols() const {
        auto s = numerator_.symbols();
        for (const auto& d : denominators_) {
            auto t = d.is_sum ? d.sum.symbols() : d.scalar.symbols();
            s.insert(t.begin(), t.end());
        }
        return s;
    }

    friend bool operator==(const ComplexExact& a, const ComplexExact& b) {
        return a.numerator_ == b.numerator_ && a.denominators_ == b.denominators_;
    }

    std::string to_string() const {
        if (exact_zero()) return "0";
        std::string s = "[" + numerator_.to_string() + "]";
        for (const auto& d : denominators_) s += " / " + d.to_string();
        return s;
    }

private:
    void sort_denominators() {
        std::sort(denominators_.begin(), denominators_.end(),
                  [](const Denominator& x, const Denominator& y) { return x.to_string() < y.to_string(); });
    }

    ExpSum numerator_;
    std::vector<Denominator> denominators_;
};

struct Undetermined {
    std::string reason;
};

using LimitResult = std::variant<ComplexExact, Undetermined>;

// ---------------------------------------------------------------- conditions

enum class ConditionKind { NotInZOverSMinusZ, NotInZStar };

struct MembershipCondition {
    ConditionKind kind = ConditionKind::NotInZStar;
    SymbolicReal scalar;
    Integer s = 1;
    bool holds = true;

    std::string describe() const {
        if (kind == ConditionKind::NotInZStar) return scalar.to_string() + " not in Z*";
        return scalar.to_string() + " not in (Z/" + s.str() + ")\\Z";
    }
};

inline MembershipCondition not_in_z_star(const SymbolicReal& x) {
    MembershipCondition c{ConditionKind::NotInZStar, x, 1, true};
    c.holds = !is_nonzero_integer(x);
    return c;
}

inline MembershipCondition not_in_z_over_s_minus_z(const SymbolicReal& x, const Integer& s) {
    MembershipCondition c{ConditionKind::NotInZOverSMinusZ, x, s, true};
    if (auto q = x.as_rational()) c.holds = !(is_integer(*q * Rational(s)) && !is_integer(*q));
    return c;
}

struct IntegralConditions {
    std::vector<MembershipCondition> conditions;
    bool all_hold() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.holds; });
    }
};

struct IntegralResult {
    ComplexExact value;
    IntegralConditions conditions;
};

// ---------------------------------------------------------------- star ratios

// (1/N) sum_{k<N} e(k alpha) = ((e(alpha N) - 1) / (N (e(alpha) - 1)))*
inline ComplexExact star_ratio_sum(const SymbolicReal& alpha, const Integer& N) {
    if (N <= 0) throw std::invalid_argument("star_ratio_sum: N must be positive");
    if (is_integer(alpha)) return ComplexExact::one();
    if (auto q = alpha.as_rational())
        if (is_integer(*q * Rational(N))) return ComplexExact::zero();
    if (N <= 64) {
        ExpSum s;
        for (long long k = 0; k < static_cast<long long>(N); ++k) s = s + ExpSum::exp(alpha * SymbolicReal(k), RatComplex(Rational(1, N)));
        return ComplexExact(s);
    }
    ComplexExact out(ExpSum::exp(alpha * SymbolicReal(N)) - ExpSum(RatComplex(1)));
    out.divide_by_sum((ExpSum::exp(alpha) - ExpSum(RatComplex(1))) * RatComplex(Rational(N)));
    return out;
}

// ((e(alpha t) - 1) / (2 pi i alpha t))*
inline ComplexExact star_ratio_integral(const SymbolicReal& alpha, const SymbolicReal& t = SymbolicReal(1)) {
    if (t.is_zero()) throw std::invalid_argument("star_ratio_integral: t must be nonzero");
    SymbolicReal x = alpha * t;
    if (x.is_zero()) return ComplexExact::one();
    if (is_nonzero_integer(x)) return ComplexExact::zero();
    // 1/(2 pi i) = -i/(2 pi)
    ComplexExact out((ExpSum::exp(x) - ExpSum(RatComplex(1))) * ExpSum(RatComplex(0, -1)) *
                     ExpSum::exp(SymbolicReal(), RatComplex(1), 1));
    out.divide_by_scalar(x);
    return out;
}

inline ComplexExact unit(const SymbolicReal& phase) { return ComplexExact(ExpSum::exp(phase)); }

// ---------------------------------------------------------------- subtorus integrals

// integral over {ax + by = 0} of e(alpha x + beta y)
inline IntegralResult subtorus_integral_2d(const SymbolicReal& alpha, const SymbolicReal& beta, const Integer& a,
                                           const Integer& b) {
    if (a == 0 || b == 0) throw std::invalid_argument("subtorus_integral_2d: a, b must be nonzero");
    if (gcd_int(a, b) != 1) throw std::domain_error("subtorus_integral_2d: gcd(a,b) != 1");
    IntegralResult res;
    res.conditions.conditions = {
        not_in_z_over_s_minus_z(alpha / Rational(a), a),
        not_in_z_over_s_minus_z(beta / Rational(b), b),
        not_in_z_star(alpha / Rational(a) - beta / Rational(b)),
    };
    if (!res.conditions.all_hold()) {
        res.value = ComplexExact::zero();
        return res;
    }
    // canonical a, b > 0 via x -> -x or y -> -y
    ComplexExact pre = ComplexExact::one();
    SymbolicReal al = alpha, be = beta;
    Integer A = a, B = b;
    if (A < 0 && B < 0) {
        A = -A;
        B = -B;
    } else if (B < 0) {
        pre = unit(be);
        be = -be;
        B = -B;
    } else if (A < 0) {
        pre = unit(al);
        al = -al;
        A = -A;
    }
    ComplexExact v = pre * unit(be) * star_ratio_sum(al / Rational(A), A) * star_ratio_sum(-be / Rational(B), B) *
                     star_ratio_integral(al / Rational(A) - be / Rational(B));
    if (v.exact_zero()) throw std::logic_error("subtorus_integral_2d: value vanished although all conditions hold");
    res.value = v;
    return res;
}

// integral over {ax + by = 0, r x + b z = 0} (component through 0) of e(alpha x + beta y + w z)
inline IntegralResult subtorus_integral_3d(const SymbolicReal& alpha, const SymbolicReal& beta, const Integer& w,
                                           const Integer& a, const Integer& b, const Integer& r) {
    if (a == 0 || b == 0 || r == 0) throw std::invalid_argument("subtorus_integral_3d: a, b, r must be nonzero");
    if (gcd_int(a, b) != 1) throw std::domain_error("subtorus_integral_3d: gcd(a,b) != 1");
    auto inv = mod_inverse_pair(a, b);
    IntegralResult res;
    const Rational ra(a), rb(b);
    res.conditions.conditions = {
        not_in_z_star(-alpha / ra + beta / rb + SymbolicReal(Rational(r * w) / (ra * rb))),
        not_in_z_over_s_minus_z(-alpha / ra + SymbolicReal(Rational(r * w * inv.b_star) / ra), a),
        not_in_z_over_s_minus_z(beta / rb + SymbolicReal(Rational(r * w * inv.a_star) / rb), b),
    };
    if (!res.conditions.all_hold()) {
        res.value = ComplexExact::zero();
        return res;
    }
    ComplexExact pre = ComplexExact::one();
    SymbolicReal al = alpha, be = beta;
    Integer A = a, B = b, R = r;
    if (B < 0) {
        A = -A;
        B = -B;
        R = -R;
    }
    if (A < 0) {
        pre = unit(be);
        be = -be;
        A = -A;
    }
    auto cinv = mod_inverse_pair(A, B);
    const Rational cA(A), cB(B);
    ComplexExact v = pre * unit(al) *
                     star_ratio_sum(-al / cA + SymbolicReal(Rational(R * w * cinv.b_star) / cA), A) *
                     star_ratio_sum(be / cB + SymbolicReal(Rational(R * w * cinv.a_star) / cB), B) *
                     star_ratio_integral(-al / cA + be / cB + SymbolicReal(Rational(R * w) / (cA * cB)));
    if (v.exact_zero()) throw std::logic_error("subtorus_integral_3d: value vanished although all conditions hold");
    res.value = v;
    return res;
}

// ---------------------------------------------------------------- limits

namespace detail {

// x = a*c + b with rational a, b when possible
inline std::optional<std::pair<Rational, Rational>> in_span_c_one(const SymbolicReal& x, const SymbolicReal& c) {
    SymbolicReal xn = x.nonconstant_part(), cn = c.nonconstant_part();
    if (xn.is_zero()) return std::make_pair(Rational(0), x.constant_term());
    if (cn.is_zero()) return std::nullopt;
    auto lead = cn.leading_nonconstant();
    Rational a = xn.coefficient(lead->first) / lead->second;
    SymbolicReal rest = x - c * SymbolicReal(a);
    if (!rest.is_rational()) return std::nullopt;
    return std::make_pair(a, rest.constant_term());
}

inline void require_irrational_or_integer(const SymbolicReal& t1, const SymbolicReal& t2) {
    for (const auto* t : {&t1, &t2})
        if (!is_irrational(*t) && !is_integer(*t))
            throw std::invalid_argument("limit: weights must be irrational or integer");
    if (is_integer(t1) && is_integer(t2)) throw std::invalid_argument("limit: weights must not both be integers");
}

}  // namespace detail

// limit of (1/N) sum e(t1[p1] + t2[p2]) for a Type-B pair, orbit in Y assumed
inline LimitResult limit_case1(const TypeBCertificate& cert, const SymbolicReal& t1, const SymbolicReal& t2) {
    detail::require_irrational_or_integer(t1, t2);
    const Integer &u1 = cert.u1, &u2 = cert.u2;
    SymbolicReal S = t1 * SymbolicReal(u1) + t2 * SymbolicReal(u2);
    if (is_irrational(S)) return ComplexExact::zero();
    if (!is_integer(S)) return Undetermined{"t1*u1 + t2*u2 is rational but not an integer; no closed form is proved"};
    ExtGcd e = ext_gcd(u1, u2);
    SymbolicReal t1p = t1 - S * SymbolicReal(e.x);
    SymbolicReal t2p = t2 - S * SymbolicReal(e.y);
    auto span = detail::in_span_c_one(t2p, cert.c);
    if (!span) return ComplexExact::zero();
    const Rational a = span->first;
    if (a.is_zero()) throw std::invalid_argument("limit_case1: shifted t2 is rational");
    Rational au2d = a * Rational(u2) * cert.d;
    if (!is_integer(au2d)) return Undetermined{"a*u2*d is not an integer; no closed form is proved"};
    return subtorus_integral_3d(-t1p, -t2p, 1, u2, -u1, num(au2d)).value;
}

// Type-B pair with f = 0: p1 = u1 c g, p2 = u2 (c+d) g
inline LimitResult limit_case2(const RPoly& g, const SymbolicReal& c, const Rational& d, const Integer& u1,
                               const Integer& u2, const SymbolicReal& t1, const SymbolicReal& t2,
                               std::optional<Rational> s_in = std::nullopt, std::optional<Rational> t_in = std::nullopt) {
    if (!g.is_rational() || g.is_zero()) throw std::invalid_argument("limit_case2: g must be a nonzero rational polynomial");
    if (d == 0 || u1 == 0 || u2 == 0) throw std::invalid_argument("limit_case2: d, u1, u2 must be nonzero");
    if (is_integer(t1) && is_integer(t2)) throw std::invalid_argument("limit_case2: weights must not both be integers");
    SymbolicReal X = t1 * SymbolicReal(u1) * c + t2 * SymbolicReal(u2) * (c + SymbolicReal(d));
    auto span = detail::in_span_c_one(X, c);
    if (!span) return ComplexExact::zero();
    auto [s, t] = *span;
    if ((s_in && *s_in != s) || (t_in && *t_in != t))
        throw std::invalid_argument("limit_case2: supplied s, t do not match t1*u1*c + t2*u2*(c+d)");
    if (!is_integer(s)) return Undetermined{"s is not an integer; no closed form is proved"};
    if (s.is_zero()) return subtorus_integral_2d(-t1, -t2, u2, -u1).value;
    return subtorus_integral_3d(-t1, -t2, 1, -u2, u1, -num(s)).value;
}

struct Case22Value {
    ComplexExact value;
    Integer W;
    SymbolicReal t1, t2;
};

// least W with f(Wn+r) - f(r) and dg(Wn+r) - dg(r) integer-valued
inline Integer case22_step(const RPoly& f, const RPoly& dg, const Integer& r) {
    Integer L = 1;
    for (const auto* p : {&f, &dg})
        for (const auto& q : p->rational_coefficients()) L = lcm_int(L, den(q));
    for (Integer W = 1; W <= L; ++W) {
        RPoly a = reparametrize(f, W, r) - RPoly(f(Rational(r)));
        RPoly b = reparametrize(dg, W, r) - RPoly(dg(Rational(r)));
        if (is_integer_valued(a) && is_integer_valued(b)) return W;
    }
    throw std::logic_error("case22_step: no step found");
}

inline Case22Value case22_value(const RPoly& f, const RPoly& g, const SymbolicReal& c, const Rational& d, int u2_sign,
                                const Integer& r_off) {
    if (u2_sign != 1 && u2_sign != -1) throw std::invalid_argument("case22_value: u2 must be +1 or -1");
    if (d == 0) throw std::invalid_argument("case22_value: d must be nonzero");
    RPoly dg = g.scaled(SymbolicReal(d));
    Rational D = dg(Rational(r_off)).constant_term();
    if (is_integer(D)) throw std::domain_error("case22_value: dg(r_off) is an integer");
    Rational F = frac_rat(f(Rational(r_off)).constant_term());
    Rational Df = frac_rat(D);
    SymbolicReal gamma = c / d;
    ExpSum one(RatComplex(1));
    ExpSum v1 = (ExpSum::exp(gamma) - one) * ExpSum::exp(SymbolicReal(), RatComplex(0, -1), 1) *
                ExpSum::exp(-SymbolicReal(F) - gamma * SymbolicReal(Df)) * (one - ExpSum::exp(SymbolicReal(-Df)));
    Case22Value out;
    out.W = case22_step(f, dg, r_off);
    if (u2_sign == 1) {
        out.value = ComplexExact(v1);
        out.t1 = -gamma;
        out.t2 = gamma;
    } else {
        out.value = ComplexExact(v1.conj() * ExpSum::exp(-gamma));
        out.t1 = gamma;
        out.t2 = gamma;
    }
    return out;
}

enum class AppendixFixture { apd, apd2 };

inline ComplexExact appendix_values(AppendixFixture which, const SymbolicReal& c) {
    ExpSum pre = ExpSum(RatComplex(1, 1)) * ExpSum::exp(SymbolicReal(), RatComplex(0, -1), 1);
    ExpSum v = pre * (ExpSum::exp(c) - ExpSum(RatComplex(1)));
    if (which == AppendixFixture::apd2) v = v * ExpSum::exp(-c / 4);
    return ComplexExact(v);
}

}  // namespace ergokit
