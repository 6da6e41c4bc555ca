#pragma once

#include <random>
#include <string>
#include <vector>

#include <ergokit/ergokit.hpp>

namespace testsupport {

using namespace ergokit;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(0x5eed2026ULL);
    return g;
}

inline long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng()); }

inline Rational small_rational(long long numer = 6, long long denom = 4) {
    return Rational(uniform(-numer, numer), uniform(1, denom));
}

inline SymbolicReal small_scalar(const std::vector<std::string>& syms, unsigned max_terms = 3) {
    SymbolicReal x(small_rational());
    unsigned k = static_cast<unsigned>(uniform(0, max_terms));
    for (unsigned i = 0; i < k; ++i) {
        Monomial m;
        for (const auto& s : syms)
            if (uniform(0, 2) == 0) m = m * Monomial(s);
        x += SymbolicReal::monomial(m, small_rational());
    }
    return x;
}

inline RPoly rational_poly(int max_deg, bool zero_constant, long long numer = 6, long long denom = 4) {
    std::vector<Rational> c(static_cast<std::size_t>(max_deg) + 1);
    for (int j = zero_constant ? 1 : 0; j <= max_deg; ++j) c[static_cast<std::size_t>(j)] = small_rational(numer, denom);
    return RPoly::from_rationals(c);
}

inline RPoly poly_over(const std::vector<std::string>& syms, int max_deg, bool zero_constant) {
    std::vector<SymbolicReal> c(static_cast<std::size_t>(max_deg) + 1);
    for (int j = zero_constant ? 1 : 0; j <= max_deg; ++j) c[static_cast<std::size_t>(j)] = small_scalar(syms, 2);
    return RPoly(c);
}

inline bool in_q_x(const RPoly& p) { return p.is_rational(); }

// all k in [-B, B]^l
template <class F>
void for_each_box(std::size_t l, long long B, F&& f) {
    IntVector k(l, Integer(-B));
    while (true) {
        f(k);
        std::size_t i = 0;
        while (i < l && k[i] == B) k[i++] = -B;
        if (i == l) return;
        k[i] += 1;
    }
}

inline NumericAssignment sqrt2_c() {
    NumericAssignment nu;
    nu.set("c", "sqrt2");
    return nu;
}

}  // namespace testsupport
