#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace ergokit;
using namespace testsupport;

namespace {

std::vector<IntVector> random_int_matrix(std::size_t rows, std::size_t cols, long long B) {
    std::vector<IntVector> m(rows, IntVector(cols));
    for (auto& r : m)
        for (auto& x : r) x = uniform(-B, B);
    return m;
}

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational det(const std::vector<IntVector>& m) {
    const std::size_t n = m.size();
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(m[i][j]);
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

// independent solve: k = sum lambda_j b_j with integer lambda
bool integer_combination(const std::vector<IntVector>& basis, const IntVector& k) {
    const std::size_t m = k.size(), r = basis.size();
    RatMatrix a(m, r + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < r; ++j) a(i, j) = Rational(basis[j][i]);
        a(i, r) = Rational(k[i]);
    }
    Rref e = rref(a);
    if (!e.pivots.empty() && e.pivots.back() == r) return false;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        if (!is_integer(e.reduced(i, r))) return false;
    return true;
}

bool in_rational_span(const std::vector<RatVector>& vs, const IntVector& k) {
    RatMatrix a(0, k.size());
    for (const auto& v : vs) a.append_row(v);
    std::size_t r0 = rank(a);
    RatVector kv(k.begin(), k.end());
    a.append_row(kv);
    return rank(a) == r0;
}

}  // namespace

TEST_CASE("rationals are stored in lowest terms", "[exactalg][property]") {
    for (int i = 0; i < 200; ++i) {
        long long p = uniform(-40, 40), q = uniform(1, 40), s = uniform(1, 9);
        Rational a(p, q), b(p * s, q * s);
        REQUIRE(a == b);
        REQUIRE(num(a) == num(b));
        REQUIRE(den(a) == den(b));
        REQUIRE(gcd_int(num(a), den(a)) == (p == 0 ? den(a) : Integer(1)));
    }
}

TEST_CASE("floor and fractional part", "[exactalg]") {
    CHECK(floor_rat(Rational(-7, 2)) == -4);
    CHECK(floor_rat(Rational(7, 2)) == 3);
    CHECK(frac_rat(Rational(-1, 3)) == Rational(2, 3));
    CHECK(floor_div(Integer(-6), Integer(3)) == -2);
}

TEST_CASE("extended gcd is a Bezout identity", "[exactalg][property]") {
    for (long long a = -30; a <= 30; ++a)
        for (long long b = -30; b <= 30; b += 7) {
            if (a == 0 && b == 0) continue;
            ExtGcd e = ext_gcd(a, b);
            REQUIRE(e.g == gcd_int(a, b));
            REQUIRE(e.g == e.x * a + e.y * b);
            REQUIRE(e.g > 0);
        }
}

TEST_CASE("mod_inverse_pair on all coprime pairs up to 50", "[exactalg][property]") {
    auto mod = [](const Integer& x, const Integer& m) {
        Integer mm = abs_int(m);
        return Integer(((x % mm) + mm) % mm);
    };
    int checked = 0;
    for (long long a = -50; a <= 50; ++a)
        for (long long b = -50; b <= 50; ++b) {
            if (std::abs(a) < 2 || std::abs(b) < 2 || gcd_int(a, b) != 1) continue;
            auto p = mod_inverse_pair(a, b);
            REQUIRE_FALSE(p.a_star_degenerate);
            REQUIRE_FALSE(p.b_star_degenerate);
            REQUIRE(mod(Integer(a) * p.a_star, b) == 1);
            REQUIRE(mod(Integer(b) * p.b_star, a) == 1);
            ++checked;
        }
    CHECK(checked > 5000);
    auto d = mod_inverse_pair(7, 1);
    CHECK(d.a_star_degenerate);
    CHECK_FALSE(d.b_star_degenerate);
    CHECK_THROWS_AS(mod_inverse_pair(4, 6), std::domain_error);
    CHECK_THROWS_AS(mod_inverse_pair(0, 3), std::invalid_argument);
}

TEST_CASE("rational kernel vectors annihilate the matrix", "[exactalg][property]") {
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = static_cast<std::size_t>(uniform(1, 4)), c = static_cast<std::size_t>(uniform(1, 6));
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(0, 2) ? small_rational(5, 3) : Rational(0);
        auto ker = rational_kernel(m);
        REQUIRE(ker.size() + rank(m) == c);
        for (const auto& v : ker) {
            auto mv = m.apply(v);
            for (const auto& x : mv) REQUIRE(x == 0);
        }
    }
}

TEST_CASE("integer kernel matches brute force", "[exactalg][property]") {
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = static_cast<std::size_t>(uniform(1, 2)), c = static_cast<std::size_t>(uniform(2, 4));
        auto C = random_int_matrix(r, c, 4);
        auto basis = integer_kernel(C, c);
        for (const auto& v : basis)
            for (const auto& row : C) REQUIRE(dot(row, v) == 0);
        IntLattice L(c, hermite_normal_form(basis, c));
        for_each_box(c, 3, [&](const IntVector& k) {
            bool zero = std::all_of(C.begin(), C.end(), [&](const IntVector& row) { return dot(row, k) == 0; });
            REQUIRE(L.contains(k) == zero);
        });
    }
}

TEST_CASE("hermite transform is unimodular and reproduces the echelon form", "[exactalg][property]") {
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t k = static_cast<std::size_t>(uniform(1, 4)), m = static_cast<std::size_t>(uniform(1, 4));
        auto A = random_int_matrix(k, m, 6);
        auto e = hermite_with_transform(A, m);
        REQUIRE(abs(det(e.transform)) == 1);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Integer s = 0;
                for (std::size_t l = 0; l < k; ++l) s += e.transform[i][l] * A[l][j];
                REQUIRE(s == e.echelon[i][j]);
            }
        // echelon: pivots strictly to the right, positive, entries above reduced
        std::size_t last = 0;
        bool first = true;
        for (std::size_t i = 0; i < e.rank; ++i) {
            std::size_t p = 0;
            while (p < m && e.echelon[i][p] == 0) ++p;
            REQUIRE(p < m);
            REQUIRE(e.echelon[i][p] > 0);
            if (!first) REQUIRE(p > last);
            for (std::size_t u = 0; u < i; ++u) {
                REQUIRE(e.echelon[u][p] >= 0);
                REQUIRE(e.echelon[u][p] < e.echelon[i][p]);
            }
            last = p;
            first = false;
        }
        for (std::size_t i = e.rank; i < k; ++i)
            for (const auto& x : e.echelon[i]) REQUIRE(x == 0);
    }
}

TEST_CASE("saturated lattices contain every integer point of their span", "[exactalg][property]") {
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t dim = 3;
        std::size_t nv = static_cast<std::size_t>(uniform(1, 2));
        std::vector<RatVector> vs(nv, RatVector(dim));
        for (auto& v : vs)
            for (auto& x : v) x = small_rational(4, 3);
        IntLattice L = saturate(vs, dim);
        for_each_box(dim, 10, [&](const IntVector& k) {
            bool span = in_rational_span(vs, k);
            REQUIRE(L.contains(k) == span);
            if (span) REQUIRE(integer_combination(L.basis(), k));
        });
    }
}

TEST_CASE("saturation of a scaled vector drops the scale", "[exactalg]") {
    IntLattice L = saturate({RatVector{Rational(2), Rational(4), Rational(6)}}, 3);
    REQUIRE(L.rank() == 1);
    CHECK(L.contains(IntVector{1, 2, 3}));
    CHECK_FALSE(L.contains(IntVector{1, 2, 4}));
}
