#include <catch_amalgamated.hpp>

#include "grids.hpp"
#include "support.hpp"

using namespace ergokit;
using namespace testsupport;

namespace {

const long double two_pi = 6.283185307179586476925286766559005768L;

std::complex<long double> e_ld(long double x) { return std::polar(1.0L, two_pi * (x - std::floor(x))); }

std::complex<long double> direct_star_sum(long double alpha, long long N) {
    std::complex<long double> s = 0;
    for (long long k = 0; k < N; ++k) s += e_ld(alpha * static_cast<long double>(k));
    return s / static_cast<long double>(N);
}

}  // namespace

TEST_CASE("geometric star ratio vanishes exactly when N alpha is an integer and alpha is not", "[closedform][property]") {
    NumericAssignment nu = sqrt2_c();
    for (long long q = 1; q <= 8; ++q)
        for (long long p = -10; p <= 10; ++p)
            for (long long N : {1LL, 2LL, 3LL, 4LL, 6LL, 8LL, 12LL, 100LL, 240LL}) {
                Rational al(p, q);
                auto v = star_ratio_sum(SymbolicReal(al), N);
                bool zero = is_integer(al * Rational(N)) && !is_integer(al);
                REQUIRE(v.exact_zero() == zero);
                REQUIRE(std::abs(v.evaluate(nu) - direct_star_sum(static_cast<long double>(al), N)) < 1e-13L);
            }
    SymbolicReal c = SymbolicReal::symbol("c");
    for (long long N : {1LL, 5LL, 64LL, 65LL, 1000LL}) {
        SymbolicReal al = c / Rational(3) + SymbolicReal(Rational(1, 5));
        auto v = star_ratio_sum(al, N);
        REQUIRE_FALSE(v.exact_zero());
        REQUIRE(std::abs(v.evaluate(nu) - direct_star_sum(evaluate_ld(al, nu), N)) < 1e-12L);
    }
}

TEST_CASE("integral star ratio vanishes exactly on nonzero integers", "[closedform][property]") {
    NumericAssignment nu = sqrt2_c();
    SymbolicReal c = SymbolicReal::symbol("c");
    std::vector<SymbolicReal> xs{SymbolicReal(), SymbolicReal(1), SymbolicReal(-3), SymbolicReal(Rational(1, 2)),
                                 SymbolicReal(Rational(-7, 3)), c, c * c, c / Rational(5)};
    for (const auto& x : xs) {
        auto v = star_ratio_integral(x);
        REQUIRE(v.exact_zero() == is_nonzero_integer(x));
        long double xv = evaluate_ld(x, nu);
        std::complex<long double> expect =
            std::abs(xv) < 1e-30L ? std::complex<long double>(1) : (e_ld(xv) - 1.0L) / std::complex<long double>(0, two_pi * xv);
        REQUIRE(std::abs(v.evaluate(nu) - expect) < 1e-14L);
    }
}

TEST_CASE("2d integrals against the piecewise oracle", "[closedform][property]") {
    auto out = grids::grid_2d();
    INFO(out.first_failure << " worst " << static_cast<double>(out.worst));
    REQUIRE(out.ok());
}

TEST_CASE("3d integrals against the piecewise oracle on a slice", "[closedform][property]") {
    NumericAssignment nu = sqrt2_c();
    grids::Outcome out;
    for (long long r : {-2, 1, 3})
        for (long long w : {-1, 0, 2})
            for (const auto& al : grids::weights())
                for (const auto& be : grids::weights()) {
                    auto res = subtorus_integral_3d(al, be, w, 3, 2, r);
                    auto orc = piecewise_integral_oracle(OracleShape::three(3, 2, r, w), evaluate_ld(al, nu), evaluate_ld(be, nu));
                    grids::compare(out, res, orc, nu, 1e-12L, 1e-9L, al.to_string() + "," + be.to_string());
                }
    INFO(out.first_failure);
    REQUIRE(out.ok());
}

TEST_CASE("negating the weights conjugates the 2d integral", "[closedform][property]") {
    NumericAssignment nu = sqrt2_c();
    for (long long a : {-3, -1, 2, 5})
        for (long long b : {-4, 1, 3})
            if (gcd_int(a, b) == 1)
                for (const auto& al : grids::weights())
                    for (const auto& be : grids::weights()) {
                        auto v = subtorus_integral_2d(al, be, a, b).value.evaluate(nu);
                        auto w = subtorus_integral_2d(-al, -be, a, b).value.evaluate(nu);
                        REQUIRE(std::abs(w - std::conj(v)) < 1e-13L);
                    }
}

TEST_CASE("zero decisions come only from the exact conditions", "[closedform][property]") {
    for (long long a = 1; a <= 4; ++a)
        for (long long b = -4; b <= 4; ++b) {
            if (b == 0 || gcd_int(a, b) != 1) continue;
            for (const auto& al : grids::weights())
                for (const auto& be : grids::weights()) {
                    auto res = subtorus_integral_2d(al, be, a, b);
                    REQUIRE(res.value.exact_zero() == !res.conditions.all_hold());
                }
        }
    auto z = subtorus_integral_2d(1, 0, 1, 1);
    CHECK(z.value.exact_zero());
    CHECK_FALSE(z.conditions.conditions[2].holds);
}

TEST_CASE("flipping the sign of p2 multiplies the limit by e(-t2)", "[closedform][property]") {
    // [-x] = -[x] - 1 off the integers, so the u2 = -1 limit at (t1, t2) is e(-t2) times the u2 = +1 limit at (t1, -t2)
    NumericAssignment nu = sqrt2_c();
    SymbolicReal c = SymbolicReal::symbol("c");
    RPoly g = parse_poly("n^2");
    struct W8 {
        SymbolicReal t1, t2;
        Rational d;
    };
    std::vector<W8> cases{
        {-c, c + SymbolicReal(1), 1},
        {-c * SymbolicReal(2), c * SymbolicReal(2) + SymbolicReal(3), 1},
        {-(c + SymbolicReal(1)), c, 1},
        {-c, c + SymbolicReal(Rational(1, 2)), Rational(1, 2)},
    };
    int compared = 0;
    for (const auto& k : cases) {
        auto minus = limit_case2(g, c, k.d, 1, -1, k.t1, k.t2);
        auto plus = limit_case2(g, c, k.d, 1, 1, k.t1, -k.t2);
        if (std::holds_alternative<Undetermined>(minus) || std::holds_alternative<Undetermined>(plus)) continue;
        auto vm = std::get<ComplexExact>(minus).evaluate(nu);
        auto vp = std::get<ComplexExact>(plus).evaluate(nu) * e_ld(-evaluate_ld(k.t2, nu));
        REQUIRE(std::abs(vm - vp) < 1e-13L);
        ++compared;
    }
    CHECK(compared >= 3);
}

TEST_CASE("odd-progression formula reproduces the cubic reference value exactly", "[closedform]") {
    SymbolicReal c = SymbolicReal::symbol("c");
    auto v = case22_value(parse_poly("n^3"), parse_poly("n^2/4"), c, 1, 1, 1);
    CHECK(v.W == 2);
    CHECK(v.t1 == -c);
    CHECK(v.t2 == c);
    CHECK(v.value == appendix_values(AppendixFixture::apd2, c));
    // 1 - e(-1/4) = 1 + i
    ExpSum lhs = ExpSum(RatComplex(1)) - ExpSum::exp(SymbolicReal(Rational(-1, 4)));
    CHECK(lhs == ExpSum(RatComplex(1, 1)));
}

TEST_CASE("reference closed forms at c = sqrt2", "[closedform]") {
    NumericAssignment nu = sqrt2_c();
    SymbolicReal c = SymbolicReal::symbol("c");
    auto v1 = appendix_values(AppendixFixture::apd, c).evaluate(nu);
    auto v2 = appendix_values(AppendixFixture::apd2, c).evaluate(nu);
    std::complex<long double> pre = std::complex<long double>(1, 1) / std::complex<long double>(0, two_pi);
    long double cv = evaluate_ld(c, nu);
    CHECK(std::abs(v1 - pre * (e_ld(cv) - 1.0L)) < 1e-15L);
    CHECK(std::abs(v2 - pre * e_ld(-cv / 4) * (e_ld(cv) - 1.0L)) < 1e-15L);
    CHECK(std::abs(std::abs(v1) - 0.43391L) < 1e-5L);
}

TEST_CASE("exact sums canonicalize phases", "[closedform][property]") {
    NumericAssignment nu = sqrt2_c();
    SymbolicReal c = SymbolicReal::symbol("c");
    for (int i = 0; i < 100; ++i) {
        SymbolicReal ph = small_scalar({"c"}, 2);
        Rational k(uniform(-8, 8), 4);
        ExpSum a = ExpSum::exp(ph + SymbolicReal(k));
        ExpSum b = ExpSum::exp(ph) * ExpSum::exp(SymbolicReal(k));
        REQUIRE(a == b);
        REQUIRE(std::abs(a.evaluate(nu) - e_ld(evaluate_ld(ph + SymbolicReal(k), nu))) < 1e-14L);
        REQUIRE((a - a).is_zero());
        REQUIRE(a.conj() * a == ExpSum(RatComplex(1)));
    }
    CHECK(ExpSum::exp(c) + ExpSum::exp(c + SymbolicReal(Rational(1, 2))) == ExpSum());
}
