#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "support.hpp"
#include "typeb.hpp"

using namespace ergokit;
using namespace testsupport;

TEST_CASE("relation lattice matches brute force on corpus triples", "[structure][property]") {
    for (const auto& t : corpus::triples()) {
        auto p = corpus::parse_all(t);
        IntLattice K = rational_dependencies(p);
        for_each_box(3, 6, [&](const IntVector& k) { REQUIRE(K.contains(k) == combination(k, p).is_rational()); });
    }
}

TEST_CASE("Type-B extraction round-trips random forward instances", "[structure][property]") {
    for (int i = 0; i < 50; ++i) {
        Forward fw = random_type_b();
        RPoly p1 = (fw.f + fw.g.scaled(fw.c)).scaled(SymbolicReal(fw.u1));
        RPoly p2 = (fw.f + fw.g.scaled(fw.c + SymbolicReal(fw.d))).scaled(SymbolicReal(fw.u2));
        INFO(p1.to_string() << " | " << p2.to_string());
        auto cert = type_b_extract(p1, p2);
        REQUIRE(cert);
        REQUIRE(cert->verify(p1, p2));
        REQUIRE_FALSE(cert->g.is_zero());
        Forward nf = normalized(fw);
        CHECK(cert->f == nf.f);
        CHECK(cert->g == nf.g);
        CHECK(cert->c == nf.c);
        CHECK(cert->d == nf.d);
        CHECK(cert->u1 == nf.u1);
        CHECK(cert->u2 == nf.u2);
    }
}

TEST_CASE("pairs that are not Type-B are rejected", "[structure]") {
    CHECK_FALSE(type_b_extract(parse_poly("c*n"), parse_poly("c*n^2")));
    CHECK_FALSE(type_b_extract(parse_poly("c*n"), parse_poly("e*n")));
    CHECK_THROWS_AS(type_b_extract(parse_poly("c*n + 1"), parse_poly("c*n")), std::invalid_argument);
    CHECK_THROWS_AS(type_b_extract(parse_poly("n^2"), parse_poly("c*n")), std::invalid_argument);
}

TEST_CASE("dependence witnesses verify and survive reparametrization", "[structure][property]") {
    std::vector<std::vector<std::string>> fams{
        {"n^2 + c*n", "n^2 + (c+1)*n"},
        {"c*n^2 + n", "c^2*n^2 + c*n"},
        {"n^3 + c*n^2/4", "n^3 + (c+1)*n^2/4"},
        {"c*n", "e*n", "(c+e)*n"},
    };
    for (const auto& fam : fams) {
        auto p = corpus::parse_all(fam);
        auto w = irrational_or_zero_dependence(p);
        REQUIRE(w);
        REQUIRE(w->verify(p));
        for (Integer W = 1; W <= 3; ++W)
            for (Integer r = -2; r <= 2; ++r) {
                std::vector<RPoly> q;
                for (const auto& x : p) q.push_back(reparametrize(x, W, r));
                RPoly sum;
                for (std::size_t i = 0; i < q.size(); ++i) sum += q[i].scaled(w->coefficients[i]);
                REQUIRE(sum.is_rational_plus_real());
            }
    }
}

TEST_CASE("independent pairs have no dependence witness", "[structure]") {
    CHECK_FALSE(irrational_or_zero_dependence(corpus::parse_all({"n^3 + a*n^2 + a^2*n", "n^2 + a*n"})));
    CHECK_FALSE(irrational_or_zero_dependence(corpus::parse_all({"c*n", "c*n^2"})));
}

TEST_CASE("orbit membership in the relation subtorus", "[structure]") {
    auto p = corpus::parse_all({"n^2/2 + c*n", "c*n"});
    Subtorus Y = subtorus_of(p);
    CHECK(Y.dimension() == 1);
    CHECK_FALSE(orbit_in_subtorus(p, Y, 1));
    CHECK(orbit_in_subtorus(p, Y, 2));
}
