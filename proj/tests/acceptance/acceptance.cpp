// one PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "grids.hpp"
#include "support.hpp"
#include "typeb.hpp"

using namespace ergokit;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const SymbolicReal c = SymbolicReal::symbol("c");

std::complex<long double> ld(std::complex<double> z) { return {z.real(), z.imag()}; }

WeylJob job_for(std::vector<std::string> polys, std::vector<SymbolicReal> t, Integer W, Integer r, std::uint64_t N) {
    WeylJob job;
    job.polynomials = corpus::parse_all(polys);
    job.weights = std::move(t);
    job.W = W;
    job.r_off = r;
    job.N = N;
    job.assignment = sqrt2_c();
    return job;
}

std::string fmt(long double x) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << static_cast<double>(x);
    return s.str();
}

Outcome grid(const grids::Outcome& g) {
    std::ostringstream s;
    s << g.cases << " cases, worst " << fmt(g.worst) << ", " << g.value_mismatch << " value / " << g.predicate_mismatch
      << " predicate mismatches";
    if (!g.first_failure.empty()) s << ", first: " << g.first_failure;
    return {g.ok(), s.str()};
}

Outcome c1() { return grid(grids::grid_2d(1e-12L, 1e-9L)); }
Outcome c2() { return grid(grids::grid_3d(1e-12L, 1e-9L)); }

Outcome c3() {
    auto job = job_for({"n^2 + c*n", "n^2 + (c+1)*n + 1/4"}, {-c, c}, 1, 0, 1000000);
    auto m = weyl_average(job);
    auto want = appendix_values(AppendixFixture::apd, c).evaluate(job.assignment);
    long double dev = std::abs(ld(m.mean) - want);
    return {dev <= 5e-3L, "deviation " + fmt(dev) + ", |value| = " + std::to_string(static_cast<double>(std::abs(want)))};
}

Outcome c4() {
    auto odd = job_for({"n^3 + c*n^2/4", "n^3 + (c+1)*n^2/4"}, {-c, c}, 2, 1, 10000000);
    auto even = odd;
    even.r_off = 0;
    auto mo = weyl_average(odd), me = weyl_average(even);
    long double dev = std::abs(ld(mo.mean) - appendix_values(AppendixFixture::apd2, c).evaluate(odd.assignment));
    long double zero = std::abs(me.mean);
    return {dev <= 2e-2L && zero <= 1e-2L, "odd deviation " + fmt(dev) + ", even |mean| " + fmt(zero)};
}

Outcome c5() {
    std::mt19937_64 local(20261015);
    rng() = local;
    int done = 0, attempts = 0;
    long double worst = 0;
    std::string first;
    while (done < 10 && ++attempts < 1000) {
        RPoly g = rational_poly(static_cast<int>(uniform(1, 3)), true, 3, 3);
        RPoly f = rational_poly(static_cast<int>(uniform(1, 3)), true, 3, 3);
        Rational d = small_rational(3, 3);
        int u2 = uniform(0, 1) ? 1 : -1;
        if (g.is_zero() || d == 0) continue;
        RPoly dg = g.scaled(SymbolicReal(d));
        Integer r = -1;
        for (Integer k = 0; k <= 7 && r < 0; ++k)
            if (!is_integer(dg(Rational(k)).constant_term())) r = k;
        if (r < 0) continue;
        RPoly p1 = f + g.scaled(c);
        RPoly p2 = (f + g.scaled(c + SymbolicReal(d))).scaled(SymbolicReal(u2));
        auto cert = type_b_extract(p1, p2);
        if (!cert || !cert->f_not_multiple_of_g) continue;
        auto v = case22_value(f, g, c, d, u2, r);
        if (v.W > 24) continue;  // keep the sampled progressions short
        WeylJob job{{p1, p2}, {v.t1, v.t2}, v.W, r, 1000000, sqrt2_c(), WeylMode::integer_part};
        long double dev = std::abs(ld(weyl_average(job).mean) - v.value.evaluate(job.assignment));
        if (dev > worst) worst = dev;
        if (dev > 1e-2L && first.empty()) first = p1.to_string() + " | " + p2.to_string() + " r=" + r.str();
        ++done;
    }
    auto sym = case22_value(parse_poly("n^3"), parse_poly("n^2/4"), c, 1, 1, 1);
    bool exact = sym.value == appendix_values(AppendixFixture::apd2, c) && sym.W == 2;
    bool unit = ExpSum(RatComplex(1)) - ExpSum::exp(SymbolicReal(Rational(-1, 4))) == ExpSum(RatComplex(1, 1));
    std::string detail = std::to_string(done) + " fixtures, worst " + fmt(worst) + (exact && unit ? ", symbolic match" : ", symbolic MISMATCH");
    if (!first.empty()) detail += ", first failure: " + first;
    return {done == 10 && worst <= 1e-2L && exact && unit, detail};
}

Outcome c6() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    const ClassificationReport* witness_case = nullptr;
    std::vector<ClassificationReport> reports;
    for (const auto& e : corpus::classifier()) {
        auto r = corpus::classify_any(corpus::parse_all(e.family));
        bool good = r.verdict == e.verdict && r.basis == e.basis && corpus::certificate_holds(r);
        if (!good && bad.empty()) bad = e.family[0];
        ok = ok && good;
        reports.push_back(std::move(r));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& r : reports)
        if (r.verdict == Verdict::NotTJE && r.family.size() == 2) witness_case = &r;
    bool verified = false;
    if (witness_case) {
        VerifyOptions vo;
        vo.N = 1000000;
        verified = verify_report(*witness_case, sqrt2_c(), vo).pass;
    }
    std::string detail = std::to_string(reports.size()) + " entries classified in " + std::to_string(secs) + " s" +
                         (verified ? ", pair witness verified" : ", pair witness NOT verified");
    if (!bad.empty()) detail += ", mismatch at " + bad;
    return {ok && verified && secs < 30, detail};
}

Outcome c7() {
    std::size_t checked = 0, wrong = 0;
    for (const auto& t : corpus::triples()) {
        auto p = corpus::parse_all(t);
        IntLattice K = rational_dependencies(p);
        for_each_box(3, 6, [&](const IntVector& k) {
            ++checked;
            if (K.contains(k) != combination(k, p).is_rational()) ++wrong;
        });
    }
    return {wrong == 0, std::to_string(checked) + " vectors, " + std::to_string(wrong) + " disagreements"};
}

Outcome c8() {
    int ok = 0;
    for (int i = 0; i < 50; ++i) {
        Forward fw = random_type_b();
        RPoly p1 = (fw.f + fw.g.scaled(fw.c)).scaled(SymbolicReal(fw.u1));
        RPoly p2 = (fw.f + fw.g.scaled(fw.c + SymbolicReal(fw.d))).scaled(SymbolicReal(fw.u2));
        auto cert = type_b_extract(p1, p2);
        Forward nf = normalized(fw);
        if (cert && cert->verify(p1, p2) && cert->f == nf.f && cert->g == nf.g && cert->c == nf.c && cert->d == nf.d &&
            cert->u1 == nf.u1 && cert->u2 == nf.u2)
            ++ok;
    }
    return {ok == 50, std::to_string(ok) + "/50 recovered"};
}

Outcome c9() {
    std::vector<WeylJob> jobs{
        job_for({"c*n"}, {c}, 1, 0, 10000),
        job_for({"n^2 + c*n", "n^2 + (c+1)*n + 1/4"}, {-c, c}, 1, 0, 10000),
        job_for({"n^3 + c*n^2/4", "n^3 + (c+1)*n^2/4"}, {-c, c}, 2, 1, 10000),
        job_for({"c*n^4 + n^3/3", "c*n^2/7 - n/5"}, {c, SymbolicReal(Rational(1, 3))}, 3, 2, 10000),
        job_for({"c*n^4/5 + c*n"}, {c / Rational(3)}, 5, -1, 10000),
    };
    long double worst = 0;
    for (const auto& j : jobs) worst = std::max(worst, precision_audit(j, 10000));
    auto big = job_for({"n^3 + c*n^2/4", "n^3 + (c+1)*n^2/4"}, {-c, c}, 2, 1, 1000000);
    auto base = weyl_average(big, WeylOptions{1, 1 << 16, false});
    bool same = true;
    for (unsigned th : {4u, 8u}) {
        auto m = weyl_average(big, WeylOptions{th, 1 << 16, false});
        same = same && m.mean.real() == base.mean.real() && m.mean.imag() == base.mean.imag();
    }
    return {worst <= 1e-9L && same, "max phase deviation " + fmt(worst) + (same ? ", 1/4/8 threads identical" : ", thread results DIFFER")};
}

Outcome c10() {
    std::string list = ERGOKIT_PROPERTY_SUITES;
    std::stringstream ss(list);
    std::string path, failed;
    int n = 0;
    while (std::getline(ss, path, ',')) {
        if (path.empty()) continue;
        ++n;
        std::string cmd = "\"" + path + "\" \"[property]\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) failed += " " + path.substr(path.find_last_of('/') + 1);
    }
    return {n > 0 && failed.empty(), std::to_string(n) + " suites" + (failed.empty() ? "" : ", failing:" + failed)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget;  // seconds, 0 for none
    };
    std::vector<Criterion> all{
        {"2d subtorus integrals vs oracle", c1, 10},
        {"3d subtorus integrals vs oracle", c2, 60},
        {"quadratic reference average", c3, 10},
        {"cubic reference average, odd and even progressions", c4, 120},
        {"odd-progression limit formula", c5, 0},
        {"classifier corpus", c6, 0},
        {"relation lattice brute force", c7, 0},
        {"Type-B round trip", c8, 0},
        {"engine precision and determinism", c9, 0},
        {"property suites", c10, 0},
    };
    int failures = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (all[i].budget > 0 && secs >= all[i].budget) {
            o.pass = false;
            o.detail += ", over the " + std::to_string(static_cast<int>(all[i].budget)) + " s budget";
        }
        if (!o.pass) ++failures;
        std::printf("criterion %2zu %s  %s (%s; %.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", all[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, all.size());
    return failures == 0 ? 0 : 1;
}
