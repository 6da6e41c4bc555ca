#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "classify.hpp"
#include "closedform.hpp"
#include "parse.hpp"
#include "serialize.hpp"
#include "structure.hpp"
#include "weyl.hpp"

namespace ergokit::cli {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::vector<std::string> assign;
    std::uint64_t N = 1000000;
    double tol = 1e-2;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t block_size = std::uint64_t(1) << 20;
    std::string out;
};

inline NumericAssignment parse_assignment(const std::vector<std::string>& items) {
    NumericAssignment nu;
    for (const auto& s : items) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
            throw InputError("--assign expects symbol=value, got '" + s + "'");
        try {
            nu.set(s.substr(0, eq), s.substr(eq + 1));
        } catch (const std::exception& e) {
            throw InputError("--assign " + s + ": " + e.what());
        }
    }
    return nu;
}

inline void require_symbols(const std::set<std::string>& syms, const NumericAssignment& nu) {
    for (const auto& s : syms)
        if (!nu.has(s)) throw InputError("unknown symbol '" + s + "': give a value with --assign " + s + "=...");
}

inline std::vector<RPoly> parse_polys(const std::vector<std::string>& texts) {
    std::vector<RPoly> out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        try {
            out.push_back(parse_poly(texts[i]));
        } catch (const ParseError& e) {
            throw InputError("polynomial " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

inline SymbolicReal parse_weight(const std::string& text, const char* what) {
    try {
        return parse_scalar(text);
    } catch (const ParseError& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

inline WeylOptions weyl_options(const CommonOptions& c) {
    WeylOptions w;
    w.threads = c.threads;
    w.block_size = c.block_size;
    return w;
}

inline json base_report(const std::string& command) { return {{"schema", report_schema}, {"command", command}}; }

inline void write_report(const json& j, const CommonOptions& c, std::ostream& out) {
    if (c.out.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << j.dump(2) << "\n";
}

struct Fixture {
    std::vector<RPoly> polys;
    std::vector<SymbolicReal> t;
    Integer W, r;
    ComplexExact predicted;
    Integer even_W = 0, even_r = 0;  // optional zero-test progression
};

inline Fixture fixture(const std::string& name) {
    SymbolicReal c = SymbolicReal::symbol("c");
    Fixture f;
    f.t = {-c, c};
    if (name == "apd") {
        f.polys = {parse_poly("n^2 + c*n"), parse_poly("n^2 + (c+1)*n + 1/4")};
        f.W = 1;
        f.r = 0;
        f.predicted = appendix_values(AppendixFixture::apd, c);
    } else if (name == "apd2") {
        f.polys = {parse_poly("n^3 + c*n^2/4"), parse_poly("n^3 + (c+1)*n^2/4")};
        f.W = 2;
        f.r = 1;
        f.predicted = appendix_values(AppendixFixture::apd2, c);
        f.even_W = 2;
        f.even_r = 0;
    } else {
        throw InputError("unknown fixture '" + name + "' (apd, apd2)");
    }
    return f;
}

inline std::complex<double> to_cd(std::complex<long double> z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline void add_common(CLI::App* sub, CommonOptions& c) {
    sub->add_option("--assign", c.assign, "numeric value for a symbol, e.g. c=sqrt2");
    sub->add_option("--N", c.N, "number of terms")->envname("ERGOKIT_N")->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "tolerance")->envname("ERGOKIT_TOL")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "worker threads")->envname("ERGOKIT_THREADS")->check(CLI::PositiveNumber);
    sub->add_option("--block-size", c.block_size, "terms per summation block")->check(CLI::PositiveNumber);
    sub->add_option("--out,-o", c.out, "write the JSON report here instead of stdout");
}

// returns the process exit code: 0 success, 2 verification failure, 1 input error
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"ergokit: joint ergodicity of integer parts of real polynomials"};
    app.require_subcommand(1);
    CommonOptions common;

    std::vector<std::string> polys_text;
    bool relaxed = false, do_verify = false, case22 = false, measure = false, two_d = false, three_d = false,
         discrepancy = false;
    std::string family_class, t1_text, t2_text, alpha_text = "0", beta_text = "0", fixture_name, csv_path,
                                                mode = "integer_part";
    std::vector<std::string> weights_text;
    long long a = 1, b = 1, r_rel = 1, w = 0, W = 1, r_off = 0;
    std::optional<long long> r_given;

    auto* classify = app.add_subcommand("classify", "decide total joint ergodicity");
    classify->add_option("polys", polys_text, "polynomials in n")->required();
    classify->add_flag("--relaxed", relaxed, "allow integer constant terms");
    classify->add_option("--class", family_class, "rational_plus_real | q_independent_irrationals");
    classify->add_flag("--verify", do_verify, "check the verdict numerically");
    add_common(classify, common);

    auto* limit = app.add_subcommand("limit", "closed-form limit for a Type-B pair");
    limit->add_option("polys", polys_text, "p1 p2")->required()->expected(2);
    limit->add_option("--t1", t1_text, "weight of p1");
    limit->add_option("--t2", t2_text, "weight of p2");
    limit->add_flag("--case22", case22, "value along the odd-type progression (|u1| = |u2| = 1)");
    limit->add_option("--r-off", r_given, "progression offset for --case22");
    limit->add_flag("--measure", measure, "also measure the average numerically");
    add_common(limit, common);

    auto* integral = app.add_subcommand("integral", "subtorus integral");
    integral->add_flag("--2d", two_d, "integral over ax + by = 0");
    integral->add_flag("--3d", three_d, "integral over ax + by = 0, r x + b z = 0");
    integral->add_option("--a", a)->required();
    integral->add_option("--b", b)->required();
    integral->add_option("--r", r_rel, "3d: r");
    integral->add_option("--w", w, "3d: weight of z");
    integral->add_option("--alpha", alpha_text);
    integral->add_option("--beta", beta_text);
    add_common(integral, common);

    auto* weylsum = app.add_subcommand("weylsum", "numerical Weyl-sum average");
    weylsum->add_option("polys", polys_text)->required();
    weylsum->add_option("--t", weights_text, "weights, one per polynomial")->required();
    weylsum->add_option("--W", W)->check(CLI::PositiveNumber);
    weylsum->add_option("--r", r_off);
    weylsum->add_option("--mode", mode, "integer_part | fractional_orbit");
    weylsum->add_option("--csv", csv_path, "per-block cumulative means");
    add_common(weylsum, common);

    auto* subtorus = app.add_subcommand("subtorus", "relation lattice and orbit subtorus");
    subtorus->add_option("polys", polys_text)->required();
    subtorus->add_option("--W", W)->check(CLI::PositiveNumber);
    subtorus->add_option("--r", r_off);
    subtorus->add_flag("--discrepancy", discrepancy, "star discrepancy of the orbit in Y");
    add_common(subtorus, common);

    auto* verify = app.add_subcommand("verify", "closed form against measurement");
    verify->add_option("polys", polys_text, "family to classify and verify");
    verify->add_option("--fixture", fixture_name, "apd | apd2");
    add_common(verify, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const NumericAssignment nu = parse_assignment(common.assign);
        json rep;

        if (*classify) {
            auto p = parse_polys(polys_text);
            ClassificationReport r;
            if (p.size() == 2 && family_class.empty()) {
                bool zero = p[0].constant_term().is_zero() && p[1].constant_term().is_zero();
                if (!zero && !relaxed) throw InputError("p(0) = 0 is required (use --relaxed for integer constants)");
                r = zero ? classify_pair(p[0], p[1]) : classify_pair_relaxed(p[0], p[1]);
            } else {
                FamilyClass cls;
                if (family_class == "rational_plus_real")
                    cls = FamilyClass::rational_plus_real;
                else if (family_class == "q_independent_irrationals")
                    cls = FamilyClass::q_independent_irrationals;
                else if (family_class.empty()) {
                    bool rpr = std::all_of(p.begin(), p.end(), [](const RPoly& q) { return q.is_rational_plus_real(); });
                    cls = rpr ? FamilyClass::rational_plus_real : FamilyClass::q_independent_irrationals;
                } else {
                    throw InputError("unknown --class '" + family_class + "'");
                }
                r = classify_family_special(p, cls);
            }
            int code = 0;
            if (do_verify && r.verdict != Verdict::Undetermined) {
                require_symbols(detail::family_symbols(p), nu);
                VerifyOptions vo{common.N, common.tol, weyl_options(common)};
                r.verification = verify_report(r, nu, vo);
                code = r.verification->pass ? 0 : 2;
            }
            rep = base_report("classify");
            rep.update(to_json_value(r));
            write_report(rep, common, out);
            return code;
        }

        if (*limit) {
            auto p = parse_polys(polys_text);
            if (!p[0].constant_term().is_zero() || !p[1].constant_term().is_zero())
                throw InputError("limit: p(0) = 0 is required");
            if (p[0].is_rational() || p[1].is_rational()) throw InputError("limit: both polynomials must be irrational");
            auto cert = type_b_extract(p[0], p[1]);
            if (!cert) throw InputError("limit: the pair is not Type-B");
            rep = base_report("limit");
            rep["type_b"] = to_json_value(*cert);
            std::vector<SymbolicReal> t;
            Integer Wp = 1, rp = 0;
            std::optional<ComplexExact> value;
            if (case22) {
                if (abs_int(cert->u1) != 1 || abs_int(cert->u2) != 1) throw InputError("limit --case22 needs |u1| = |u2| = 1");
                RPoly dg = cert->g.scaled(SymbolicReal(cert->d));
                Integer r = 1;
                if (r_given)
                    r = *r_given;
                else
                    while (is_integer(dg(Rational(r)).constant_term())) ++r;
                auto v = case22_value(cert->f, cert->g, cert->c, cert->d, static_cast<int>(cert->u1 * cert->u2), r);
                t = {v.t1, v.t2};
                Wp = v.W;
                rp = r;
                value = v.value;
                rep["limit"] = to_json_value(v.value);
            } else {
                if (t1_text.empty() || t2_text.empty()) throw InputError("limit needs --t1 and --t2 (or --case22)");
                t = {parse_weight(t1_text, "--t1"), parse_weight(t2_text, "--t2")};
                LimitResult lr;
                if (cert->f_not_multiple_of_g) {
                    lr = limit_case1(*cert, t[0], t[1]);
                } else {
                    Rational s = cert->f.is_zero() ? Rational(0)
                                                   : cert->f.coefficients().back().constant_term() /
                                                         cert->g.coefficients().back().constant_term();
                    lr = limit_case2(cert->g, cert->c + SymbolicReal(s), cert->d, cert->u1, cert->u2, t[0], t[1]);
                }
                if (auto* u = std::get_if<Undetermined>(&lr)) {
                    rep["limit"] = {{"undetermined", u->reason}};
                } else {
                    value = std::get<ComplexExact>(lr);
                    rep["limit"] = to_json_value(*value);
                }
                Wp = detail::least_step({p[0], p[1], p[0].scaled(t[0]) + p[1].scaled(t[1])}, {});
            }
            rep["t"] = scalars_json(t);
            rep["W"] = Wp.str();
            rep["r_off"] = rp.str();
            std::set<std::string> syms = detail::family_symbols(p);
            for (const auto& x : t)
                for (const auto& s : x.symbols()) syms.insert(s);
            bool covered = std::all_of(syms.begin(), syms.end(), [&](const std::string& s) { return nu.has(s); });
            if (value && covered) rep["numeric"] = complex_json(value->evaluate(nu), "closed_form");
            int code = 0;
            if (measure) {
                require_symbols(syms, nu);
                WeylJob job{p, t, Wp, rp, common.N, nu, WeylMode::integer_part};
                auto wr = weyl_average(job, weyl_options(common));
                rep["measured"] = to_json_value(wr);
                if (value) {
                    double dev = std::abs(wr.mean - to_cd(value->evaluate(nu)));
                    rep["deviation"] = dev;
                    code = dev <= common.tol ? 0 : 2;
                }
            }
            write_report(rep, common, out);
            return code;
        }

        if (*integral) {
            if (two_d == three_d) throw InputError("integral: choose exactly one of --2d, --3d");
            SymbolicReal al = parse_weight(alpha_text, "--alpha"), be = parse_weight(beta_text, "--beta");
            IntegralResult res;
            OracleShape shape;
            try {
                if (two_d) {
                    res = subtorus_integral_2d(al, be, a, b);
                    shape = OracleShape::two_d(a, b);
                } else {
                    res = subtorus_integral_3d(al, be, w, a, b, r_rel);
                    shape = OracleShape::three(a, b, r_rel, w);
                }
            } catch (const std::domain_error& e) {
                throw InputError(e.what());
            }
            rep = base_report("integral");
            rep["shape"] = two_d ? json{{"a", a}, {"b", b}} : json{{"a", a}, {"b", b}, {"r", r_rel}, {"w", w}};
            rep["alpha"] = al.to_string();
            rep["beta"] = be.to_string();
            rep["conditions"] = to_json_value(res.conditions);
            rep["value"] = to_json_value(res.value);
            rep["exact_zero"] = res.value.exact_zero();
            std::set<std::string> syms = al.symbols();
            for (const auto& s : be.symbols()) syms.insert(s);
            if (std::all_of(syms.begin(), syms.end(), [&](const std::string& s) { return nu.has(s); })) {
                rep["numeric"] = complex_json(res.value.evaluate(nu), "closed_form");
                rep["oracle"] = complex_json(piecewise_integral_oracle(shape, evaluate_ld(al, nu), evaluate_ld(be, nu)), "measured");
            }
            write_report(rep, common, out);
            return 0;
        }

        if (*weylsum) {
            auto p = parse_polys(polys_text);
            if (weights_text.size() != p.size()) throw InputError("weylsum: give one --t per polynomial");
            std::vector<SymbolicReal> t;
            for (const auto& s : weights_text) t.push_back(parse_weight(s, "--t"));
            std::set<std::string> syms = detail::family_symbols(p);
            for (const auto& x : t)
                for (const auto& s : x.symbols()) syms.insert(s);
            require_symbols(syms, nu);
            WeylMode m;
            if (mode == "integer_part")
                m = WeylMode::integer_part;
            else if (mode == "fractional_orbit")
                m = WeylMode::fractional_orbit;
            else
                throw InputError("unknown --mode '" + mode + "'");
            WeylJob job{p, t, W, r_off, common.N, nu, m};
            WeylOptions wo = weyl_options(common);
            wo.record_blocks = !csv_path.empty();
            auto wr = weyl_average(job, wo);
            rep = base_report("weylsum");
            rep["family"] = polys_json(p);
            rep["t"] = scalars_json(t);
            rep["W"] = W;
            rep["r_off"] = r_off;
            rep["mode"] = mode;
            rep["threads"] = common.threads;
            rep["block_size"] = common.block_size;
            rep.update(to_json_value(wr));
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) throw InputError("cannot write " + csv_path);
                f << "block_index,N_cum,mean_re,mean_im\n";
                f.precision(17);
                for (const auto& row : wr.blocks)
                    f << row.block_index << "," << row.N_cum << "," << row.mean_re << "," << row.mean_im << "\n";
                rep["csv"] = csv_path;
            }
            write_report(rep, common, out);
            return 0;
        }

        if (*subtorus) {
            auto p = parse_polys(polys_text);
            Subtorus Y = subtorus_of(p);
            rep = base_report("subtorus");
            rep["family"] = polys_json(p);
            json basis = json::array();
            for (const auto& k : Y.relations.basis()) basis.push_back(intvec_json(k));
            rep["relations"] = basis;
            rep["dimension"] = Y.dimension();
            bool zero = std::all_of(p.begin(), p.end(), [](const RPoly& q) { return q.constant_term().is_zero(); });
            if (zero) {
                rep["w0_upper_bound"] = w0_upper_bound(p);
                rep["orbit_in_subtorus"] = orbit_in_subtorus(p, Y, W);
            }
            if (discrepancy) {
                require_symbols(detail::family_symbols(p), nu);
                try {
                    rep["discrepancy"] = orbit_discrepancy(p, Y, W, r_off, common.N, nu);
                } catch (const std::domain_error& e) {
                    throw InputError(e.what());
                }
            }
            write_report(rep, common, out);
            return 0;
        }

        if (*verify) {
            rep = base_report("verify");
            if (!fixture_name.empty()) {
                Fixture f = fixture(fixture_name);
                NumericAssignment v = nu;
                if (!v.has("c")) throw InputError("unknown symbol 'c': give a value with --assign c=...");
                WeylJob job{f.polys, f.t, f.W, f.r, common.N, v, WeylMode::integer_part};
                auto wr = weyl_average(job, weyl_options(common));
                auto pred = to_cd(f.predicted.evaluate(v));
                bool pass = std::abs(wr.mean - pred) <= common.tol && std::abs(wr.mean) >= std::abs(pred) / 2;
                rep["fixture"] = fixture_name;
                rep["family"] = polys_json(f.polys);
                rep["t"] = scalars_json(f.t);
                rep["W"] = f.W.str();
                rep["r_off"] = f.r.str();
                rep["predicted_value"] = to_json_value(f.predicted);
                rep["predicted"] = complex_json(pred, "predicted");
                rep["measured"] = to_json_value(wr);
                rep["deviation"] = std::abs(wr.mean - pred);
                if (f.even_W != 0) {
                    WeylJob even{f.polys, f.t, f.even_W, f.even_r, common.N, v, WeylMode::integer_part};
                    auto er = weyl_average(even, weyl_options(common));
                    bool ok = std::abs(er.mean) <= common.tol + er.error_budget;
                    rep["zero_panel"] = {{"W", f.even_W.str()}, {"r_off", f.even_r.str()}, {"measured", to_json_value(er)}, {"pass", ok}};
                    pass = pass && ok;
                }
                rep["tol"] = common.tol;
                rep["pass"] = pass;
                write_report(rep, common, out);
                return pass ? 0 : 2;
            }
            auto p = parse_polys(polys_text);
            if (p.empty()) throw InputError("verify: give --fixture or a family");
            require_symbols(detail::family_symbols(p), nu);
            ClassificationReport r = p.size() == 2 ? classify_pair(p[0], p[1])
                                                   : classify_family_special(p, std::all_of(p.begin(), p.end(), [](const RPoly& q) {
                                                         return q.is_rational_plus_real();
                                                     })
                                                                                    ? FamilyClass::rational_plus_real
                                                                                    : FamilyClass::q_independent_irrationals);
            if (r.verdict == Verdict::Undetermined) throw InputError("verify: verdict is Undetermined: " + r.explanation);
            r.verification = verify_report(r, nu, VerifyOptions{common.N, common.tol, weyl_options(common)});
            rep.update(to_json_value(r));
            rep["pass"] = r.verification->pass;
            write_report(rep, common, out);
            return r.verification->pass ? 0 : 2;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace ergokit::cli
