#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "exactalg.hpp"
#include "rpoly.hpp"
#include "structure.hpp"
#include "symreal.hpp"

namespace ergokit {

enum class WeylMode { integer_part, fractional_orbit };

struct WeylJob {
    std::vector<RPoly> polynomials;
    std::vector<SymbolicReal> weights;
    Integer W = 1;
    Integer r_off = 0;
    std::uint64_t N = 1000000;
    NumericAssignment assignment;
    WeylMode mode = WeylMode::integer_part;
};

struct WeylOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    std::uint64_t block_size = std::uint64_t(1) << 20;
    bool record_blocks = false;
};

struct BlockRow {
    std::uint64_t block_index = 0;
    std::uint64_t N_cum = 0;
    double mean_re = 0, mean_im = 0;
};

struct WeylResult {
    std::complex<double> mean;
    double error_budget = 0;
    std::uint64_t N_used = 0;
    std::vector<BlockRow> blocks;
};

namespace detail {

using u128 = unsigned __int128;

inline u128 to_fixed(const WidePrec& x) {
    WidePrec f = x - mp::floor(x);
    WidePrec hi = mp::floor(mp::ldexp(f, 64));
    WidePrec lo = mp::floor(mp::ldexp(mp::ldexp(f, 64) - hi, 64));
    return (u128(static_cast<unsigned long long>(hi)) << 64) | u128(static_cast<unsigned long long>(lo));
}

inline long double fixed_to_ld(u128 v) {
    return std::ldexp(static_cast<long double>(static_cast<std::uint64_t>(v >> 64)), -64) +
           std::ldexp(static_cast<long double>(static_cast<std::uint64_t>(v)), -128);
}

inline WidePrec horner_wide(const std::vector<WidePrec>& c, const WidePrec& x) {
    WidePrec v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

inline std::vector<WidePrec> wide_coefficients(const RPoly& p, const NumericAssignment& nu) {
    std::vector<WidePrec> out;
    for (const auto& c : p.coefficients()) out.push_back(evaluate_as<WidePrec>(c, nu));
    return out;
}

inline Rational eval_rational(const std::vector<Rational>& c, const Rational& x) {
    Rational v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

inline Integer binom(unsigned k, unsigned j) {
    Integer b = 1;
    for (unsigned i = 0; i < j; ++i) b = b * (k - i) / (i + 1);
    return b;
}

// sum_k C(R,k) 2^k 2^-127: drift bound of a fixed-point difference table after R steps
inline double drift_bound(std::uint64_t R, unsigned d) {
    double s = 0, c = 1;
    for (unsigned k = 0; k <= d; ++k) {
        s += c * std::ldexp(1.0, static_cast<int>(k));
        c = c * static_cast<double>(R - k) / static_cast<double>(k + 1);
    }
    return std::ldexp(s, -127);
}

// {Q(m)} mod 1 for a real polynomial by wrapping 128-bit fixed-point forward differences
struct FixedTrack {
    std::vector<WidePrec> coeffs;  // of p in x, x = W m + r
    std::vector<u128> diff;
    unsigned degree = 0;

    void anchor(std::uint64_t m0, const WidePrec& W, const WidePrec& r) {
        diff.assign(degree + 1, 0);
        std::vector<u128> v(degree + 1);
        for (unsigned j = 0; j <= degree; ++j) v[j] = to_fixed(horner_wide(coeffs, W * WidePrec(m0 + j) + r));
        for (unsigned k = 0; k <= degree; ++k) {
            u128 acc = 0;
            for (unsigned j = 0; j <= k; ++j) {
                u128 b = static_cast<u128>(static_cast<unsigned long long>(binom(k, j)));
                if ((k - j) % 2)
                    acc -= b * v[j];
                else
                    acc += b * v[j];
            }
            diff[k] = acc;
        }
    }
    void step() {
        for (unsigned k = 0; k < degree; ++k) diff[k] += diff[k + 1];
    }
    long double value() const { return fixed_to_ld(diff[0]); }
};

// L*q(m) mod modulus for a rational polynomial q, exact
struct ExactTrack {
    std::vector<Rational> coeffs;
    Integer L = 1;
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> diff;
    unsigned degree = 0;

    void anchor(std::uint64_t m0, const Integer& W, const Integer& r) {
        std::vector<Integer> v(degree + 1);
        for (unsigned j = 0; j <= degree; ++j) {
            Rational x = Rational(W * Integer(m0 + j) + r);
            v[j] = num(eval_rational(coeffs, x) * Rational(L));
        }
        diff.assign(degree + 1, 0);
        const Integer M(modulus);
        for (unsigned k = 0; k <= degree; ++k) {
            Integer acc = 0;
            for (unsigned j = 0; j <= k; ++j) acc += ((k - j) % 2 ? -1 : 1) * binom(k, j) * v[j];
            Integer red = ((acc % M) + M) % M;
            diff[k] = static_cast<std::uint64_t>(red);
        }
    }
    void step() {
        for (unsigned k = 0; k < degree; ++k) {
            u128 s = u128(diff[k]) + diff[k + 1];
            diff[k] = static_cast<std::uint64_t>(s % modulus);
        }
    }
    std::uint64_t value() const { return diff[0]; }
};

struct PolyTrack {
    bool rational = false;
    bool active = true;
    long double t = 0;
    WidePrec t_wide = 0;
    bool t_rational = false;
    Integer t_num = 0, t_den = 1;
    bool need_b = false;
    ExactTrack exact;
    FixedTrack a, b;  // {q} and {t q}
};

}  // namespace detail

// Per-term phase of a job, stepped by finite differences with periodic re-anchoring.
class PhaseEngine {
public:
    static constexpr long double hazard = 1e-12L;

    explicit PhaseEngine(const WeylJob& job, std::uint64_t reanchor = std::uint64_t(1) << 20) : job_(job) {
        if (job.W <= 0) throw std::invalid_argument("weyl: W must be positive");
        if (job.mode == WeylMode::integer_part && job.weights.size() != job.polynomials.size())
            throw std::invalid_argument("weyl: weights and polynomials differ in length");
        for (const auto& p : job.polynomials)
            for (const auto& s : p.symbols())
                if (!job.assignment.has(s)) throw std::invalid_argument("weyl: no numeric value for symbol '" + s + "'");
        for (const auto& t : job.weights)
            for (const auto& s : t.symbols())
                if (!job.assignment.has(s)) throw std::invalid_argument("weyl: no numeric value for symbol '" + s + "'");
        W_ = WidePrec(job.W.str());
        r_ = WidePrec(job.r_off.str());
        unsigned maxdeg = 0;
        for (std::size_t i = 0; i < job.polynomials.size(); ++i) {
            const RPoly& p = job.polynomials[i];
            SymbolicReal t = i < job.weights.size() ? job.weights[i] : SymbolicReal(1);
            detail::PolyTrack tr;
            tr.t = evaluate_ld(t, job.assignment);
            tr.t_wide = evaluate_as<WidePrec>(t, job.assignment);
            if (auto q = t.as_rational()) {
                tr.t_rational = true;
                tr.t_num = num(*q);
                tr.t_den = den(*q);
            }
            bool integer_weight = is_integer(t);
            tr.active = job.mode == WeylMode::integer_part ? !integer_weight : !t.is_zero();
            tr.rational = p.is_rational();
            const unsigned d = static_cast<unsigned>(std::max(0, p.degree()));
            maxdeg = std::max(maxdeg, d);
            if (tr.rational) {
                tr.exact.coeffs = p.rational_coefficients();
                tr.exact.degree = d;
                Integer L = 1;
                for (const auto& c : tr.exact.coeffs) L = lcm_int(L, den(c));
                tr.exact.L = L;
                Integer M = L;
                if (job.mode == WeylMode::integer_part && tr.t_rational) M *= tr.t_den;
                if (M > Integer(std::uint64_t(1) << 62)) throw std::domain_error("weyl: rational modulus too large");
                tr.exact.modulus = static_cast<std::uint64_t>(M);
                tr.need_b = job.mode == WeylMode::integer_part && !tr.t_rational && tr.active;
            } else {
                tr.need_b = job.mode == WeylMode::integer_part && tr.active;
            }
            tr.a.coeffs = detail::wide_coefficients(p, job.assignment);
            tr.a.degree = d;
            if (tr.need_b) {
                tr.b.coeffs = detail::wide_coefficients(p.scaled(t), job.assignment);
                tr.b.degree = d;
            }
            tracks_.push_back(std::move(tr));
        }
        // shrink the re-anchor interval until the fixed-point drift stays below 2^-70
        reanchor_ = std::max<std::uint64_t>(1, reanchor);
        while (reanchor_ > 1 && detail::drift_bound(reanchor_, maxdeg) > std::ldexp(1.0, -70)) reanchor_ /= 2;
        drift_ = detail::drift_bound(reanchor_, maxdeg);
    }

    std::uint64_t reanchor_interval() const { return reanchor_; }

    // per-term phase error bound (mod 1)
    double phase_error_bound() const {
        double e = 0;
        for (const auto& tr : tracks_) {
            if (!tr.active) continue;
            double tabs = std::fabs(static_cast<double>(tr.t));
            e += (tabs + 1) * (drift_ + std::ldexp(1.0, -62));
        }
        return e;
    }

    void seek(std::uint64_t m) {
        m_ = m;
        since_anchor_ = 0;
        for (auto& tr : tracks_) {
            if (tr.rational)
                tr.exact.anchor(m, job_.W, job_.r_off);
            else
                tr.a.anchor(m, W_, r_);
            if (tr.need_b) tr.b.anchor(m, W_, r_);
        }
    }
    void step() {
        ++m_;
        if (++since_anchor_ >= reanchor_) {
            seek(m_);
            return;
        }
        for (auto& tr : tracks_) {
            if (tr.rational)
                tr.exact.step();
            else
                tr.a.step();
            if (tr.need_b) tr.b.step();
        }
    }
    std::uint64_t index() const { return m_; }

    // {p_i(W m + r)}
    long double frac(std::size_t i) const {
        const auto& tr = tracks_[i];
        if (tr.rational) {
            std::uint64_t L = static_cast<std::uint64_t>(tr.exact.L);
            return static_cast<long double>(tr.exact.value() % L) / static_cast<long double>(L);
        }
        long double a = tr.a.value();
        if (a < hazard || a > 1 - hazard) {
            WidePrec v = detail::horner_wide(tr.a.coeffs, x_wide());
            return static_cast<long double>(v - mp::floor(v));
        }
        return a;
    }

    // phase mod 1, in [0,1)
    long double phase() const {
        long double ph = 0;
        for (std::size_t i = 0; i < tracks_.size(); ++i) {
            const auto& tr = tracks_[i];
            if (!tr.active) continue;
            if (job_.mode == WeylMode::fractional_orbit) {
                ph += tr.t * frac(i);
            } else if (tr.rational && tr.t_rational) {
                std::uint64_t L = static_cast<std::uint64_t>(tr.exact.L);
                Integer fl = Integer(tr.exact.value() / L);
                Integer k = ((tr.t_num * fl) % tr.t_den + tr.t_den) % tr.t_den;
                ph += static_cast<long double>(k) / static_cast<long double>(tr.t_den);
            } else if (tr.rational) {
                ph += tr.b.value() - tr.t * frac(i);
            } else {
                long double a = tr.a.value();
                if (a < hazard || a > 1 - hazard) {
                    WidePrec v = detail::horner_wide(tr.a.coeffs, x_wide());
                    WidePrec tv = tr.t_wide * mp::floor(v);
                    ph += static_cast<long double>(-(tv - mp::floor(tv)));
                } else {
                    ph += tr.b.value() - tr.t * a;
                }
            }
            ph -= std::floor(ph);
        }
        ph -= std::floor(ph);
        return ph;
    }

    // same phase straight from the high-precision evaluator
    long double phase_reference() const {
        WidePrec ph = 0;
        const Rational x = Rational(job_.W * Integer(m_) + job_.r_off);
        for (std::size_t i = 0; i < tracks_.size(); ++i) {
            const auto& tr = tracks_[i];
            if (!tr.active) continue;
            if (tr.rational) {
                Rational v = detail::eval_rational(tr.exact.coeffs, x);
                if (job_.mode == WeylMode::fractional_orbit) {
                    Rational f = frac_rat(v);
                    ph += tr.t_wide * WidePrec(num(f).str()) / WidePrec(den(f).str());
                } else if (tr.t_rational) {
                    Integer k = ((tr.t_num * floor_rat(v)) % tr.t_den + tr.t_den) % tr.t_den;
                    ph += WidePrec(k.str()) / WidePrec(tr.t_den.str());
                } else {
                    ph += tr.t_wide * WidePrec(floor_rat(v).str());
                }
            } else {
                WidePrec v = detail::horner_wide(tr.a.coeffs, x_wide());
                ph += job_.mode == WeylMode::fractional_orbit ? tr.t_wide * (v - mp::floor(v)) : tr.t_wide * mp::floor(v);
            }
            ph -= mp::floor(ph);
        }
        return static_cast<long double>(ph - mp::floor(ph));
    }

private:
    WidePrec x_wide() const { return W_ * WidePrec(m_) + r_; }

    const WeylJob& job_;
    std::vector<detail::PolyTrack> tracks_;
    WidePrec W_, r_;
    std::uint64_t m_ = 0, since_anchor_ = 0, reanchor_ = 1;
    double drift_ = 0;
};

namespace detail {

struct Neumaier {
    double sum = 0, comp = 0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct BlockSum {
    Neumaier re, im;
    std::uint64_t count = 0;
};

}  // namespace detail

// (1/N) sum_{n=1}^N e(sum_i t_i [p_i(W n + r)]); blocks are reduced in index order
inline WeylResult weyl_average(const WeylJob& job, const WeylOptions& opt = {}) {
    if (job.N < 1) throw std::invalid_argument("weyl_average: N must be at least 1");
    if (opt.block_size < 1) throw std::invalid_argument("weyl_average: block size must be positive");
    PhaseEngine probe(job, opt.block_size);
    const std::uint64_t B = opt.block_size;
    const std::uint64_t nblocks = (job.N + B - 1) / B;
    std::vector<detail::BlockSum> sums(nblocks);
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, nblocks));

    auto work = [&](unsigned tid) {
        PhaseEngine eng(job, opt.block_size);
        for (std::uint64_t b = tid; b < nblocks; b += threads) {
            const std::uint64_t first = 1 + b * B;
            const std::uint64_t last = std::min(job.N, (b + 1) * B);
            detail::BlockSum s;
            eng.seek(first);
            for (std::uint64_t m = first;; ++m) {
                double ph = static_cast<double>(eng.phase());
                double ang = 6.283185307179586476925286766559 * ph;
                s.re.add(std::cos(ang));
                s.im.add(std::sin(ang));
                ++s.count;
                if (m == last) break;
                eng.step();
            }
            sums[b] = s;
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k);
        for (auto& th : pool) th.join();
    }

    WeylResult res;
    detail::Neumaier re, im;
    std::uint64_t cum = 0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        re.add(sums[b].re.value());
        im.add(sums[b].im.value());
        cum += sums[b].count;
        if (opt.record_blocks)
            res.blocks.push_back({b, cum, re.value() / static_cast<double>(cum), im.value() / static_cast<double>(cum)});
    }
    res.N_used = cum;
    res.mean = {re.value() / static_cast<double>(cum), im.value() / static_cast<double>(cum)};
    res.error_budget = 6.283185307179586 * probe.phase_error_bound() + std::ldexp(1.0, -48);
    return res;
}

// max circular deviation between the stepped phase and the high-precision phase over n = 1..N_small
inline long double precision_audit(const WeylJob& job, std::uint64_t N_small, std::uint64_t block_size = std::uint64_t(1) << 20) {
    if (N_small < 1) throw std::invalid_argument("precision_audit: N_small must be at least 1");
    PhaseEngine eng(job, block_size);
    eng.seek(1);
    long double worst = 0;
    for (std::uint64_t m = 1; m <= N_small; ++m) {
        if (m > 1) eng.step();
        long double d = std::fabs(eng.phase() - eng.phase_reference());
        d = std::min(d, 1 - d);
        worst = std::max(worst, d);
    }
    return worst;
}

// ---------------------------------------------------------------- integral oracle

struct OracleShape {
    bool three_d = false;
    Integer a = 1, b = 1, r = 1, w = 0;

    static OracleShape two_d(Integer a, Integer b) { return {false, std::move(a), std::move(b), 1, 0}; }
    static OracleShape three(Integer a, Integer b, Integer r, Integer w) {
        return {true, std::move(a), std::move(b), std::move(r), std::move(w)};
    }
};

// integral over t in [0,1] of e(alpha{bt} + beta{-at}) (2d) or e(alpha{-bt} + beta{at} + w{rt}) (3d)
inline std::complex<long double> piecewise_integral_oracle(const OracleShape& sh, long double alpha, long double beta) {
    if (sh.a == 0 || sh.b == 0 || (sh.three_d && sh.r == 0)) throw std::invalid_argument("oracle: zero coefficient");
    if (gcd_int(sh.a, sh.b) != 1) throw std::domain_error("oracle: gcd(a,b) != 1");
    struct Lin {
        long double weight;
        long long slope;
    };
    std::vector<Lin> parts;
    const long long a = static_cast<long long>(sh.a), b = static_cast<long long>(sh.b);
    if (!sh.three_d) {
        parts = {{alpha, b}, {beta, -a}};
    } else {
        parts = {{alpha, -b}, {beta, a}, {static_cast<long double>(static_cast<long long>(sh.w)), static_cast<long long>(sh.r)}};
    }
    std::vector<Rational> cuts = {Rational(0), Rational(1)};
    for (const auto& p : parts) {
        long long s = std::llabs(p.slope);
        for (long long k = 1; k < s; ++k) cuts.emplace_back(k, s);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const long double two_pi = 6.283185307179586476925286766559005768L;
    std::complex<long double> total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational mid_q = (cuts[i] + cuts[i + 1]) / 2;
        const long double lo = static_cast<long double>(cuts[i]), hi = static_cast<long double>(cuts[i + 1]);
        const long double mid = (lo + hi) / 2, delta = hi - lo;
        // on the piece {s t} = s t - floor(s mid)
        long double phi_mid = 0, kappa = 0;
        for (const auto& p : parts) {
            Integer fl = floor_rat(mid_q * p.slope);
            long double frac_mid = static_cast<long double>(p.slope) * mid - static_cast<long double>(fl);
            phi_mid += p.weight * frac_mid;
            kappa += p.weight * static_cast<long double>(p.slope);
        }
        long double x = 3.141592653589793238462643383279502884L * kappa * delta;
        long double sinc = std::fabs(x) < 1e-9L ? 1 - x * x / 6 : std::sin(x) / x;
        total += delta * sinc * std::polar(1.0L, two_pi * (phi_mid - std::floor(phi_mid)));
    }
    return total;
}

// ---------------------------------------------------------------- discrepancy

namespace detail {

// V with V M = I for an integer matrix M (columns = basis of a saturated lattice)
inline std::vector<IntVector> left_inverse(const std::vector<IntVector>& Mrows, std::size_t d) {
    auto e = hermite_with_transform(Mrows, d);
    if (e.rank != d) throw std::logic_error("left_inverse: rank deficient");
    // upper triangular H = first d echelon rows; solve H V = T_top by back substitution
    const std::size_t l = Mrows.size();
    std::vector<IntVector> V(d, IntVector(l));
    for (std::size_t i = d; i-- > 0;) {
        for (std::size_t j = 0; j < l; ++j) {
            Integer acc = e.transform[i][j];
            for (std::size_t k = i + 1; k < d; ++k) acc -= e.echelon[i][k] * V[k][j];
            if (acc % e.echelon[i][i] != 0) throw std::domain_error("left_inverse: lattice not saturated");
            V[i][j] = acc / e.echelon[i][i];
        }
    }
    return V;
}

}  // namespace detail

// star discrepancy of the orbit ({p_i(W n + r)}) in a parametrization of Y (exact for dim 1, grid estimate for dim 2)
inline double orbit_discrepancy(const std::vector<RPoly>& p, const Subtorus& Y, const Integer& W, const Integer& r_off,
                                std::uint64_t N, const NumericAssignment& nu, unsigned grid = 256) {
    const std::size_t l = p.size();
    if (Y.ambient_dim != l) throw std::invalid_argument("orbit_discrepancy: dimension mismatch");
    const std::size_t d = Y.dimension();
    if (d == 0 || d > 2) throw std::domain_error("orbit_discrepancy: dim Y must be 1 or 2");
    if (N < 1) throw std::invalid_argument("orbit_discrepancy: N must be positive");
    auto M_cols = integer_kernel(Y.relations.basis(), l);
    std::vector<IntVector> M_rows(l, IntVector(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < l; ++i) M_rows[i][j] = M_cols[j][i];
    auto V = detail::left_inverse(M_rows, d);

    WeylJob job;
    job.polynomials = p;
    job.weights.assign(l, SymbolicReal(1));
    job.W = W;
    job.r_off = r_off;
    job.N = N;
    job.assignment = nu;
    job.mode = WeylMode::fractional_orbit;
    PhaseEngine eng(job);
    eng.seek(1);
    std::vector<std::vector<long double>> pts(d, std::vector<long double>(N));
    for (std::uint64_t n = 0; n < N; ++n) {
        if (n) eng.step();
        for (std::size_t j = 0; j < d; ++j) {
            long double s = 0;
            for (std::size_t i = 0; i < l; ++i)
                if (V[j][i] != 0) s += static_cast<long double>(V[j][i]) * eng.frac(i);
            s -= std::floor(s);
            if (s >= 1) s = 0;
            pts[j][n] = s;
        }
    }
    const double Nd = static_cast<double>(N);
    if (d == 1) {
        auto& s = pts[0];
        std::sort(s.begin(), s.end());
        double D = 0;
        for (std::uint64_t i = 0; i < N; ++i) {
            double x = static_cast<double>(s[i]);
            D = std::max(D, std::max(static_cast<double>(i + 1) / Nd - x, x - static_cast<double>(i) / Nd));
        }
        return D;
    }
    std::vector<std::uint64_t> cnt((grid + 1) * (grid + 1), 0);
    for (std::uint64_t n = 0; n < N; ++n) {
        auto gx = std::min<std::size_t>(grid - 1, static_cast<std::size_t>(pts[0][n] * grid));
        auto gy = std::min<std::size_t>(grid - 1, static_cast<std::size_t>(pts[1][n] * grid));
        ++cnt[(gx + 1) * (grid + 1) + gy + 1];
    }
    for (std::size_t i = 1; i <= grid; ++i)
        for (std::size_t j = 1; j <= grid; ++j)
            cnt[i * (grid + 1) + j] += cnt[(i - 1) * (grid + 1) + j] + cnt[i * (grid + 1) + j - 1] - cnt[(i - 1) * (grid + 1) + j - 1];
    double D = 0;
    for (std::size_t i = 1; i <= grid; ++i)
        for (std::size_t j = 1; j <= grid; ++j) {
            double u = static_cast<double>(i) / grid, v = static_cast<double>(j) / grid;
            D = std::max(D, std::fabs(static_cast<double>(cnt[i * (grid + 1) + j]) / Nd - u * v));
        }
    return D;
}

}  // namespace ergokit
