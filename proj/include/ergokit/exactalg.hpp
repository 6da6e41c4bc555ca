#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ergokit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }
inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(Integer a, Integer b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

// floor division for arbitrary signs
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

inline Integer floor_rat(const Rational& q) { return floor_div(num(q), den(q)); }

inline Rational frac_rat(const Rational& q) { return q - Rational(floor_rat(q)); }

// returns g = gcd(a,b) >= 0 and x, y with a x + b y = g
struct ExtGcd {
    Integer g, x, y;
};

inline ExtGcd ext_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("RatMatrix: ragged initializer");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    RatVector row(std::size_t i) const {
        return RatVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void append_row(const RatVector& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("RatMatrix: row length mismatch");
        entries_.insert(entries_.end(), r.begin(), r.end());
        ++rows_;
    }

    RatVector apply(const RatVector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("RatMatrix: vector length mismatch");
        RatVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> entries_;
};

struct Rref {
    RatMatrix reduced;
    std::vector<std::size_t> pivots;
};

inline Rref rref(RatMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

// one basis vector per free column of the reduced echelon form
inline std::vector<RatVector> rational_kernel(const RatMatrix& m) {
    const std::size_t n = m.cols();
    Rref e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(n);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

// clears denominators and divides by the content; zero stays zero
inline IntVector primitive_integer(const RatVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm_int(l, den(x));
    IntVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = num(v[i]) * (l / den(v[i]));
        g = gcd_int(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

namespace detail {

inline void combine_rows(IntVector& a, IntVector& b, std::size_t col) {
    // unimodular 2x2 transform making b[col] == 0 and a[col] == gcd
    ExtGcd e = ext_gcd(a[col], b[col]);
    Integer pa = a[col] / e.g, pb = b[col] / e.g;
    for (std::size_t j = 0; j < a.size(); ++j) {
        Integer na = e.x * a[j] + e.y * b[j];
        Integer nb = pa * b[j] - pb * a[j];
        a[j] = std::move(na);
        b[j] = std::move(nb);
    }
}

}  // namespace detail

struct EchelonWithTransform {
    std::vector<IntVector> echelon;    // same row count as input
    std::vector<IntVector> transform;  // unimodular, transform * input = echelon
    std::size_t rank = 0;
};

// Row Hermite form with the accumulated unimodular transform.
inline EchelonWithTransform hermite_with_transform(const std::vector<IntVector>& rows, std::size_t m) {
    const std::size_t k = rows.size();
    std::vector<IntVector> a(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (rows[i].size() != m) throw std::invalid_argument("hermite: row length mismatch");
        a[i] = rows[i];
        a[i].resize(m + k);
        a[i][m + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < k; ++c) {
        for (std::size_t i = r + 1; i < k; ++i)
            if (a[i][c] != 0) detail::combine_rows(a[r], a[i], c);
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (auto& x : a[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(a[i][c], a[r][c]);
            if (q != 0)
                for (std::size_t j = 0; j < m + k; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    EchelonWithTransform out;
    out.rank = r;
    for (std::size_t i = 0; i < k; ++i) {
        out.echelon.emplace_back(a[i].begin(), a[i].begin() + static_cast<std::ptrdiff_t>(m));
        out.transform.emplace_back(a[i].begin() + static_cast<std::ptrdiff_t>(m), a[i].end());
    }
    return out;
}

// Canonical row Hermite normal form; zero rows dropped.
inline std::vector<IntVector> hermite_normal_form(const std::vector<IntVector>& rows, std::size_t m) {
    auto e = hermite_with_transform(rows, m);
    e.echelon.resize(e.rank);
    return e.echelon;
}

// Basis of {x in Z^m : C x = 0}.
inline std::vector<IntVector> integer_kernel(const std::vector<IntVector>& c_rows, std::size_t m) {
    std::vector<IntVector> ct(m, IntVector(c_rows.size()));
    for (std::size_t i = 0; i < c_rows.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) ct[j][i] = c_rows[i][j];
    auto e = hermite_with_transform(ct, c_rows.size());
    std::vector<IntVector> out;
    for (std::size_t i = e.rank; i < m; ++i) out.push_back(e.transform[i]);
    return out;
}

class IntLattice {
public:
    IntLattice() = default;
    IntLattice(std::size_t ambient_dim, std::vector<IntVector> basis)
        : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<IntVector>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }

    // basis is in echelon form, so membership is a triangular solve
    bool contains(const IntVector& k) const {
        if (k.size() != ambient_dim_) return false;
        IntVector res = k;
        for (const auto& b : basis_) {
            std::size_t p = 0;
            while (p < ambient_dim_ && b[p] == 0) ++p;
            if (p == ambient_dim_) continue;
            if (res[p] % b[p] != 0) return false;
            Integer lam = res[p] / b[p];
            for (std::size_t j = 0; j < ambient_dim_; ++j) res[j] -= lam * b[j];
        }
        return std::all_of(res.begin(), res.end(), [](const Integer& x) { return x == 0; });
    }

    friend bool operator==(const IntLattice& a, const IntLattice& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_dim_ = 0;
    std::vector<IntVector> basis_;
};

inline IntLattice saturate(const std::vector<RatVector>& vectors, std::size_t ambient_dim) {
    RatMatrix span(0, ambient_dim);
    for (const auto& v : vectors) {
        if (v.size() != ambient_dim) throw std::invalid_argument("saturate: vector length mismatch");
        span.append_row(v);
    }
    const std::size_t k = rank(span);
    if (k == 0) return IntLattice(ambient_dim, {});
    if (k == ambient_dim) {
        std::vector<IntVector> id(ambient_dim, IntVector(ambient_dim));
        for (std::size_t i = 0; i < ambient_dim; ++i) id[i][i] = 1;
        return IntLattice(ambient_dim, std::move(id));
    }
    // span ∩ Z^m is the integer kernel of the orthogonal complement
    std::vector<IntVector> complement;
    for (const auto& v : rational_kernel(span)) complement.push_back(primitive_integer(v));
    auto basis = integer_kernel(complement, ambient_dim);
    return IntLattice(ambient_dim, hermite_normal_form(basis, ambient_dim));
}

struct ModInversePair {
    Integer a_star = 0;
    Integer b_star = 0;
    bool a_star_degenerate = false;  // |b| == 1
    bool b_star_degenerate = false;  // |a| == 1
};

inline Integer mod_inverse(const Integer& x, const Integer& modulus) {
    Integer m = abs_int(modulus);
    ExtGcd e = ext_gcd(((x % m) + m) % m, m);
    if (e.g != 1) throw std::domain_error("mod_inverse: not invertible");
    return ((e.x % m) + m) % m;
}

inline ModInversePair mod_inverse_pair(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) throw std::invalid_argument("mod_inverse_pair: zero argument");
    if (gcd_int(a, b) != 1) throw std::domain_error("mod_inverse_pair: gcd(a,b) != 1");
    ModInversePair out;
    if (abs_int(b) == 1)
        out.a_star_degenerate = true;
    else
        out.a_star = mod_inverse(a, b);
    if (abs_int(a) == 1)
        out.b_star_degenerate = true;
    else
        out.b_star = mod_inverse(b, a);
    return out;
}

inline std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace ergokit
