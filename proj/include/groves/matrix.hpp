#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "groves/poly.hpp"

namespace groves {

using PolyMatrix = std::vector<std::vector<PolyQ>>;

inline PolyMatrix identity_matrix(std::size_t n) {
    PolyMatrix m(n, std::vector<PolyQ>(n));
    for (std::size_t r = 0; r < n; ++r) m[r][r] = PolyQ(1);
    return m;
}

inline void require_square(const PolyMatrix& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw InvalidArgument("matrix is not square");
}

inline PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    PolyMatrix c(n, std::vector<PolyQ>(p));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < p; ++s)
            for (std::size_t t = 0; t < k; ++t) c[r][s] += a[r][t] * b[t][s];
    return c;
}

// Fraction-free Gaussian elimination: every intermediate division is exact.
inline PolyQ det(PolyMatrix m) {
    require_square(m);
    const std::size_t n = m.size();
    if (n == 0) return PolyQ(1);
    bool negate = false;
    PolyQ prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t best = n;
            for (std::size_t r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero() && (best == n || m[r][k].size() < m[best][k].size())) best = r;
            if (best == n) return PolyQ{};
            std::swap(m[k], m[best]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                PolyQ t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = prev.is_constant() ? t / prev.constant_term() : divide_or_throw(t, prev, "Bareiss step");
            }
            m[i][k] = PolyQ{};
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Cofactor expansion along the first row with memoised minors; an independent check on det().
inline PolyQ det_laplace(const PolyMatrix& m) {
    require_square(m);
    const std::size_t n = m.size();
    if (n > 16) throw ResourceGuard("cofactor expansion limited to 16x16");
    std::unordered_map<std::uint32_t, PolyQ> memo;
    // Minor formed by rows n-popcount(cols)..n-1 and the column set cols.
    auto rec = [&](auto&& self, std::uint32_t cols, std::size_t row) -> PolyQ {
        if (row == n) return PolyQ(1);
        if (auto it = memo.find(cols); it != memo.end()) return it->second;
        PolyQ total;
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(cols & (1u << c))) continue;
            if (!m[row][c].is_zero()) {
                PolyQ t = m[row][c] * self(self, cols & ~(1u << c), row + 1);
                total = sign > 0 ? total + t : total - t;
            }
            sign = -sign;
        }
        memo.emplace(cols, total);
        return total;
    };
    return rec(rec, n == 32 ? 0xFFFFFFFFu : ((1u << n) - 1), 0);
}

inline PolyMatrix sylvester_matrix(const PolyQ& f, const PolyQ& g, int v) {
    const int df = f.degree(v), dg = g.degree(v);
    const std::size_t size = static_cast<std::size_t>(df + dg);
    PolyMatrix s(size, std::vector<PolyQ>(size));
    auto cf = f.coefficients_in(v), cg = g.coefficients_in(v);
    for (int r = 0; r < dg; ++r)
        for (auto& [d, c] : cf) s[r][r + df - d] = c;
    for (int r = 0; r < df; ++r)
        for (auto& [d, c] : cg) s[dg + r][r + dg - d] = c;
    return s;
}

// Determinant of a matrix with rational entries by Gaussian elimination over Q.
inline Rational det_numeric(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const Rational f = m[i][k] / m[k][k];
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

namespace detail {

// Sylvester determinant of f, g in v, where every other variable in `params` is eliminated by
// evaluation at integer points and Newton interpolation within the a-priori degree bound
// deg_y Res <= deg_v(g) deg_y(f) + deg_v(f) deg_y(g). Points where a leading coefficient in v
// vanishes are skipped, so each specialisation is the specialised resultant.
inline PolyQ sylvester_det_interp(const PolyQ& f, const PolyQ& g, int v, std::vector<int> params) {
    const int df = f.degree(v), dg = g.degree(v);
    if (params.empty()) {
        std::vector<std::vector<Rational>> m;
        for (const auto& row : sylvester_matrix(f, g, v)) {
            std::vector<Rational> r;
            for (const auto& e : row) r.push_back(e.constant_term());
            m.push_back(std::move(r));
        }
        return PolyQ(det_numeric(std::move(m)));
    }
    const int y = params.back();
    params.pop_back();
    const int bound = dg * std::max(f.degree(y), 0) + df * std::max(g.degree(y), 0);
    std::vector<Rational> xs;
    std::vector<PolyQ> table;  // Newton divided differences, updated in place
    for (long point = 0; static_cast<int>(xs.size()) <= bound; ++point) {
        std::vector<PolyQ> image(static_cast<std::size_t>(y) + 1);
        for (int t = 0; t < y; ++t) image[t] = PolyQ::var(t);
        image[y] = PolyQ(Rational(point));
        const PolyQ fs = f.compose(image), gs = g.compose(image);
        if (fs.coefficient_in(v, df).is_zero() || gs.coefficient_in(v, dg).is_zero()) continue;
        PolyQ value = sylvester_det_interp(fs, gs, v, params);
        const Rational x = point;
        for (std::size_t t = 0; t < xs.size(); ++t) value = (value - table[t]) / Rational(x - xs[t]);
        xs.push_back(x);
        table.push_back(std::move(value));
    }
    // Horner evaluation of the Newton form with y symbolic.
    const PolyQ Y = PolyQ::var(y);
    PolyQ result = table.back();
    for (std::size_t t = table.size() - 1; t-- > 0;) result = result * (Y - PolyQ(xs[t])) + table[t];
    return result;
}

}  // namespace detail

// Res_v(f, g): the Sylvester determinant. A degree-zero argument gives its power.
inline PolyQ resultant(const PolyQ& f, const PolyQ& g, int v) {
    if (f.is_zero() || g.is_zero()) return PolyQ{};
    const int df = f.degree(v), dg = g.degree(v);
    if (df == 0) return f.pow(dg);
    if (dg == 0) return g.pow(df);
    std::vector<int> params;
    for (int t = 0; t < kMaxVars; ++t)
        if (t != v && (f.involves(t) || g.involves(t))) params.push_back(t);
    if (!f.is_polynomial() || !g.is_polynomial()) return det(sylvester_matrix(f, g, v));
    return detail::sylvester_det_interp(f, g, v, params);
}

// Direct fraction-free expansion of the Sylvester matrix; slower, kept as a cross-check.
inline PolyQ resultant_bareiss(const PolyQ& f, const PolyQ& g, int v) {
    if (f.is_zero() || g.is_zero()) return PolyQ{};
    const int df = f.degree(v), dg = g.degree(v);
    if (df == 0) return f.pow(dg);
    if (dg == 0) return g.pow(df);
    return det(sylvester_matrix(f, g, v));
}

inline PolyMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<Rational>& at) {
    PolyMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = PolyQ(e.evaluate(at));
    return out;
}

}  // namespace groves
