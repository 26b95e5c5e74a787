#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "groves/poly.hpp"

namespace groves {

inline PolyQ gcd(const PolyQ& f, const PolyQ& g);

// Lowest-index variable that occurs in p, or -1 for constants.
inline int main_variable(const PolyQ& p) {
    for (int v = 0; v < kMaxVars; ++v)
        if (p.involves(v)) return v;
    return -1;
}

inline PolyQ leading_coefficient_in(const PolyQ& p, int v) { return p.coefficient_in(v, p.degree(v)); }

// gcd of the coefficients of p viewed as a polynomial in v.
inline PolyQ content_in(const PolyQ& p, int v) {
    if (p.is_zero()) return {};
    PolyQ c;
    for (const auto& [d, coeff] : p.coefficients_in(v)) {
        c = gcd(c, coeff);
        if (c.is_constant()) return PolyQ(1);
    }
    return c;
}

inline PolyQ primitive_part_in(const PolyQ& p, int v) {
    if (p.is_zero()) return p;
    return divide_or_throw(p, content_in(p, v), "primitive part").primitive_integer();
}

// Pseudo-remainder of a by b in v, without the trailing power of lc(b): enough for gcds,
// which only look at primitive parts.
inline PolyQ sparse_prem(PolyQ a, const PolyQ& b, int v) {
    const int db = b.degree(v);
    const PolyQ lb = leading_coefficient_in(b, v);
    while (!a.is_zero() && a.degree(v) >= db) {
        const int da = a.degree(v);
        PolyQ la = leading_coefficient_in(a, v);
        a = a * lb - (la * b).shifted(Monomial::var(v, da - db));
    }
    return a;
}

namespace detail {

inline PolyQ gcd_univariate(const PolyQ& f, const PolyQ& g, int v) {
    PolyQ a = f.primitive_integer(), b = g.primitive_integer();
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    while (true) {
        PolyQ r = sparse_prem(a, b, v);
        if (r.is_zero()) return b.primitive_integer();
        if (!r.involves(v)) return PolyQ(1);
        a = std::move(b);
        b = r.primitive_integer();
    }
}

// p viewed as a polynomial in every variable except y, with coefficients in Q[y];
// keyed by the y-free monomial in decreasing lex order.
inline std::map<Monomial, PolyQ, std::greater<>> split_off(const PolyQ& p, int y) {
    std::map<Monomial, std::vector<PolyQ::Term>, std::greater<>> parts;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m, ypow;
        rest.e[y] = 0;
        ypow.e[y] = m.e[y];
        parts[rest].emplace_back(ypow, c);
    }
    std::map<Monomial, PolyQ, std::greater<>> out;
    for (auto& [m, ts] : parts) out.emplace(m, PolyQ::from_terms(std::move(ts)));
    return out;
}

inline PolyQ content_y(const PolyQ& p, int y) {
    PolyQ c;
    for (const auto& [m, coeff] : split_off(p, y)) {
        c = c.is_zero() ? coeff.primitive_integer() : gcd_univariate(c, coeff, y);
        if (c.is_constant()) return PolyQ(1);
    }
    return c;
}

inline PolyQ substitute_value(const PolyQ& p, int y, const Rational& value) {
    std::vector<PolyQ> image(static_cast<std::size_t>(y) + 1);
    for (int t = 0; t < y; ++t) image[t] = PolyQ::var(t);
    image[y] = PolyQ(value);
    return p.compose(image);
}

}  // namespace detail

// Greatest common divisor over Q, normalized to coprime integer coefficients with a positive
// lex-leading coefficient. Univariate inputs use a primitive remainder sequence; otherwise the
// highest variable y is specialised at integer points (dense interpolation in the style of
// Brown), with unlucky points detected by their larger leading monomial and the result
// certified by exact trial division.
inline PolyQ gcd(const PolyQ& f, const PolyQ& g) {
    if (f.is_zero()) return g.is_zero() ? PolyQ{} : g.primitive_integer();
    if (g.is_zero()) return f.primitive_integer();
    if (f.is_constant() || g.is_constant()) return PolyQ(1);
    std::vector<int> vars;
    for (int t = 0; t < kMaxVars; ++t)
        if (f.involves(t) || g.involves(t)) vars.push_back(t);
    if (vars.size() == 1) {
        if (!f.involves(vars[0]) || !g.involves(vars[0])) return PolyQ(1);
        return detail::gcd_univariate(f, g, vars[0]);
    }
    const int y = vars.back();
    const PolyQ cf = detail::content_y(f, y), cg = detail::content_y(g, y);
    const PolyQ c = (cf.is_constant() || cg.is_constant()) ? PolyQ(1) : detail::gcd_univariate(cf, cg, y);
    const PolyQ F = divide_or_throw(f, cf, "gcd content"), G = divide_or_throw(g, cg, "gcd content");
    if (!F.involves(y) && !G.involves(y)) return (c * gcd(F, G)).primitive_integer();
    const auto sf = detail::split_off(F, y), sg = detail::split_off(G, y);
    const PolyQ& lf = sf.begin()->second;
    const PolyQ& lg = sg.begin()->second;
    const PolyQ gamma = detail::gcd_univariate(lf, lg, y);
    const int bound = std::max(gamma.degree(y), 0) + std::min(F.degree(y), G.degree(y));

    std::vector<Rational> xs;
    std::vector<PolyQ> table;
    std::optional<Monomial> lead;
    for (long point = 0;; ++point) {
        const Rational y0 = point;
        if (lf.evaluate(std::vector<Rational>(y + 1, y0)) == 0 || lg.evaluate(std::vector<Rational>(y + 1, y0)) == 0)
            continue;
        PolyQ h = gcd(detail::substitute_value(F, y, y0), detail::substitute_value(G, y, y0));
        const Monomial hm = h.leading().first;
        if (lead && hm > *lead) continue;  // unlucky point: the image gcd picked up a spurious factor
        if (!lead || hm < *lead) {
            lead = hm;
            xs.clear();
            table.clear();
        }
        h = h * (gamma.evaluate(std::vector<Rational>(y + 1, y0)) / h.leading().second);
        for (std::size_t t = 0; t < xs.size(); ++t) h = (h - table[t]) / Rational(y0 - xs[t]);
        xs.push_back(y0);
        table.push_back(std::move(h));
        if (static_cast<int>(xs.size()) <= bound) continue;
        const PolyQ Y = PolyQ::var(y);
        PolyQ H = table.back();
        for (std::size_t t = table.size() - 1; t-- > 0;) H = H * (Y - PolyQ(xs[t])) + table[t];
        const PolyQ ch = detail::content_y(H, y);
        H = divide_or_throw(H, ch, "gcd interpolation");
        if (divide_exact(F, H) && divide_exact(G, H)) return (c * H).primitive_integer();
        if (static_cast<int>(xs.size()) > 4 * bound + 8)
            throw ConsistencyError("gcd interpolation failed to certify");
    }
}

// f / gcd(f, df/dv) on the primitive part, times the square-free part of the content.
inline PolyQ squarefree_part(const PolyQ& f, int v) {
    if (f.is_zero()) throw InvalidArgument("square-free part of zero");
    if (!f.involves(v)) {
        const int w = main_variable(f);
        return w < 0 ? PolyQ(1) : squarefree_part(f, w);
    }
    const PolyQ c = content_in(f, v);
    const PolyQ p = divide_or_throw(f, c, "square-free part");
    const PolyQ s = divide_or_throw(p, gcd(p, p.derivative(v)), "square-free part");
    const int w = main_variable(c);
    const PolyQ sc = w < 0 ? PolyQ(1) : squarefree_part(c, w);
    return (s * sc).primitive_integer();
}

// Product of the irreducible factors that occur exactly once in the primitive part of f
// with respect to v (content in the remaining variables is dropped).
inline PolyQ multiplicity_one_part(const PolyQ& f, int v) {
    const PolyQ p = primitive_part_in(f, v);
    const PolyQ g = gcd(p, p.derivative(v));
    const PolyQ s = divide_or_throw(p, g, "multiplicity-one part");
    return divide_or_throw(s, gcd(s, g), "multiplicity-one part").primitive_integer();
}

// Removes from f every factor it shares with h, with full multiplicity.
inline PolyQ strip_common_factors(PolyQ f, const PolyQ& h) {
    if (h.is_zero()) return f;
    while (true) {
        const PolyQ g = gcd(f, h);
        if (g.is_constant()) return f.primitive_integer();
        f = divide_or_throw(f, g, "factor stripping");
    }
}

}  // namespace groves
