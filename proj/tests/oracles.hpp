#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "groves/groves.hpp"

// Brute-force references that share as little code as possible with the library. They work
// from definitions (set membership, lattice searches, Laurent expansions) and are meant for
// small orders only.
namespace oracle {

using groves::Axis;
using groves::Point3;
using groves::Rational;

// I from its definition: p in L and p + (1,1,1) not in L, with L the octant minus removed.
inline bool in_I(const std::set<Point3>& removed, const Point3& p) {
    auto in_L = [&](const Point3& q) { return q.i <= 0 && q.j <= 0 && q.k <= 0 && !removed.count(q); };
    return in_L(p) && !in_L(p + Point3{1, 1, 1});
}

// Removed set of I(n) from its definition: octant points with i + j + k >= 2 - n.
inline std::set<Point3> standard_removed(int n) {
    std::set<Point3> out;
    for (int i = 0; i >= 2 - n; --i)
        for (int j = 0; j >= 2 - n; --j)
            for (int k = 0; k >= 2 - n; --k)
                if (i + j + k >= 2 - n) out.insert({i, j, k});
    return out;
}

// The four vertices of r_q(anchor), written out per axis.
inline std::vector<Point3> rhombus_vertices(Axis q, const Point3& a) {
    switch (q) {
        case Axis::a: return {a, a - Point3{0, 1, 0}, a - Point3{0, 0, 1}, a - Point3{0, 1, 1}};
        case Axis::b: return {a, a - Point3{1, 0, 0}, a - Point3{0, 0, 1}, a - Point3{1, 0, 1}};
        default: return {a, a - Point3{1, 0, 0}, a - Point3{0, 1, 0}, a - Point3{1, 1, 0}};
    }
}

// Rhombi of I found by scanning a box of anchors for vertex membership.
inline std::set<groves::Rhombus> rhombi_in_box(const std::set<Point3>& removed, int lo) {
    std::set<groves::Rhombus> out;
    for (Axis q : groves::kAxes)
        for (int i = 0; i >= lo; --i)
            for (int j = 0; j >= lo; --j)
                for (int k = 0; k >= lo; --k) {
                    bool all = true;
                    for (const auto& v : rhombus_vertices(q, {i, j, k})) all = all && in_I(removed, v);
                    if (all) out.insert({q, {i, j, k}});
                }
    return out;
}

// Class representative by searching integer combinations of the three generators.
inline std::optional<Point3> class_rep_by_search(const Point3& mu, int N, int m, int n, int range = 12) {
    for (int a = -range; a <= range; ++a)
        for (int b = -range; b <= range; ++b)
            for (int c = -range; c <= range; ++c) {
                const Point3 p = mu + Point3{-N * a - m * b, m * b + n * c, -n * c};
                if (p.i > -N && p.i <= 0 && p.j > -m && p.j <= 0 && p.k > -n && p.k <= 0) return p;
            }
    return std::nullopt;
}

// Degree minus two at every vertex a grove touches, from the chosen diagonals of every rhombus
// of I in a box around the removed cubes. Vertices of degree two are omitted.
using Signature = std::map<Point3, int>;

inline Signature degree_signature(const std::set<Point3>& removed, const std::vector<groves::Rhombus>& long_rhombi,
                                  int lo) {
    std::map<Point3, int> degree;
    const std::set<groves::Rhombus> longs(long_rhombi.begin(), long_rhombi.end());
    for (const auto& r : rhombi_in_box(removed, lo)) {
        const auto v = rhombus_vertices(r.axis, r.anchor);
        if (longs.count(r)) {
            ++degree[v[1]];
            ++degree[v[2]];
        } else {
            ++degree[v[0]];
            ++degree[v[3]];
        }
    }
    Signature out;
    // Only vertices whose whole neighbourhood lies inside the box have a trustworthy degree.
    for (const auto& [p, d] : degree)
        if (p.i > lo + 1 && p.j > lo + 1 && p.k > lo + 1 && d != 2) out[p] = d - 2;
    return out;
}

// A Laurent polynomial in the boundary values g_p (p in I), keyed by exponent maps.
using Laurent = std::map<Signature, Rational>;

inline Laurent variable(const Point3& p) { return {{Signature{{p, 1}}, Rational(1)}}; }

inline Laurent multiply(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Signature m = ma;
            for (const auto& [p, e] : mb)
                if ((m[p] += e) == 0) m.erase(p);
            out[m] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// g_{0,0,0} of the weighted recurrence on I(n) with every boundary value left symbolic. For
// n <= 4 every divisor g_{c-(1,1,1)} is a boundary variable, so the expansion stays exact. Its
// coefficients are grove probabilities and its exponents are grove degree signatures.
inline Laurent symbolic_g000(const groves::ConductanceField& field, int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("symbolic expansion covers orders 1..4");
    const auto removed = standard_removed(n);
    std::map<Point3, Laurent> g;
    auto value = [&](const Point3& p) -> Laurent {
        if (auto it = g.find(p); it != g.end()) return it->second;
        if (!in_I(removed, p)) throw std::logic_error("recurrence read a point outside I and U");
        return variable(p);
    };
    std::vector<Point3> cubes(removed.begin(), removed.end());
    std::stable_sort(cubes.begin(), cubes.end(), [](const Point3& a, const Point3& b) { return a.level() < b.level(); });
    const Point3 ei{1, 0, 0}, ej{0, 1, 0}, ek{0, 0, 1};
    for (const auto& c : cubes) {
        const auto w = field.weights(c);
        Laurent sum;
        auto add = [&](const Rational& weight, const Point3& p, const Point3& q) {
            for (const auto& [m, coef] : multiply(value(p), value(q))) sum[m] += weight * coef;
        };
        add(w.U, c - ei, c - ej - ek);
        add(w.V, c - ej, c - ei - ek);
        add(w.W, c - ek, c - ei - ej);
        const Point3 bottom = c - Point3{1, 1, 1};
        if (g.count(bottom) || !in_I(removed, bottom)) throw std::logic_error("divisor is not a boundary variable");
        g[c] = multiply(sum, {{Signature{{bottom, -1}}, Rational(1)}});
    }
    if (n == 1) return variable({0, 0, 0});
    return g.at({0, 0, 0});
}

// The same law read off the enumerator: degree signature of each grove with its probability.
inline Laurent enumerated_expansion(const groves::WeightedGroveSet& set, int n) {
    const auto removed = standard_removed(n);
    Laurent out;
    for (const auto& [longs, p] : set.law) out[degree_signature(removed, longs, -n - 4)] += p;
    return out;
}

// 3^floor(n^2 / 4) groves on I(n).
inline std::size_t grove_count(int n) {
    std::size_t c = 1;
    for (int t = 0; t < n * n / 4; ++t) c *= 3;
    return c;
}

}  // namespace oracle
