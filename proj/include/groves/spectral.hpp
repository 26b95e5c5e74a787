#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "groves/conductance.hpp"
#include "groves/matrix.hpp"

namespace groves {

// Laurent variables of the Laplacian: monodromy z and w.
inline constexpr int kVarZ = 0;
inline constexpr int kVarW = 1;

inline int floor_div(int a, int m) { return (a - floor_mod(a, m)) / m; }

// Vector-bundle Laplacian of T_{m,n} with flat connection of monodromy (z, w). Torus vertex
// (p, q) has index p*n + q. The edge of class (axis, p, q) runs from (p, q) by the displacement
// (0,1), (-1,1), (1,0) for axes a, b, c; wrapping p contributes z, wrapping q contributes 1/w.
inline PolyMatrix laplacian(int m, int n, const std::function<PolyQ(Axis, int, int)>& conductance) {
    if (m < 1 || n < 1) throw InvalidArgument("torus dimensions must be positive");
    const std::size_t size = static_cast<std::size_t>(m * n);
    PolyMatrix L(size, std::vector<PolyQ>(size));
    const int dp[3] = {0, -1, 1}, dq[3] = {1, 1, 0};
    for (Axis ax : kAxes)
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < n; ++q) {
                const PolyQ c = conductance(ax, p, q);
                const int tp = p + dp[index(ax)], tq = q + dq[index(ax)];
                Monomial shift;
                shift.e[kVarZ] = static_cast<std::int16_t>(floor_div(tp, m));
                shift.e[kVarW] = static_cast<std::int16_t>(-floor_div(tq, n));
                Monomial inverse;
                inverse.e[kVarZ] = static_cast<std::int16_t>(-shift.e[kVarZ]);
                inverse.e[kVarW] = static_cast<std::int16_t>(-shift.e[kVarW]);
                const std::size_t u = static_cast<std::size_t>(p * n + q);
                const std::size_t v = static_cast<std::size_t>(floor_mod(tp, m) * n + floor_mod(tq, n));
                L[u][u] += c;
                L[v][v] += c;
                L[u][v] -= c.shifted(shift);
                L[v][u] -= c.shifted(inverse);
            }
    return L;
}

inline PolyMatrix laplacian(const TorusConductance& base) {
    return laplacian(base.m, base.n, [&](Axis q, int p, int r) { return PolyQ(base.at(q, p, r)); });
}

// The Laplacian with every edge class replaced by a symbol: label number t becomes variable 2+t,
// in the order of labels_for(m, n, labeling).
inline PolyMatrix symbolic_laplacian(int m, int n, const std::string& labeling) {
    const auto names = labels_for(m, n, labeling);
    if (names.size() + 2 > static_cast<std::size_t>(kMaxVars))
        throw ResourceGuard("too many edge labels for a symbolic Laplacian");
    const auto slots = slot_labels(m, n, labeling);
    return laplacian(m, n, [&](Axis q, int p, int r) {
        const auto& label = slots[static_cast<std::size_t>((index(q) * m + p) * n + r)];
        const auto at = std::find(names.begin(), names.end(), label) - names.begin();
        return PolyQ::var(2 + static_cast<int>(at));
    });
}

// P(z, w) = det of the Laplacian, by cofactor expansion (the entries are Laurent polynomials).
inline PolyQ char_poly(const PolyMatrix& L) { return det_laplace(L); }

struct NewtonPolygon {
    std::vector<std::pair<int, int>> vertices;  // counterclockwise from the lowest-leftmost
    bool degenerate = false;

    bool centrally_symmetric() const {
        auto a = vertices, b = vertices;
        for (auto& [x, y] : b) x = -x, y = -y;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
};

// Convex hull of the (z, w) exponents of P, strict vertices only.
inline NewtonPolygon newton_polygon(const PolyQ& P) {
    if (P.is_zero()) throw InvalidArgument("Newton polygon of the zero polynomial");
    std::vector<std::pair<int, int>> pts;
    for (const auto& [m, c] : P.terms()) pts.emplace_back(m.e[kVarZ], m.e[kVarW]);
    std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    NewtonPolygon poly;
    if (pts.size() < 3) {
        poly.vertices = pts;
        poly.degenerate = true;
        return poly;
    }
    auto cross = [](std::pair<int, int> o, std::pair<int, int> a, std::pair<int, int> b) {
        return static_cast<long>(a.first - o.first) * (b.second - o.second) -
               static_cast<long>(a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<int, int>> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (const auto& p : pts) {
            while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    poly.vertices = hull;
    poly.degenerate = hull.size() < 3;
    return poly;
}

// The hexagon (+-n,0), (0,+-m), (n,m), (-n,-m) expected for T_{m,n}.
inline std::vector<std::pair<int, int>> expected_hexagon(int m, int n) {
    std::vector<std::pair<int, int>> v{{n, 0}, {-n, 0}, {0, m}, {0, -m}, {n, m}, {-n, -m}};
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace groves
