#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "groves/conductance.hpp"
#include "groves/lattice.hpp"
#include "groves/rational.hpp"

namespace groves {

// Values on a finite set of lattice points.
template <class T>
class LatticeFunctionT {
public:
    bool has(const Point3& p) const { return values_.count(p) != 0; }

    const T& at(const Point3& p) const {
        auto it = values_.find(p);
        if (it == values_.end()) throw DomainError("incomplete boundary: no value at " + p.str());
        return it->second;
    }

    void set(const Point3& p, T value) { values_.insert_or_assign(p, std::move(value)); }

    std::size_t size() const { return values_.size(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

private:
    std::unordered_map<Point3, T, Point3Hash> values_;
};

using LatticeFunction = LatticeFunctionT<Rational>;

// First-order dual numbers over Q: value + slope * eps with eps^2 = 0.
struct Dual {
    Rational value, slope;

    Dual(Rational v = 0, Rational s = 0) : value(std::move(v)), slope(std::move(s)) {}

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.value + b.value, a.slope + b.slope}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.value - b.value, a.slope - b.slope}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.value * b.value, a.value * b.slope + a.slope * b.value};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        if (b.value == 0) throw DomainError("dual division by a zero value");
        return {a.value / b.value, (a.slope * b.value - a.value * b.slope) / (b.value * b.value)};
    }
    friend Dual operator*(const Rational& s, const Dual& a) { return {s * a.value, s * a.slope}; }
};

inline bool is_zero_value(const Rational& x) { return x == 0; }
inline bool is_zero_value(const Dual& x) { return x.value == 0; }

// The points of I that a recurrence over U can read: every point within three levels below the
// deepest removed cube, plus the top layer when U is empty.
inline std::vector<Point3> boundary_window(const InitialConditions& I) {
    std::vector<Point3> out;
    for (const auto& p : octant_points(I.min_removed_level() - 3, 0))
        if (I.in_I(p)) out.push_back(p);
    return out;
}

template <class T>
LatticeFunctionT<T> constant_boundary(const InitialConditions& I, const T& value) {
    LatticeFunctionT<T> f;
    for (const auto& p : boundary_window(I)) f.set(p, value);
    return f;
}

// Cubes of U from the deepest level upward, lexicographic within a level.
inline std::vector<Point3> recurrence_order(const InitialConditions& I) {
    std::vector<Point3> cubes = I.removed();
    std::stable_sort(cubes.begin(), cubes.end(),
                     [](const Point3& a, const Point3& b) { return a.level() < b.level(); });
    return cubes;
}

namespace detail {

template <class T, class Step>
LatticeFunctionT<T> run_recurrence(const LatticeFunctionT<T>& boundary, const InitialConditions& I,
                                   const std::optional<std::vector<Point3>>& order, Step&& step) {
    const std::vector<Point3> cubes = order ? *order : recurrence_order(I);
    if (cubes.size() != I.removed().size()) throw ScheduleError("recurrence order must list every cube of U once");
    LatticeFunctionT<T> f = boundary;
    for (const auto& c : cubes) {
        if (!I.in_removed(c)) throw ScheduleError("cube " + c.str() + " is not in U");
        if (f.has(c)) throw ScheduleError("cube " + c.str() + " listed twice");
        const T& bottom = f.at(c - e_ijk);
        if (is_zero_value(bottom)) throw DomainError("zero value below cube " + c.str());
        f.set(c, step(c, f) / bottom);
    }
    return f;
}

}  // namespace detail

// Extends boundary values on I to U with
// f_c f_{c-(1,1,1)} = f_{c-i} f_{c-j-k} + f_{c-j} f_{c-i-k} + f_{c-k} f_{c-i-j}.
inline LatticeFunction solve_cube_recurrence(const LatticeFunction& boundary, const InitialConditions& I,
                                             const std::optional<std::vector<Point3>>& order = {}) {
    auto step = [](const Point3& c, const LatticeFunction& f) -> Rational {
        return f.at(c - e_i) * f.at(c - e_j - e_k) + f.at(c - e_j) * f.at(c - e_i - e_k) +
               f.at(c - e_k) * f.at(c - e_i - e_j);
    };
    return detail::run_recurrence<Rational>(boundary, I, order, step);
}

// The conductance-weighted recurrence: the three products are weighted by U, V, W of the cube.
template <class T>
LatticeFunctionT<T> solve_generalized_recurrence(const LatticeFunctionT<T>& boundary, const ConductanceField& field,
                                                 const InitialConditions& I,
                                                 const std::optional<std::vector<Point3>>& order = {}) {
    return detail::run_recurrence<T>(boundary, I, order, [&](const Point3& c, const LatticeFunctionT<T>& g) -> T {
        const ShuffleWeights w = field.weights(c);
        return w.U * (g.at(c - e_i) * g.at(c - e_j - e_k)) + w.V * (g.at(c - e_j) * g.at(c - e_i - e_k)) +
               w.W * (g.at(c - e_k) * g.at(c - e_i - e_j));
    });
}

// C^f_q: product of f over the long diagonal divided by the product over the short diagonal.
inline Rational conductance_from_f(const LatticeFunction& f, const Rhombus& r) {
    const auto [l1, l2] = r.long_diagonal();
    const auto [s1, s2] = r.short_diagonal();
    const Rational den = f.at(s1) * f.at(s2);
    if (den == 0) throw InvalidArgument("zero f on the short diagonal of " + r.str());
    return f.at(l1) * f.at(l2) / den;
}

using ConductancePatch = std::map<std::pair<Axis, Point3>, Rational>;

// Long-diagonal conductances of every rhombus whose vertices have level >= -depth.
inline ConductancePatch conductance_patch(const ConductanceField& field, int depth) {
    ConductancePatch patch;
    for (Axis q : kAxes)
        for (const auto& p : octant_points(2 - depth, 0)) patch.emplace(std::pair{q, p}, field.C(q, p));
    return patch;
}

// Builds f on the octant points of level >= -depth: f = 1 on the coordinate rays, the three
// coordinate planes solved from C_q = f(long) / f(short), the interior from the cube
// recurrence. Every patch entry is then checked against the f it produced.
inline LatticeFunction f_from_conductance(const ConductancePatch& patch, int depth) {
    if (depth < 0) throw InvalidArgument("patch depth must be nonnegative");
    auto C = [&](Axis q, const Point3& anchor) -> const Rational& {
        auto it = patch.find({q, anchor});
        if (it == patch.end()) throw DomainError("conductance patch lacks r_" + std::string(1, name(q)) + anchor.str());
        if (it->second <= 0) throw InvalidArgument("conductances must be positive");
        return it->second;
    };
    LatticeFunction f;
    for (const auto& p : octant_points(-depth, 0)) {
        const int zeros = (p.i == 0) + (p.j == 0) + (p.k == 0);
        if (zeros >= 2) {
            f.set(p, 1);
        } else if (zeros == 1) {
            const Axis q = p.i == 0 ? Axis::a : p.j == 0 ? Axis::b : Axis::c;
            const auto [u, v] = Rhombus{q, {}}.others();
            const Point3 anchor = p + u + v;
            f.set(p, f.at(anchor - u) * f.at(anchor - v) / (f.at(anchor) * C(q, anchor)));
        } else {
            const Point3 c = p + e_ijk;
            f.set(p, (f.at(c - e_i) * f.at(c - e_j - e_k) + f.at(c - e_j) * f.at(c - e_i - e_k) +
                      f.at(c - e_k) * f.at(c - e_i - e_j)) /
                         f.at(c));
        }
    }
    for (const auto& [key, value] : patch) {
        const Rhombus r{key.first, key.second};
        if (r.bottom().level() < -depth) continue;
        if (conductance_from_f(f, r) != value)
            throw ConsistencyError("conductance patch is not Y-Delta consistent at " + r.str());
    }
    return f;
}

inline LatticeFunction f_from_conductance(const ConductanceField& field, int depth) {
    return f_from_conductance(conductance_patch(field, depth), depth);
}

// d g_{0,0,0} / d g_site at the all-ones boundary of I, exactly, through dual numbers.
inline Rational creation_rate_by_derivative(const ConductanceField& field, const InitialConditions& I,
                                            const Point3& site) {
    if (!I.in_I(site)) throw InvalidArgument("creation-rate site " + site.str() + " is not in I");
    auto boundary = constant_boundary<Dual>(I, Dual(1));
    if (!boundary.has(site)) return 0;
    boundary.set(site, Dual(1, 1));
    const auto g = solve_generalized_recurrence(boundary, field, I);
    return g.at({0, 0, 0}).slope;
}

// Two-sided difference quotient (g(1+eps) - g(1-eps)) / (2 eps) with exact rational eps.
inline Rational creation_rate_by_difference(const ConductanceField& field, const InitialConditions& I,
                                            const Point3& site, const Rational& eps) {
    if (!I.in_I(site)) throw InvalidArgument("creation-rate site " + site.str() + " is not in I");
    auto eval = [&](const Rational& value) -> Rational {
        auto boundary = constant_boundary<Rational>(I, Rational(1));
        if (boundary.has(site)) boundary.set(site, value);
        return solve_generalized_recurrence(boundary, field, I).at({0, 0, 0});
    };
    return (eval(1 + eps) - eval(1 - eps)) / (2 * eps);
}

}  // namespace groves
