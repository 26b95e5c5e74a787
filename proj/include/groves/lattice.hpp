#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "groves/errors.hpp"

namespace groves {

struct Point3 {
    int i = 0, j = 0, k = 0;

    constexpr int level() const { return i + j + k; }
    constexpr bool in_octant() const { return i <= 0 && j <= 0 && k <= 0; }

    friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.i + b.i, a.j + b.j, a.k + b.k}; }
    friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.i - b.i, a.j - b.j, a.k - b.k}; }
    friend constexpr Point3 operator*(int s, Point3 a) { return {s * a.i, s * a.j, s * a.k}; }
    friend constexpr auto operator<=>(const Point3&, const Point3&) = default;
    friend constexpr bool operator==(const Point3&, const Point3&) = default;

    std::string str() const {
        return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const Point3& p) { return os << p.str(); }
};

struct Point3Hash {
    std::size_t operator()(const Point3& p) const noexcept {
        std::uint64_t h = static_cast<std::uint32_t>(p.i);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(p.j);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(p.k);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

inline constexpr Point3 e_i{1, 0, 0};
inline constexpr Point3 e_j{0, 1, 0};
inline constexpr Point3 e_k{0, 0, 1};
inline constexpr Point3 e_ijk{1, 1, 1};

enum class Axis : std::uint8_t { a = 0, b = 1, c = 2 };
inline constexpr std::array<Axis, 3> kAxes{Axis::a, Axis::b, Axis::c};

inline constexpr int index(Axis q) { return static_cast<int>(q); }
inline constexpr char name(Axis q) { return "abc"[index(q)]; }

// Unit vector along the axis a rhombus is "about": r_a lives in a plane i = const.
inline constexpr Point3 unit(Axis q) {
    return q == Axis::a ? e_i : q == Axis::b ? e_j : e_k;
}

// The rhombus r_q(p) has top vertex p and bottom vertex p minus the two unit vectors
// other than unit(q). Its long diagonal joins the two remaining vertices.
struct Rhombus {
    Axis axis = Axis::a;
    Point3 anchor;

    std::pair<Point3, Point3> others() const {
        switch (axis) {
            case Axis::a: return {e_j, e_k};
            case Axis::b: return {e_i, e_k};
            default: return {e_i, e_j};
        }
    }
    Point3 top() const { return anchor; }
    Point3 bottom() const {
        auto [u, v] = others();
        return anchor - u - v;
    }
    std::array<Point3, 2> long_diagonal() const {
        auto [u, v] = others();
        return {anchor - u, anchor - v};
    }
    std::array<Point3, 2> short_diagonal() const { return {top(), bottom()}; }
    std::array<Point3, 4> vertices() const {
        auto [u, v] = others();
        return {anchor, anchor - u, anchor - v, anchor - u - v};
    }
    // Level of the plane containing the long diagonal.
    int long_level() const { return anchor.level() - 1; }

    friend auto operator<=>(const Rhombus&, const Rhombus&) = default;
    friend bool operator==(const Rhombus&, const Rhombus&) = default;

    std::string str() const { return std::string("r_") + name(axis) + anchor.str(); }
};

// Initial conditions are kept as the finite set U of removed cubes; L is the octant minus U,
// and I is the set of points of L whose upper diagonal neighbour leaves L.
class InitialConditions {
public:
    InitialConditions() = default;

    explicit InitialConditions(std::vector<Point3> removed) : removed_(std::move(removed)) {
        std::sort(removed_.begin(), removed_.end());
        removed_.erase(std::unique(removed_.begin(), removed_.end()), removed_.end());
        for (const auto& p : removed_) {
            if (!p.in_octant()) throw InvalidArgument("removed cube " + p.str() + " lies outside the octant");
            for (Point3 up : {p + e_i, p + e_j, p + e_k}) {
                if (up.in_octant() && !in_removed(up))
                    throw InvalidArgument("removed set is not upward closed at " + p.str());
            }
        }
    }

    const std::vector<Point3>& removed() const { return removed_; }

    bool in_removed(const Point3& p) const { return std::binary_search(removed_.begin(), removed_.end(), p); }
    bool in_L(const Point3& p) const { return p.in_octant() && !in_removed(p); }
    bool in_I(const Point3& p) const { return in_L(p) && !in_L(p + e_ijk); }

    bool contains(const Rhombus& r) const {
        for (const auto& v : r.vertices())
            if (!in_I(v)) return false;
        return true;
    }

    // Deepest level touched by U, or 1 when U is empty.
    int min_removed_level() const {
        int lo = 1;
        for (const auto& p : removed_) lo = std::min(lo, p.level());
        return lo;
    }

    InitialConditions with_cube(const Point3& c) const {
        auto next = removed_;
        next.push_back(c);
        return InitialConditions(std::move(next));
    }

    friend bool operator==(const InitialConditions&, const InitialConditions&) = default;

private:
    std::vector<Point3> removed_;
};

// All octant points with level in [lo, hi], ordered by decreasing level then lexicographically
// decreasing; this is the canonical sweep order used across the library.
inline std::vector<Point3> octant_points(int lo, int hi) {
    std::vector<Point3> out;
    hi = std::min(hi, 0);
    for (int s = hi; s >= lo; --s) {
        for (int i = 0; i >= s; --i)
            for (int j = 0; j >= s - i; --j) out.push_back({i, j, s - i - j});
    }
    return out;
}

inline InitialConditions standard_initial_conditions(int n) {
    if (n <= 0) throw InvalidArgument("order n must be positive, got " + std::to_string(n));
    return InitialConditions(octant_points(2 - n, 0));
}

inline std::size_t standard_removed_count(int n) {
    std::size_t total = 0;
    for (int s = 0; s <= n - 2; ++s) total += static_cast<std::size_t>((s + 1) * (s + 2) / 2);
    return total;
}

inline std::array<Point3, 6> lower_neighbours(const Point3& c) {
    return {c - e_i, c - e_j, c - e_k, c - e_i - e_j, c - e_i - e_k, c - e_j - e_k};
}

// Cubes of U whose six lower neighbours all lie in I: the last cubes a shuffle could have added.
inline std::vector<Point3> removable_cubes(const InitialConditions& I) {
    std::vector<Point3> out;
    for (const auto& c : I.removed()) {
        const auto nb = lower_neighbours(c);
        if (std::all_of(nb.begin(), nb.end(), [&](const Point3& p) { return I.in_I(p); })) out.push_back(c);
    }
    return out;
}

// Points of L that can join U next (their upper neighbours are already gone).
inline bool is_addable(const InitialConditions& I, const Point3& c) {
    if (!I.in_L(c)) return false;
    for (Point3 up : {c + e_i, c + e_j, c + e_k})
        if (I.in_L(up)) return false;
    return true;
}

inline std::vector<Point3> addable_cubes(const InitialConditions& I, int min_level) {
    std::vector<Point3> out;
    for (const auto& c : octant_points(min_level, 0))
        if (is_addable(I, c)) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

// Rhombi of I whose top vertex has level at least min_level, sorted by axis then anchor.
inline std::vector<Rhombus> rhombi_of(const InitialConditions& I, int min_level) {
    std::vector<Rhombus> out;
    for (Axis q : kAxes)
        for (const auto& p : octant_points(min_level, 0)) {
            Rhombus r{q, p};
            if (I.contains(r)) out.push_back(r);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Default shuffle schedule toward I(n): level-major by decreasing level, lexicographic ties.
inline std::vector<Point3> level_major_schedule(int n) {
    if (n <= 0) throw InvalidArgument("order n must be positive");
    std::vector<Point3> out;
    for (int s = 0; s >= 2 - n; --s) {
        auto layer = octant_points(s, s);
        std::sort(layer.begin(), layer.end());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

// A second valid schedule toward I(n): every cube in lexicographically decreasing order, so each
// cube comes after the three cubes above it.
inline std::vector<Point3> lexicographic_schedule(int n) {
    auto out = level_major_schedule(n);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Checks that each cube in turn is addable, starting from an empty U.
inline void validate_schedule(const std::vector<Point3>& schedule) {
    std::unordered_set<Point3, Point3Hash> removed;
    auto in_L = [&](const Point3& p) { return p.in_octant() && !removed.count(p); };
    for (const auto& c : schedule) {
        const bool addable = in_L(c) && !in_L(c + e_i) && !in_L(c + e_j) && !in_L(c + e_k);
        if (!addable) throw ScheduleError("cube " + c.str() + " is not addable at its turn");
        removed.insert(c);
    }
}

}  // namespace groves
