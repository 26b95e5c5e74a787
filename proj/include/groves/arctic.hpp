#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groves/matrix.hpp"
#include "groves/polygcd.hpp"
#include "groves/shuffle.hpp"

namespace groves {

// A nonzero homogeneous polynomial in three variables, with a note on where it came from.
struct PlaneCurve {
    PolyQ poly;
    int degree = 0;
    std::string note;

    PlaneCurve() = default;
    PlaneCurve(PolyQ p, std::string origin = {}) : poly(std::move(p)), note(std::move(origin)) {
        if (poly.is_zero()) throw InvalidArgument("a plane curve needs a nonzero polynomial");
        if (!poly.is_homogeneous()) throw InvalidArgument("a plane curve needs a homogeneous polynomial");
        for (const auto& [m, c] : poly.terms())
            for (int v = 3; v < kMaxVars; ++v)
                if (m.e[v] != 0) throw InvalidArgument("a plane curve has three variables");
        degree = poly.total_degree();
    }
};

inline bool same_up_to_scalar(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.monic() == b.monic();
}

// Lowest-degree homogeneous component of P(point + (x, y, z)). Every component of lower degree
// vanishes by construction, so the degree is the vanishing order of P at the point.
inline PlaneCurve homogeneous_part_at(const PolyQ& P, const std::array<Rational, 3>& point = {1, 1, 1}) {
    if (P.is_zero()) throw InvalidArgument("homogeneous part of the zero polynomial");
    const PolyQ shifted =
        P.compose({PolyQ(point[0]) + PolyQ::var(0), PolyQ(point[1]) + PolyQ::var(1), PolyQ(point[2]) + PolyQ::var(2)});
    const int order = shifted.min_total_degree();
    return PlaneCurve(shifted.homogeneous_component(order), "homogeneous part of order " + std::to_string(order));
}

struct DualCurveResult {
    PlaneCurve dual;
    PolyQ raw;                        // Res_x(g, dg/dx) rehomogenized in (u, v, w)
    std::optional<bool> target_divides_raw;
    std::optional<bool> matches_target;
};

namespace detail {

// Total-degree rehomogenization of a polynomial in variables 0 and 1 with variable 2.
inline PolyQ rehomogenize(const PolyQ& p) {
    const int d = p.total_degree();
    std::vector<PolyQ::Term> ts;
    for (auto [m, c] : p.terms()) {
        m.e[2] = static_cast<std::int16_t>(d - m.total());
        ts.emplace_back(m, c);
    }
    return PolyQ::from_terms(std::move(ts));
}

}  // namespace detail

// The projective dual of f. The tangent line u x + v y + w z = 0 is taken in the chart w = 1,
// so z = -u x - v y; with y = 1 the tangency condition is Res_x(g, dg/dx) = 0. The eliminant
// carries the dual with multiplicity one and spurious factors either repeated or shared with
// the leading coefficient of g in x; both kinds are removed, and the result is rehomogenized.
// With a target, the result reports whether the target divides the raw eliminant and whether
// the cleaned dual equals it up to a scalar.
inline DualCurveResult dual_curve(const PlaneCurve& f, const std::optional<PolyQ>& target = {}) {
    if (f.degree < 2) throw InvalidArgument("the dual of a line is a point");
    const PolyQ X = PolyQ::var(0), U = PolyQ::var(1), V = PolyQ::var(2);
    const PolyQ g = f.poly.compose({X, PolyQ(1), -(U * X) - V});
    if (g.degree(0) < 2) throw InvalidArgument("degenerate curve: no tangency condition in the chart");
    const PolyQ R = resultant(g, g.derivative(0), 0);
    if (R.is_zero()) throw InvalidArgument("degenerate curve: the eliminant vanishes identically");
    // Rename (x, u, v) -> (., u, v) as variables (0, 1) before rehomogenizing.
    auto to_uv = [](const PolyQ& p) { return p.compose({PolyQ(0), PolyQ::var(0), PolyQ::var(1)}); };
    PolyQ cleaned = to_uv(R);
    if (cleaned.involves(0) || cleaned.involves(1)) {
        const int main = cleaned.involves(1) ? 1 : 0;
        cleaned = multiplicity_one_part(cleaned, main);
        cleaned = strip_common_factors(cleaned, to_uv(leading_coefficient_in(g, 0)));
    }
    if (cleaned.is_constant()) throw InvalidArgument("degenerate curve: the dual is empty");
    DualCurveResult out{PlaneCurve(detail::rehomogenize(cleaned).primitive_integer(), "projective dual"),
                        detail::rehomogenize(to_uv(R)), std::nullopt, std::nullopt};
    if (target) {
        out.target_divides_raw = divide_exact(out.raw, *target).has_value();
        out.matches_target = same_up_to_scalar(out.dual.poly, *target);
    }
    return out;
}

// Dense univariate polynomials over Q, lowest degree first, for exact real-root counting.
namespace detail {

using Dense = std::vector<Rational>;

inline void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Dense remainder(Dense a, const Dense& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational q = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t t = 0; t < b.size(); ++t) a[shift + t] -= q * b[t];
        trim(a);
    }
    return a;
}

inline int sign_at_infinity(const Dense& p, bool positive) {
    const int s = sgn(p.back());
    return positive || (p.size() - 1) % 2 == 0 ? s : -s;
}

// Number of distinct real roots, by Sturm's theorem.
inline int distinct_real_roots(Dense p) {
    trim(p);
    if (p.empty()) throw InvalidArgument("root count of the zero polynomial");
    if (p.size() == 1) return 0;
    Dense dp;
    for (std::size_t t = 1; t < p.size(); ++t) dp.push_back(p[t] * static_cast<long>(t));
    std::vector<Dense> chain{p, dp};
    while (true) {
        Dense r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    auto variations = [&](bool positive) {
        int count = 0, last = 0;
        for (const auto& q : chain) {
            const int s = sign_at_infinity(q, positive);
            if (s != 0 && last != 0 && s != last) ++count;
            if (s != 0) last = s;
        }
        return count;
    };
    return variations(false) - variations(true);
}

}  // namespace detail

// Number of distinct real points of the curve f on the line through the origin of the
// coordinates orthogonal to P, i.e. on the dual line of P. By biduality this is the number of
// real tangent lines through P to the dual curve of f.
inline int real_tangent_count(const PlaneCurve& f, const std::array<Rational, 3>& P) {
    int k = -1;
    for (int t = 0; t < 3; ++t)
        if (P[static_cast<std::size_t>(t)] != 0) k = t;
    if (k < 0) throw InvalidArgument("the origin is not a projective point");
    std::array<PolyQ, 3> basis[2];
    int slot = 0;
    for (int t = 0; t < 3; ++t) {
        if (t == k) continue;
        std::array<PolyQ, 3> vec{PolyQ(0), PolyQ(0), PolyQ(0)};
        vec[static_cast<std::size_t>(t)] = PolyQ(P[static_cast<std::size_t>(k)]);
        vec[static_cast<std::size_t>(k)] = PolyQ(-P[static_cast<std::size_t>(t)]);
        basis[slot++] = vec;
    }
    // Points s * a + 1 * b, plus the point a at s = infinity.
    const PolyQ s = PolyQ::var(0);
    std::vector<PolyQ> images;
    for (std::size_t t = 0; t < 3; ++t) images.push_back(s * basis[0][t] + basis[1][t]);
    const PolyQ line = f.poly.compose(images);
    if (line.is_zero()) throw DomainError("the dual line lies on the curve");
    detail::Dense dense(static_cast<std::size_t>(line.degree(0) + 1));
    for (const auto& [m, c] : line.terms()) dense[static_cast<std::size_t>(m.e[0])] = c;
    return detail::distinct_real_roots(dense) + (line.degree(0) < f.degree ? 1 : 0);
}

// A real slice of a dual curve in the triangle u, v, w <= 0, u + v + w = -1. Points carry
// (u, v, w); each polyline is one connected piece of the contour.
struct CurveSlice {
    int resolution = 0;
    std::vector<std::vector<std::array<double, 3>>> polylines;
    double max_residual = 0;  // max |f| at emitted points, f scaled to unit max coefficient
    double step = 0;
    std::size_t specks = 0;   // loops within two grid steps, dropped as isolated points

    std::size_t components() const { return polylines.size(); }
    std::size_t point_count() const {
        std::size_t n = 0;
        for (const auto& p : polylines) n += p.size();
        return n;
    }
};

namespace detail {

// A double-precision evaluator for a homogeneous trivariate polynomial.
class CurveEvaluator {
public:
    explicit CurveEvaluator(const PolyQ& f) : degree_(f.total_degree()) {
        double scale = 0;
        for (const auto& [m, c] : f.terms()) scale = std::max(scale, std::fabs(c.get_d()));
        for (const auto& [m, c] : f.terms()) terms_.push_back({m.e[0], m.e[1], m.e[2], c.get_d() / scale});
    }

    double operator()(double u, double v) const {
        const double w = -1 - u - v;
        std::array<double, 64> pu{}, pv{}, pw{};
        pu[0] = pv[0] = pw[0] = 1;
        for (int d = 1; d <= degree_; ++d) {
            pu[static_cast<std::size_t>(d)] = pu[static_cast<std::size_t>(d - 1)] * u;
            pv[static_cast<std::size_t>(d)] = pv[static_cast<std::size_t>(d - 1)] * v;
            pw[static_cast<std::size_t>(d)] = pw[static_cast<std::size_t>(d - 1)] * w;
        }
        double sum = 0;
        for (const auto& t : terms_)
            sum += t.c * pu[static_cast<std::size_t>(t.a)] * pv[static_cast<std::size_t>(t.b)] *
                   pw[static_cast<std::size_t>(t.d)];
        return sum;
    }

private:
    struct Term {
        int a, b, d;
        double c;
    };
    int degree_;
    std::vector<Term> terms_;
};

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Marching squares over (u, v) with w = -1 - u - v on a grid covering [-1, 0]^2 padded by two
// steps, keeping the pieces inside the triangle up to one step. Crossings are refined by
// bisection along their grid edge, and segments sharing a grid edge are joined into polylines.
// Closed loops no wider than two steps are isolated real points of the curve seen through
// rounding noise; they are counted as specks rather than emitted.
inline CurveSlice arctic_slice(const PlaneCurve& dual, int resolution) {
    if (resolution < 2) throw InvalidArgument("slice resolution must be at least 2");
    if (resolution > 20000) throw ResourceGuard("slice resolution above 20000");
    const detail::CurveEvaluator f(dual.poly);
    const double h = 1.0 / resolution;
    const int pad = 2, R = resolution + 2 * pad;
    auto coord = [&](int a) { return -1.0 + (a - pad) * h; };
    std::vector<double> grid(static_cast<std::size_t>((R + 1) * (R + 1)));
    for (int a = 0; a <= R; ++a)
        for (int b = 0; b <= R; ++b) grid[static_cast<std::size_t>(a * (R + 1) + b)] = f(coord(a), coord(b));
    auto value = [&](int a, int b) { return grid[static_cast<std::size_t>(a * (R + 1) + b)]; };

    // Grid edge ids: 2 * node for the edge toward a + 1, 2 * node + 1 toward b + 1.
    std::map<long, std::array<double, 2>> crossing;
    auto cross = [&](int a, int b, bool along_b) -> long {
        const long id = 2L * (a * (R + 1) + b) + (along_b ? 1 : 0);
        if (crossing.count(id)) return id;
        double lo = 0, hi = 1;
        const double f0 = value(a, b);
        auto at = [&](double t) {
            return along_b ? std::array<double, 2>{coord(a), coord(b) + t * h}
                           : std::array<double, 2>{coord(a) + t * h, coord(b)};
        };
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto p = at(mid);
            if ((f(p[0], p[1]) > 0) == (f0 > 0)) lo = mid;
            else hi = mid;
        }
        crossing[id] = at(0.5 * (lo + hi));
        return id;
    };
    std::vector<std::pair<long, long>> segments;
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < R; ++b) {
            if (coord(a) + coord(b) + 2 * h < -1 - h) continue;
            const double v00 = value(a, b), v10 = value(a + 1, b), v11 = value(a + 1, b + 1), v01 = value(a, b + 1);
            std::vector<long> ids;
            // Counterclockwise: bottom (a..a+1, b), right (a+1, b..b+1), top, left.
            if ((v00 > 0) != (v10 > 0)) ids.push_back(cross(a, b, false));
            if ((v10 > 0) != (v11 > 0)) ids.push_back(cross(a + 1, b, true));
            if ((v01 > 0) != (v11 > 0)) ids.push_back(cross(a, b + 1, false));
            if ((v00 > 0) != (v01 > 0)) ids.push_back(cross(a, b, true));
            if (ids.size() == 2) {
                segments.emplace_back(ids[0], ids[1]);
            } else if (ids.size() == 4) {
                const double centre = f(coord(a) + 0.5 * h, coord(b) + 0.5 * h);
                if ((centre > 0) == (v00 > 0)) {
                    segments.emplace_back(ids[0], ids[1]);
                    segments.emplace_back(ids[2], ids[3]);
                } else {
                    segments.emplace_back(ids[0], ids[3]);
                    segments.emplace_back(ids[1], ids[2]);
                }
            }
        }
    auto inside = [&](long id) {
        const auto& p = crossing.at(id);
        return p[0] <= h && p[1] <= h && p[0] + p[1] >= -1 - h;
    };
    std::erase_if(segments, [&](const auto& s) { return !inside(s.first) || !inside(s.second); });

    // Join segments into chains through their shared crossings.
    std::map<long, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s].first].push_back(s);
        incident[segments[s].second].push_back(s);
    }
    CurveSlice slice;
    slice.resolution = resolution;
    slice.step = h;
    std::vector<bool> used(segments.size(), false);
    auto walk = [&](std::size_t start, long from) {
        std::vector<long> chain{from};
        std::size_t s = start;
        long at = from;
        while (true) {
            used[s] = true;
            at = segments[s].first == at ? segments[s].second : segments[s].first;
            chain.push_back(at);
            std::optional<std::size_t> next;
            for (std::size_t t : incident[at])
                if (!used[t]) next = t;
            if (!next) break;
            s = *next;
        }
        return chain;
    };
    auto emit = [&](const std::vector<long>& chain) {
        std::vector<std::array<double, 3>> line;
        double lo[2] = {1, 1}, hi[2] = {-2, -2};
        for (long id : chain) {
            const auto& p = crossing.at(id);
            line.push_back({p[0], p[1], -1 - p[0] - p[1]});
            for (int t = 0; t < 2; ++t) lo[t] = std::min(lo[t], p[t]), hi[t] = std::max(hi[t], p[t]);
        }
        if (chain.front() == chain.back() && hi[0] - lo[0] <= 2 * h && hi[1] - lo[1] <= 2 * h) {
            ++slice.specks;
            return;
        }
        for (long id : chain) {
            const auto& p = crossing.at(id);
            slice.max_residual = std::max(slice.max_residual, std::fabs(f(p[0], p[1])));
        }
        slice.polylines.push_back(std::move(line));
    };
    // Open chains first, from their endpoints, then the closed loops.
    for (const auto& [id, segs] : incident)
        if (segs.size() == 1 && !used[segs[0]]) emit(walk(segs[0], id));
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) emit(walk(s, segments[s].first));
    return slice;
}

// Crossing parity of a horizontal ray from (u, v) against every polyline edge.
inline bool inside_slice(const CurveSlice& slice, double u, double v) {
    bool in = false;
    for (const auto& line : slice.polylines)
        for (std::size_t t = 0; t + 1 < line.size(); ++t) {
            const auto& p = line[t];
            const auto& q = line[t + 1];
            if ((p[1] > v) != (q[1] > v)) {
                const double x = p[0] + (v - p[1]) * (q[0] - p[0]) / (q[1] - p[1]);
                if (x > u) in = !in;
            }
        }
    return in;
}

// Max |distance to the incenter (-1/3, -1/3, -1/3) - inradius| / inradius over slice points.
inline double incircle_deviation(const CurveSlice& slice) {
    const double r = std::sqrt(1.0 / 6.0);
    double worst = 0;
    for (const auto& line : slice.polylines)
        for (const auto& p : line) {
            double d2 = 0;
            for (double c : p) d2 += (c + 1.0 / 3) * (c + 1.0 / 3);
            worst = std::max(worst, std::fabs(std::sqrt(d2) - r) / r);
        }
    return worst;
}

// Smallest |u|, |v|, |w| over slice points: how close the curve comes to each side.
inline std::array<double, 3> side_gaps(const CurveSlice& slice) {
    std::array<double, 3> gap{1, 1, 1};
    for (const auto& line : slice.polylines)
        for (const auto& p : line)
            for (std::size_t t = 0; t < 3; ++t) gap[t] = std::min(gap[t], std::fabs(p[t]));
    return gap;
}

// Drawing of the triangle with optional grove edges and slice, both placed in the triangle with
// vertices (-1,0,0), (0,-1,0), (0,0,-1) at the left, right and top corners.
struct SvgScene {
    const Grove* grove = nullptr;
    const CurveSlice* slice = nullptr;
};

inline std::string render_svg(const SvgScene& scene) {
    const double size = 800, margin = 20, height = std::sqrt(3.0) / 2;
    auto place = [&](double v, double w) {
        const double x = -v + 0.5 * -w, y = -w * height;
        return std::pair{margin + x * (size - 2 * margin), size - margin - y * (size - 2 * margin)};
    };
    std::string out;
    char buf[256];
    auto put = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
    };
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    put("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
        int(size), int(size), int(size), int(size));
    const auto A = place(0, 0), B = place(-1, 0), C = place(0, -1);
    put("<polygon points=\"%.3f,%.3f %.3f,%.3f %.3f,%.3f\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n", A.first,
        A.second, B.first, B.second, C.first, C.second);
    if (scene.grove) {
        static const char* colours[3] = {"#c0392b", "#27ae60", "#2c6fbb"};
        const auto& g = *scene.grove;
        for (Axis q : kAxes) {
            put("<g stroke=\"%s\" stroke-width=\"1\">\n", colours[index(q)]);
            for (const auto& r : g.long_rhombi) {
                if (r.axis != q) continue;
                const auto [p, s] = r.long_diagonal();
                const double lp = -static_cast<double>(p.level()), ls = -static_cast<double>(s.level());
                if (lp == 0 || ls == 0) continue;
                const auto P = place(p.j / lp, p.k / lp), S = place(s.j / ls, s.k / ls);
                put("<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n", P.first, P.second, S.first, S.second);
            }
            out += "</g>\n";
        }
    }
    if (scene.slice) {
        for (const auto& line : scene.slice->polylines) {
            out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
            for (std::size_t t = 0; t < line.size(); ++t) {
                const auto P = place(line[t][1], line[t][2]);
                if (t) out += ' ';
                put("%.3f,%.3f", P.first, P.second);
            }
            out += "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace groves
