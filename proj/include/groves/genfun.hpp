#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "groves/conductance.hpp"
#include "groves/matrix.hpp"
#include "groves/ratfunc.hpp"
#include "groves/series.hpp"

namespace groves {

// Which generating function: creation rates F, or edge probabilities G_p, G_q, G_r.
enum class GfKind { F = 0, p = 1, q = 2, r = 3 };
inline constexpr std::array<GfKind, 4> kGfKinds{GfKind::F, GfKind::p, GfKind::q, GfKind::r};

inline const char* kind_name(GfKind k) {
    switch (k) {
        case GfKind::F: return "E";
        case GfKind::p: return "p";
        case GfKind::q: return "q";
        default: return "r";
    }
}

inline const PolyQ& var_x() {
    static const PolyQ x = PolyQ::var(0);
    return x;
}
inline const PolyQ& var_y() {
    static const PolyQ y = PolyQ::var(1);
    return y;
}
inline const PolyQ& var_z() {
    static const PolyQ z = PolyQ::var(2);
    return z;
}

// The finite linear system over the translation classes: A F = 1 and A G_s = t/(1-t) w_s,
// where (t, w_s) is (x, V+W), (y, U+W), (z, U+V) evaluated at each class.
struct SystemBundle {
    int m = 1, n = 1, N = 1;
    std::vector<Point3> classes;
    std::vector<ShuffleWeights> weights;  // at (0,0,0) of each class
    PolyMatrix A;

    std::size_t index_of(const Point3& mu) const {
        const Point3 rep = class_of(mu, N, m, n).rep;
        for (std::size_t t = 0; t < classes.size(); ++t)
            if (classes[t] == rep) return t;
        throw ConsistencyError("class " + rep.str() + " missing from the class list");
    }

    Rational rhs_weight(GfKind k, std::size_t c) const {
        const auto& w = weights[c];
        switch (k) {
            case GfKind::F: return 1;
            case GfKind::p: return w.V + w.W;
            case GfKind::q: return w.U + w.W;
            default: return w.U + w.V;
        }
    }

    // The variable t of the prefactor t/(1-t); F has none.
    static const PolyQ& prefactor_var(GfKind k) {
        return k == GfKind::p ? var_x() : k == GfKind::q ? var_y() : var_z();
    }

    RatFuncQ rhs(GfKind k, std::size_t c) const {
        if (k == GfKind::F) return RatFuncQ(PolyQ(1));
        const PolyQ& t = prefactor_var(k);
        return RatFuncQ(t * rhs_weight(k, c), PolyQ(1) - t);
    }
};

// Validates a caller-supplied class order: one representative per class, each class once.
inline std::vector<Point3> checked_class_order(const std::vector<Point3>& order, int N, int m, int n) {
    const auto canonical = class_representatives(N, m, n);
    if (order.size() != canonical.size())
        throw InvalidArgument("class order must list " + std::to_string(canonical.size()) + " classes");
    std::vector<Point3> seen;
    for (const auto& p : order) {
        const Point3 rep = class_of(p, N, m, n).rep;
        if (std::find(seen.begin(), seen.end(), rep) != seen.end())
            throw InvalidArgument("class order repeats the class of " + p.str());
        seen.push_back(rep);
    }
    std::vector<Point3> out;
    for (const auto& p : order) out.push_back(class_of(p, N, m, n).rep);
    return out;
}

inline SystemBundle build_system(const ConductanceField& field, int N,
                                 const std::optional<std::vector<Point3>>& class_order = {}) {
    const auto report = check_T_periodicity(field, N, 2 * N + 4);
    if (!report.periodic)
        throw DomainError("conductances are not periodic with N = " + std::to_string(N) + ": weights differ at " +
                          report.failing_anchor->str() + " under " + report.failing_generator);
    SystemBundle b;
    b.m = field.m();
    b.n = field.n();
    b.N = N;
    b.classes = class_order ? checked_class_order(*class_order, N, b.m, b.n) : class_representatives(N, b.m, b.n);
    const std::size_t size = b.classes.size();
    b.A.assign(size, std::vector<PolyQ>(size));
    const PolyQ &x = var_x(), &y = var_y(), &z = var_z();
    for (std::size_t row = 0; row < size; ++row) {
        const Point3 mu = b.classes[row];
        const ShuffleWeights w = field.weights(mu);
        b.weights.push_back(w);
        auto add = [&](const Point3& shift, const PolyQ& entry) { b.A[row][b.index_of(mu + shift)] += entry; };
        add({0, 0, 0}, PolyQ(1));
        add({-1, -1, -1}, x * y * z);
        add({-1, 0, 0}, -(x * w.U));
        add({0, -1, -1}, -(y * z * w.U));
        add({0, -1, 0}, -(y * w.V));
        add({-1, 0, -1}, -(x * z * w.V));
        add({0, 0, -1}, -(z * w.W));
        add({-1, -1, 0}, -(x * y * w.W));
    }
    return b;
}

// Cramer solution: every generating function is prefactor * numerator / Q with Q = det A,
// where the numerator is the determinant of A with one column replaced by the weight vector.
struct SolvedSystem {
    PolyQ Q;
    std::array<std::vector<PolyQ>, 4> numerators;

    const PolyQ& numerator(GfKind k, std::size_t c) const { return numerators[static_cast<int>(k)][c]; }

    RatFuncQ function(GfKind k, std::size_t c) const {
        if (k == GfKind::F) return RatFuncQ(numerator(k, c), Q);
        const PolyQ& t = SystemBundle::prefactor_var(k);
        return RatFuncQ(t * numerator(k, c), (PolyQ(1) - t) * Q);
    }
};

inline SolvedSystem solve_system(const SystemBundle& b) {
    SolvedSystem s;
    s.Q = det(b.A);
    if (s.Q.is_zero()) throw ConsistencyError("the class system is singular");
    const std::size_t size = b.classes.size();
    for (GfKind k : kGfKinds) {
        auto& out = s.numerators[static_cast<int>(k)];
        for (std::size_t c = 0; c < size; ++c) {
            PolyMatrix m = b.A;
            for (std::size_t r = 0; r < size; ++r) m[r][c] = PolyQ(b.rhs_weight(k, r));
            out.push_back(det(std::move(m)));
        }
    }
    return s;
}

// Series coefficients of a generating function up to total degree D.
inline TruncSeries3 extract_coefficients(const RatFuncQ& g, int D) {
    if (g.den().constant_term() == 0) throw DomainError("generating function denominator is not a unit");
    return g.series(D);
}

// Independent route: solve A G = b coefficientwise. A(0) = I, so the degree-d coefficients of
// every class follow from those of lower degree.
inline std::vector<TruncSeries3> series_solve(const SystemBundle& b, GfKind k, int D) {
    const std::size_t size = b.classes.size();
    struct Entry {
        std::size_t col;
        std::array<int, 3> e;
        Rational c;
    };
    std::vector<std::vector<Entry>> rows(size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            for (const auto& [m, coeff] : b.A[r][c].terms()) {
                if (m.is_one()) {
                    if (coeff != (r == c ? 1 : 0)) throw ConsistencyError("A(0,0,0) is not the identity");
                    continue;
                }
                rows[r].push_back({c, {m.e[0], m.e[1], m.e[2]}, coeff});
            }
    std::vector<TruncSeries3> rhs, out(size, TruncSeries3(D));
    for (std::size_t c = 0; c < size; ++c) rhs.push_back(extract_coefficients(b.rhs(k, c), D));
    TruncSeries3(D).for_each_index([&](int i, int j, int l) {
        for (std::size_t r = 0; r < size; ++r) {
            Rational acc = rhs[r].coeff(i, j, l);
            for (const auto& en : rows[r]) acc -= en.c * out[en.col].coeff(i - en.e[0], j - en.e[1], l - en.e[2]);
            out[r].at(i, j, l) = acc;
        }
    });
    return out;
}

struct IdentityReport {
    bool sum_identity = true;
    bool recursion = true;
    bool ranges = true;
    std::size_t negative_rates = 0;  // entries with E < 0, which are legitimate
    Rational min_rate = 1;
    std::vector<std::string> failures;

    bool ok() const { return sum_identity && recursion && ranges; }
};

// Checks F + G_p + G_q + G_r = 1/((1-x)(1-y)(1-z)) for every class as a polynomial identity,
// and up to degree D the recursions p(i,j,k) = p(i+1,j,k) + (V+W)(i+1,j,k) E(i+1,j,k) (and the
// q, r analogues) with weights taken from the field shifted to the class. Probabilities must lie in
// [0, 1]. E = 1 - p - q - r is an expected exponent and may be negative, so it is only held to
// [-2, 1]; negative entries are counted.
inline IdentityReport verify_identities(const SystemBundle& b, const SolvedSystem& s, const ConductanceField& field,
                                        int D) {
    IdentityReport rep;
    const PolyQ one(1), &x = var_x(), &y = var_y(), &z = var_z();
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
        const PolyQ lhs = s.numerator(GfKind::F, c) * (one - x) * (one - y) * (one - z) +
                          x * s.numerator(GfKind::p, c) * (one - y) * (one - z) +
                          y * s.numerator(GfKind::q, c) * (one - x) * (one - z) +
                          z * s.numerator(GfKind::r, c) * (one - x) * (one - y);
        if (lhs != s.Q) {
            rep.sum_identity = false;
            rep.failures.push_back("sum identity fails for class " + b.classes[c].str());
        }
        std::array<TruncSeries3, 4> t{TruncSeries3(0), TruncSeries3(0), TruncSeries3(0), TruncSeries3(0)};
        for (GfKind k : kGfKinds) t[static_cast<int>(k)] = extract_coefficients(s.function(k, c), D);
        const ConductanceField shifted = field.shifted(b.classes[c]);
        const auto& E = t[0];
        t[0].for_each_index([&](int i, int j, int l) {
            const Point3 anchor{-i, -j, -l};
            for (int kind = 1; kind <= 3; ++kind) {
                const Rational& v = t[kind].coeff(i, j, l);
                if (v < 0 || v > 1) rep.ranges = false;
                const int along = kind == 1 ? i : kind == 2 ? j : l;
                Rational expect = 0;
                if (along > 0) {
                    const Point3 step = kind == 1 ? e_i : kind == 2 ? e_j : e_k;
                    const Point3 up = anchor + step;
                    const ShuffleWeights w = shifted.weights(up);
                    const Rational factor = kind == 1 ? w.V + w.W : kind == 2 ? w.U + w.W : w.U + w.V;
                    expect = t[kind].coeff(-up.i, -up.j, -up.k) + factor * E.coeff(-up.i, -up.j, -up.k);
                }
                if (v != expect) {
                    rep.recursion = false;
                    if (rep.failures.size() < 20)
                        rep.failures.push_back(std::string("recursion for ") + kind_name(static_cast<GfKind>(kind)) +
                                               " fails at " + anchor.str() + " in class " + b.classes[c].str());
                }
            }
            const Rational& e = E.coeff(i, j, l);
            if (e < -2 || e > 1) rep.ranges = false;
            if (e < 0) ++rep.negative_rates;
            if (e < rep.min_rate) rep.min_rate = e;
        });
    }
    if (!rep.ranges) rep.failures.push_back("a probability lies outside [0, 1] or a rate outside [-2, 1]");
    return rep;
}

}  // namespace groves
