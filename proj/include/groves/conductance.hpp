#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "groves/lattice.hpp"
#include "groves/rational.hpp"

namespace groves {

inline int floor_mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

// One positive value per edge class of the torus T_{m,n}, indexed by (axis, p, q).
struct TorusConductance {
    int m = 1, n = 1;
    std::vector<Rational> values;

    TorusConductance() : values(3, Rational(1)) {}
    TorusConductance(int m_, int n_, std::vector<Rational> v) : m(m_), n(n_), values(std::move(v)) { validate(); }

    static TorusConductance uniform(int m, int n, const Rational& value = 1) {
        return TorusConductance(m, n, std::vector<Rational>(static_cast<std::size_t>(3 * m * n), value));
    }

    std::size_t slot(Axis q, int p, int r) const { return static_cast<std::size_t>((index(q) * m + p) * n + r); }
    const Rational& at(Axis q, int p, int r) const { return values[slot(q, p, r)]; }
    Rational& at(Axis q, int p, int r) { return values[slot(q, p, r)]; }

    void validate() const {
        if (m < 1 || n < 1) throw InvalidArgument("torus dimensions must be positive");
        if (values.size() != static_cast<std::size_t>(3 * m * n))
            throw InvalidArgument("torus table must hold 3*m*n values");
        for (const auto& v : values)
            if (v <= 0) throw InvalidArgument("conductances must be positive");
    }

    friend bool operator==(const TorusConductance&, const TorusConductance&) = default;
};

// Edge labels. "laplacian-derived-v1" names the T_{1,2} classes so that the vector-bundle
// Laplacian reads a+b+d+e+f(2-z-1/z) on the diagonal; "-mirror" is its reflection i <-> j;
// "grid-v1" names every class explicitly as "<axis>:<p>:<q>".
inline std::vector<std::string> labels_for(int m, int n, const std::string& labeling) {
    if (labeling == "grid-v1") {
        std::vector<std::string> out;
        for (Axis q : kAxes)
            for (int p = 0; p < m; ++p)
                for (int r = 0; r < n; ++r)
                    out.push_back(std::string(1, name(q)) + ":" + std::to_string(p) + ":" + std::to_string(r));
        return out;
    }
    if (labeling == "laplacian-derived-v1" || labeling == "laplacian-derived-v1-mirror") {
        if (m == 1 && n == 1) return {"a", "b", "c"};
        if (m == 1 && n == 2) return {"a", "b", "c", "d", "e", "f"};
        throw InvalidArgument("labeling " + labeling + " covers T_{1,1} and T_{1,2} only");
    }
    throw InvalidArgument("unknown labeling \"" + labeling + "\"");
}

// Label of every torus slot, in TorusConductance order.
inline std::vector<std::string> slot_labels(int m, int n, const std::string& labeling) {
    auto names = labels_for(m, n, labeling);
    if (labeling == "grid-v1") return names;
    const bool mirror = labeling == "laplacian-derived-v1-mirror";
    const std::string a = mirror ? "b" : "a", b = mirror ? "a" : "b";
    if (n == 1) return {a, b, "c"};
    const std::string d = mirror ? "e" : "d", e = mirror ? "d" : "e";
    // q = 0 is the torus vertex carrying the horizontal class f, q = 1 the one carrying c.
    return {d, a, e, b, "f", "c"};
}

inline TorusConductance torus_from_labels(int m, int n, const std::map<std::string, Rational>& edges,
                                          const std::string& labeling) {
    const auto names = labels_for(m, n, labeling);
    for (const auto& [k, v] : edges)
        if (std::find(names.begin(), names.end(), k) == names.end())
            throw InvalidArgument("unexpected edge label \"" + k + "\" for labeling " + labeling);
    std::vector<Rational> values;
    for (const auto& label : slot_labels(m, n, labeling)) {
        auto it = edges.find(label);
        if (it == edges.end()) throw InvalidArgument("missing edge label \"" + label + "\"");
        if (it->second <= 0) throw InvalidArgument("edge \"" + label + "\" must be positive");
        values.push_back(it->second);
    }
    return TorusConductance(m, n, std::move(values));
}

// Long-diagonal conductances whose diagonals lie in the plane i+j+k = plane, stored on the
// torus quotient with the same (axis, p, q) indexing as TorusConductance.
struct YDeltaLayer {
    int m = 1, n = 1, plane = -1;
    std::vector<Rational> values;

    // Torus position of the base point of the long diagonal of r_q(anchor).
    std::size_t slot_of(Axis q, const Point3& anchor) const {
        const Point3 x = anchor - (q == Axis::b ? e_i : e_j);
        const int p = floor_mod(-x.i, m), r = floor_mod(plane - x.k, n);
        return static_cast<std::size_t>((index(q) * m + p) * n + r);
    }
    const Rational& at(Axis q, const Point3& anchor) const { return values[slot_of(q, anchor)]; }
};

// Upper conductances at cube top c give sigma = C_a C_b + C_a C_c + C_b C_c.
inline Rational sigma_of(const Rational& ca, const Rational& cb, const Rational& cc) {
    return ca * cb + ca * cc + cb * cc;
}

// One Y-Delta move for every cube whose upper rhombi lie on layer.plane: the lower rhombus
// of axis q gets long conductance C_q / sigma (reciprocal of its short diagonal).
inline YDeltaLayer ydelta_layer_step(const YDeltaLayer& layer) {
    for (const auto& v : layer.values)
        if (v <= 0) throw InvalidArgument("Y-Delta step needs positive conductances");
    YDeltaLayer next{layer.m, layer.n, layer.plane - 1, std::vector<Rational>(layer.values.size())};
    for (Axis q : kAxes)
        for (int p = 0; p < layer.m; ++p)
            for (int r = 0; r < layer.n; ++r) {
                Point3 x{-p, 0, next.plane - r};
                x.j = next.plane - x.i - x.k;
                const Point3 anchor = x + (q == Axis::b ? e_i : e_j);
                const Point3 cube = anchor + unit(q);
                const Rational& ca = layer.at(Axis::a, cube);
                const Rational& cb = layer.at(Axis::b, cube);
                const Rational& cc = layer.at(Axis::c, cube);
                const Rational& cq = q == Axis::a ? ca : q == Axis::b ? cb : cc;
                next.values[next.slot_of(q, anchor)] = cq / sigma_of(ca, cb, cc);
            }
    return next;
}

struct ShuffleWeights {
    Rational U, V, W, delta;
};

// The torus conductance placed on plane -1 and pushed down by Y-Delta moves. Layers are
// computed on demand and shared between copies; `shifted` views read C^mu(p) = C(p + mu).
class ConductanceField {
public:
    explicit ConductanceField(TorusConductance base) : state_(std::make_shared<State>()) {
        base.validate();
        state_->base = base;
        state_->layers.push_back(YDeltaLayer{base.m, base.n, -1, base.values});
    }

    const TorusConductance& base() const { return state_->base; }
    int m() const { return state_->base.m; }
    int n() const { return state_->base.n; }
    const Point3& offset() const { return offset_; }

    ConductanceField shifted(const Point3& mu) const {
        ConductanceField f = *this;
        f.offset_ = offset_ + mu;
        return f;
    }

    const YDeltaLayer& layer(int plane) const {
        if (plane > -1) throw DomainError("no conductance layer above plane -1");
        std::lock_guard lock(state_->mutex);
        auto& layers = state_->layers;
        while (layers.back().plane > plane) layers.push_back(ydelta_layer_step(layers.back()));
        return layers[static_cast<std::size_t>(-1 - plane)];
    }

    // Long-diagonal conductance C_q at the given anchor (offset applied).
    Rational C(Axis q, const Point3& anchor) const {
        const Point3 a = anchor + offset_;
        if (a.level() > 0) throw DomainError("conductance requested above the base layer at " + a.str());
        return layer(a.level() - 1).at(q, a);
    }

    // Weights of the shuffle at the cube with top vertex `cube`, read off the lower rhombi.
    ShuffleWeights weights(const Point3& cube) const {
        const Rational a = C(Axis::a, cube - e_i), b = C(Axis::b, cube - e_j), c = C(Axis::c, cube - e_k);
        ShuffleWeights w;
        w.delta = b * c + a * c + a * b;
        w.U = b * c / w.delta;
        w.V = a * c / w.delta;
        w.W = a * b / w.delta;
        return w;
    }

    // sigma from the upper rhombi of the cube; on a consistent field delta = 1 / sigma.
    Rational sigma(const Point3& cube) const {
        return sigma_of(C(Axis::a, cube), C(Axis::b, cube), C(Axis::c, cube));
    }

    // A new field in which layer `plane` (and everything it generates below) is scaled by lambda.
    ConductanceField with_scaled_layer(int plane, const Rational& lambda) const {
        ConductanceField out(base());
        layer(plane);
        std::lock_guard lock(state_->mutex);
        out.state_->layers.clear();
        for (const auto& l : state_->layers) {
            if (l.plane < plane) break;
            out.state_->layers.push_back(l);
        }
        for (auto& v : out.state_->layers.back().values) v *= lambda;
        out.offset_ = offset_;
        return out;
    }

private:
    struct State {
        TorusConductance base;
        std::mutex mutex;
        std::deque<YDeltaLayer> layers;
    };
    std::shared_ptr<State> state_;
    Point3 offset_{};
};

// Representative of mu modulo the lattice spanned by (-N,0,0), (-m,m,0), (0,n,-n),
// chosen with k in (-n,0], then j in (-m,0], then i in (-N,0].
struct ClassIndex {
    Point3 rep;
    int N = 1, m = 1, n = 1;
    friend bool operator==(const ClassIndex&, const ClassIndex&) = default;
};

inline ClassIndex class_of(const Point3& mu, int N, int m, int n) {
    if (N < 1 || m < 1 || n < 1) throw InvalidArgument("class parameters must be positive");
    Point3 p = mu;
    const int kr = -floor_mod(-p.k, n);
    p.j += (p.k - kr);  // add ((k - kr)/n) * (0, n, -n)
    p.k = kr;
    const int jr = -floor_mod(-p.j, m);
    p.i -= (jr - p.j);  // add ((jr - j)/m) * (-m, m, 0)
    p.j = jr;
    p.i = -floor_mod(-p.i, N);
    return {p, N, m, n};
}

// Canonical representatives in decreasing lexicographic order.
inline std::vector<Point3> class_representatives(int N, int m, int n) {
    std::vector<Point3> out;
    for (int i = 0; i > -N; --i)
        for (int j = 0; j > -m; --j)
            for (int k = 0; k > -n; --k) out.push_back({i, j, k});
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

struct PeriodicityReport {
    bool periodic = true;
    std::optional<Point3> failing_anchor;
    std::string failing_generator;
    // Ratio between layer -1-N and layer -1 (matched through the shift), when it is the same
    // for every edge class.
    std::optional<Rational> lambda;
};

// Compares shuffle weights at every cube of a depth-deep sweep with the weights at its
// translates by the three class generators.
inline PeriodicityReport check_T_periodicity(const ConductanceField& field, int N, int depth) {
    if (N < 1) throw InvalidArgument("period N must be positive");
    PeriodicityReport report;
    const int m = field.m(), n = field.n();
    const std::pair<Point3, const char*> gens[] = {
        {{-N, 0, 0}, "(-N,0,0)"}, {{-m, m, 0}, "(-m,m,0)"}, {{0, n, -n}, "(0,n,-n)"}};
    for (const auto& mu : octant_points(-depth, 0)) {
        const ShuffleWeights w = field.weights(mu);
        for (const auto& [g, label] : gens) {
            const ShuffleWeights s = field.weights(mu + g);
            if (s.U != w.U || s.V != w.V || s.W != w.W) {
                report.periodic = false;
                report.failing_anchor = mu;
                report.failing_generator = label;
                return report;
            }
        }
    }
    std::optional<Rational> ratio;
    for (Axis q : kAxes)
        for (int p = 0; p < m; ++p)
            for (int r = 0; r < n; ++r) {
                const Point3 anchor{-p, p + r, -r};
                const Rational t = field.C(q, anchor + Point3{-N, 0, 0}) / field.C(q, anchor);
                if (ratio && *ratio != t) return report;
                ratio = t;
            }
    report.lambda = ratio;
    return report;
}

}  // namespace groves
