#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "groves/conductance.hpp"
#include "groves/lattice.hpp"
#include "groves/recurrence.hpp"
#include "groves/rng.hpp"

namespace groves {

// The twelve rhombi that can contain v: for each axis, v as top, as bottom, and as either end
// of the long diagonal.
inline std::array<Rhombus, 12> incident_rhombi(const Point3& v) {
    std::array<Rhombus, 12> out;
    std::size_t t = 0;
    for (Axis q : kAxes) {
        const auto [u, w] = Rhombus{q, {}}.others();
        out[t++] = {q, v};
        out[t++] = {q, v + u + w};
        out[t++] = {q, v + u};
        out[t++] = {q, v + w};
    }
    return out;
}

// A grove on I, stored by its long diagonals; every other rhombus of I shows its short one.
struct Grove {
    InitialConditions ic;
    std::vector<Rhombus> long_rhombi;  // sorted

    bool is_long(const Rhombus& r) const { return std::binary_search(long_rhombi.begin(), long_rhombi.end(), r); }

    int degree(const Point3& v) const {
        int d = 0;
        for (const auto& r : incident_rhombi(v)) {
            if (!ic.contains(r)) continue;
            const auto diag = is_long(r) ? r.long_diagonal() : r.short_diagonal();
            d += (diag[0] == v || diag[1] == v);
        }
        return d;
    }

    // Vertices that can have degree other than two: the points of I near the removed cubes.
    std::vector<Point3> active_vertices() const {
        std::vector<Point3> out;
        for (const auto& p : octant_points(ic.min_removed_level() - 4, 0))
            if (ic.in_I(p)) out.push_back(p);
        return out;
    }

    std::vector<std::array<Point3, 2>> long_edges() const {
        std::vector<std::array<Point3, 2>> out;
        for (const auto& r : long_rhombi) out.push_back(r.long_diagonal());
        return out;
    }

    friend bool operator==(const Grove&, const Grove&) = default;
};

// The grove on {max(i,j,k) = 0}: every rhombus shows its short diagonal.
inline Grove base_grove() { return Grove{}; }

// Long flags of the three lower rhombi r_a(c-e_i), r_b(c-e_j), r_c(c-e_k) given the flags of
// the upper rhombi r_a(c), r_b(c), r_c(c). With no upper long diagonal the outcome picks the
// one lower rhombus left short: 0 -> a (weight U), 1 -> b (V), 2 -> c (W).
inline std::array<bool, 3> lower_configuration(const std::array<bool, 3>& upper, int outcome) {
    const int count = upper[0] + upper[1] + upper[2];
    switch (count) {
        case 0: return {outcome != 0, outcome != 1, outcome != 2};
        case 1: return upper;
        case 2: return {false, false, false};
        default: throw ConsistencyError("three long diagonals meet at a cube top");
    }
}

inline bool needs_draw(const std::array<bool, 3>& upper) { return !upper[0] && !upper[1] && !upper[2]; }

namespace detail {

inline Grove apply_move(const Grove& g, const Point3& cube, const std::array<bool, 3>& lower) {
    Grove out;
    out.ic = g.ic.with_cube(cube);
    for (const auto& r : g.long_rhombi)
        if (r.anchor != cube) out.long_rhombi.push_back(r);
    for (Axis q : kAxes)
        if (lower[index(q)]) out.long_rhombi.push_back({q, cube - unit(q)});
    std::sort(out.long_rhombi.begin(), out.long_rhombi.end());
    return out;
}

inline std::array<bool, 3> upper_flags(const Grove& g, const Point3& cube) {
    if (!is_addable(g.ic, cube)) throw ScheduleError("cube " + cube.str() + " is not addable");
    return {g.is_long({Axis::a, cube}), g.is_long({Axis::b, cube}), g.is_long({Axis::c, cube})};
}

}  // namespace detail

// One grove shuffle at `cube`, drawing from rng only when the outcome is random.
inline Grove shuffle_cube(const Grove& g, const Point3& cube, const ShuffleWeights& w, RngStream& rng) {
    const auto upper = detail::upper_flags(g, cube);
    const int outcome = needs_draw(upper) ? ThreeWayDraw(w.U, w.V)(rng) : 0;
    return detail::apply_move(g, cube, lower_configuration(upper, outcome));
}

// Every outcome of one shuffle with its probability.
inline std::vector<std::pair<Grove, Rational>> shuffle_branches(const Grove& g, const Point3& cube,
                                                                const ShuffleWeights& w) {
    const auto upper = detail::upper_flags(g, cube);
    if (!needs_draw(upper)) return {{detail::apply_move(g, cube, lower_configuration(upper, 0)), Rational(1)}};
    const Rational p[3] = {w.U, w.V, w.W};
    std::vector<std::pair<Grove, Rational>> out;
    for (int o = 0; o < 3; ++o) out.emplace_back(detail::apply_move(g, cube, lower_configuration(upper, o)), p[o]);
    return out;
}

inline std::vector<Point3> schedule_or_default(int n, const std::optional<std::vector<Point3>>& schedule) {
    if (n < 1) throw InvalidArgument("order n must be positive");
    std::vector<Point3> s = schedule ? *schedule : level_major_schedule(n);
    validate_schedule(s);
    InitialConditions target = standard_initial_conditions(n);
    InitialConditions reached(s);
    if (!(reached == target)) throw ScheduleError("schedule does not end at the standard initial conditions");
    return s;
}

// Boltzmann weight: product of C_q over the long diagonals.
inline Rational grove_weight(const ConductanceField& field, const Grove& g) {
    Rational w = 1;
    for (const auto& r : g.long_rhombi) w *= field.C(r.axis, r.anchor);
    return w;
}

// prod over active vertices of g_v^(deg v - 2).
template <class T>
T grove_monomial(const Grove& g, const LatticeFunctionT<T>& values) {
    T m = T(1);
    for (const auto& v : g.active_vertices()) {
        const int d = g.degree(v) - 2;
        for (int t = 0; t < d; ++t) m = m * values.at(v);
        for (int t = 0; t > d; --t) m = T(1) / values.at(v) * m;
    }
    return m;
}

// Exact law of the shuffle on I(n): each reachable grove with its probability.
struct WeightedGroveSet {
    InitialConditions ic;
    std::map<std::vector<Rhombus>, Rational> law;

    Grove grove(const std::vector<Rhombus>& long_rhombi) const { return Grove{ic, long_rhombi}; }

    Rational total() const {
        Rational t = 0;
        for (const auto& [g, p] : law) t += p;
        return t;
    }

    friend bool operator==(const WeightedGroveSet&, const WeightedGroveSet&) = default;
};

inline constexpr int kMaxEnumerationOrder = 5;
inline constexpr std::size_t kMaxEnumerationStates = 2'000'000;

// Expands every branch of the shuffle tree, merging identical groves after each cube.
inline WeightedGroveSet enumerate_groves(const ConductanceField& field, int n,
                                         const std::optional<std::vector<Point3>>& schedule = {}) {
    if (n > kMaxEnumerationOrder)
        throw ResourceGuard("exhaustive enumeration is limited to order " + std::to_string(kMaxEnumerationOrder));
    const auto cubes = schedule_or_default(n, schedule);
    InitialConditions ic;
    std::map<std::vector<Rhombus>, Rational> law{{{}, Rational(1)}};
    for (const auto& c : cubes) {
        const ShuffleWeights w = field.weights(c);
        std::map<std::vector<Rhombus>, Rational> next;
        for (const auto& [longs, p] : law)
            for (auto& [g, q] : shuffle_branches(Grove{ic, longs}, c, w)) next[std::move(g.long_rhombi)] += p * q;
        if (next.size() > kMaxEnumerationStates) throw ResourceGuard("shuffle tree exceeds the state budget");
        law = std::move(next);
        ic = ic.with_cube(c);
    }
    return {ic, std::move(law)};
}

struct PartitionCheck {
    Rational by_product, by_sum;
};

// Z as the product of delta over the shuffled cubes and as the total Boltzmann weight.
inline PartitionCheck partition_function(const ConductanceField& field, int n) {
    PartitionCheck z{1, 0};
    for (const auto& c : level_major_schedule(n)) z.by_product *= field.weights(c).delta;
    const auto set = enumerate_groves(field, n);
    for (const auto& [longs, p] : set.law) z.by_sum += grove_weight(field, set.grove(longs));
    if (z.by_product != z.by_sum)
        throw ConsistencyError("partition function mismatch: " + to_string(z.by_product) + " vs " + to_string(z.by_sum));
    return z;
}

inline Rational edge_probability(const WeightedGroveSet& set, const Rhombus& r) {
    if (!set.ic.contains(r)) throw InvalidArgument(r.str() + " is not a rhombus of the initial conditions");
    Rational p = 0;
    for (const auto& [longs, q] : set.law)
        if (std::binary_search(longs.begin(), longs.end(), r)) p += q;
    return p;
}

inline Rational edge_probability_bruteforce(const ConductanceField& field, const Rhombus& r, int n) {
    return edge_probability(enumerate_groves(field, n), r);
}

// Expected exponent of g_v: sum over groves of P(G) (deg v - 2).
inline Rational creation_rate(const WeightedGroveSet& set, const Point3& v) {
    if (!set.ic.in_I(v)) throw InvalidArgument(v.str() + " is not in the initial conditions");
    Rational e = 0;
    for (const auto& [longs, q] : set.law) e += q * (set.grove(longs).degree(v) - 2);
    return e;
}

// Random positive rationals with small numerators and denominators.
inline Rational random_positive_rational(RngStream& rng) {
    return rat(static_cast<long>(1 + rng.next64() % 9), static_cast<long>(1 + rng.next64() % 7));
}

// g_{0,0,0} from the weighted recurrence against the grove expansion sum P(G) m_g(G), for
// random positive boundary values.
inline bool verify_grove_expansion(const ConductanceField& field, int n, int trials, std::uint64_t seed = 1) {
    const auto set = enumerate_groves(field, n);
    RngStream rng(seed);
    for (int t = 0; t < trials; ++t) {
        LatticeFunction boundary;
        for (const auto& p : boundary_window(set.ic)) boundary.set(p, t == 0 ? Rational(1) : random_positive_rational(rng));
        const Rational lhs = solve_generalized_recurrence(boundary, field, set.ic).at({0, 0, 0});
        Rational rhs = 0;
        for (const auto& [longs, p] : set.law) rhs += p * grove_monomial(set.grove(longs), boundary);
        if (lhs != rhs) return false;
    }
    return true;
}

// Worker count: hardware concurrency, capped by the GROVE_THREADS environment variable.
inline unsigned configured_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GROVE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

// Shuffle sampler for I(n) with the schedule and its thresholds precomputed. Long flags live
// in a dense byte grid over anchors with coordinates in [-n, 0].
class GroveSampler {
public:
    GroveSampler(const ConductanceField& field, int n, const std::optional<std::vector<Point3>>& schedule = {})
        : n_(n), side_(static_cast<std::size_t>(n) + 1) {
        for (const auto& c : schedule_or_default(n, schedule)) {
            const ShuffleWeights w = field.weights(c);
            Step s;
            for (Axis q : kAxes) {
                s.upper[index(q)] = slot(q, c);
                s.lower[index(q)] = slot(q, c - unit(q));
            }
            s.draw = ThreeWayDraw(w.U, w.V);
            steps_.push_back(s);
        }
        ic_ = standard_initial_conditions(n);
    }

    int order() const { return n_; }
    std::size_t grid_size() const { return 3 * side_ * side_ * side_; }
    const InitialConditions& initial_conditions() const { return ic_; }

    bool in_grid(const Point3& p) const {
        const int lim = static_cast<int>(side_) - 1;
        return p.in_octant() && -p.i <= lim && -p.j <= lim && -p.k <= lim;
    }

    std::size_t slot(Axis q, const Point3& p) const {
        if (!in_grid(p)) throw DomainError("anchor " + p.str() + " outside the sampler grid");
        return ((static_cast<std::size_t>(index(q)) * side_ + static_cast<std::size_t>(-p.i)) * side_ +
                static_cast<std::size_t>(-p.j)) *
                   side_ +
               static_cast<std::size_t>(-p.k);
    }

    // Runs the whole schedule into `flags` (resized and cleared here).
    void run(std::uint64_t seed, std::vector<std::uint8_t>& flags) const {
        flags.assign(grid_size(), 0);
        RngStream rng(seed);
        for (const auto& s : steps_) {
            const std::array<bool, 3> upper{flags[s.upper[0]] != 0, flags[s.upper[1]] != 0, flags[s.upper[2]] != 0};
            const int outcome = needs_draw(upper) ? s.draw(rng) : 0;
            const auto lower = lower_configuration(upper, outcome);
            for (int t = 0; t < 3; ++t) {
                flags[s.upper[t]] = 0;
                flags[s.lower[t]] = lower[t];
            }
        }
    }

    bool is_long(const std::vector<std::uint8_t>& flags, const Rhombus& r) const {
        return in_grid(r.anchor) && flags[slot(r.axis, r.anchor)] != 0;
    }

    Grove to_grove(const std::vector<std::uint8_t>& flags) const {
        Grove g{ic_, {}};
        for (Axis q : kAxes)
            for (const auto& p : octant_points(-3 * n_, 0))
                if (in_grid(p) && flags[slot(q, p)]) g.long_rhombi.push_back({q, p});
        std::sort(g.long_rhombi.begin(), g.long_rhombi.end());
        return g;
    }

    Grove sample(std::uint64_t seed) const {
        std::vector<std::uint8_t> flags;
        run(seed, flags);
        return to_grove(flags);
    }

private:
    struct Step {
        std::array<std::size_t, 3> upper{}, lower{};
        ThreeWayDraw draw;
    };
    int n_;
    std::size_t side_;
    std::vector<Step> steps_;
    InitialConditions ic_;
};

inline Grove sample_grove(const ConductanceField& field, int n, std::uint64_t seed) {
    return GroveSampler(field, n).sample(seed);
}

// Seed of the t-th sample of a batch.
inline std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t t) {
    RngStream r(seed ^ (t * 0xD1B54A32D192ED03ULL));
    return r.next64();
}

// Runs `samples` shuffles split across worker threads. Each worker owns an accumulator made by
// make_acc(); visit(acc, flags) sees every sample; accumulators come back in worker order and
// each worker handles a contiguous block of sample indices, so results do not depend on timing.
template <class Acc, class MakeAcc, class Visit>
std::vector<Acc> sample_batch(const GroveSampler& sampler, std::uint64_t seed, std::size_t samples, unsigned threads,
                              MakeAcc&& make_acc, Visit&& visit) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(samples, 1))));
    std::vector<Acc> accs;
    for (unsigned t = 0; t < threads; ++t) accs.push_back(make_acc());
    auto work = [&](unsigned t) {
        std::vector<std::uint8_t> flags;
        const std::size_t lo = samples * t / threads, hi = samples * (t + 1) / threads;
        for (std::size_t s = lo; s < hi; ++s) {
            sampler.run(batch_seed(seed, s), flags);
            visit(accs[t], flags);
        }
    };
    if (threads == 1) {
        work(0);
        return accs;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
    return accs;
}

// Empirical law over groves of I(n) (small n only).
inline std::map<std::vector<Rhombus>, std::uint64_t> sample_histogram(const GroveSampler& sampler, std::uint64_t seed,
                                                                      std::size_t samples, unsigned threads) {
    using Hist = std::map<std::vector<Rhombus>, std::uint64_t>;
    auto parts = sample_batch<Hist>(
        sampler, seed, samples, threads, [] { return Hist{}; },
        [&](Hist& h, const std::vector<std::uint8_t>& flags) { ++h[sampler.to_grove(flags).long_rhombi]; });
    Hist total;
    for (const auto& h : parts)
        for (const auto& [k, v] : h) total[k] += v;
    return total;
}

}  // namespace groves
