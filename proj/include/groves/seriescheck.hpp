#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "groves/arctic.hpp"
#include "groves/config.hpp"
#include "groves/genfun.hpp"
#include "groves/recurrence.hpp"
#include "groves/shuffle.hpp"
#include "groves/spectral.hpp"

namespace groves {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::optional<double> sigma;  // worst deviation in standard errors, statistical checks only
    std::size_t samples = 0;
    double threshold = 0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    void add(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(detail), std::nullopt, 0, 0});
    }

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }

    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
    }

    void append(const ValidationReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

    nlohmann::json to_json() const {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}};
            if (c.sigma) {
                j["sigma"] = *c.sigma;
                j["samples"] = c.samples;
                j["threshold"] = c.threshold;
            }
            out.push_back(j);
        }
        return out;
    }
};

// Coefficient tables of E, p, q, r for the class of the origin: entry (i, j, k) belongs to the
// anchor (-i, -j, -k).
struct SeriesTables {
    int depth = 0;
    std::array<TruncSeries3, 4> t{TruncSeries3(0), TruncSeries3(0), TruncSeries3(0), TruncSeries3(0)};

    const TruncSeries3& table(GfKind k) const { return t[static_cast<std::size_t>(k)]; }

    Rational coefficient(GfKind k, const Point3& anchor) const {
        if (!anchor.in_octant() || -anchor.level() > depth)
            throw DomainError("anchor " + anchor.str() + " is beyond the series depth " + std::to_string(depth));
        return table(k).coeff(-anchor.i, -anchor.j, -anchor.k);
    }

    Rational probability(const Rhombus& r) const { return coefficient(static_cast<GfKind>(1 + index(r.axis)), r.anchor); }
    Rational rate(const Point3& v) const { return coefficient(GfKind::F, v); }
};

inline SeriesTables origin_tables(const SystemBundle& b, const SolvedSystem& s, int depth) {
    SeriesTables out;
    out.depth = depth;
    const std::size_t c = b.index_of({0, 0, 0});
    for (GfKind k : kGfKinds) out.t[static_cast<std::size_t>(k)] = extract_coefficients(s.function(k, c), depth);
    return out;
}

// Vertices of I whose three rhombi all lie in I: exactly where E = 1 - p - q - r is observable.
inline std::vector<Point3> rate_vertices(const InitialConditions& I) {
    std::vector<Point3> out;
    for (const auto& v : boundary_window(I)) {
        bool all = true;
        for (Axis q : kAxes) all = all && I.contains(Rhombus{q, v});
        if (all) out.push_back(v);
    }
    return out;
}

// Monte Carlo probes on I(n): for a fixed set of directions, the interior rhombus of each axis
// and the rate vertex closest to (n - 1) times the direction.
struct ProbeSet {
    std::vector<Rhombus> rhombi;
    std::vector<Point3> vertices;
};

inline ProbeSet monte_carlo_probes(int n) {
    static const double directions[7][3] = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.25, 0.25}, {0.25, 0.5, 0.25},
                                            {0.25, 0.25, 0.5},           {4.0 / 6, 1.0 / 6, 1.0 / 6},
                                            {1.0 / 6, 4.0 / 6, 1.0 / 6}, {1.0 / 6, 1.0 / 6, 4.0 / 6}};
    const auto I = standard_initial_conditions(n);
    const auto rhombi = rhombi_of(I, -n - 4);
    const auto vertices = rate_vertices(I);
    auto dist = [&](const Point3& p, const double* d) {
        return std::fabs(p.i + (n - 1) * d[0]) + std::fabs(p.j + (n - 1) * d[1]) + std::fabs(p.k + (n - 1) * d[2]);
    };
    ProbeSet out;
    for (const auto& d : directions) {
        for (Axis q : kAxes) {
            std::optional<Rhombus> best;
            for (const auto& r : rhombi)
                if (r.axis == q && r.anchor.i < 0 && r.anchor.j < 0 && r.anchor.k < 0 &&
                    (!best || dist(r.anchor, d) < dist(best->anchor, d)))
                    best = r;
            if (best && std::find(out.rhombi.begin(), out.rhombi.end(), *best) == out.rhombi.end())
                out.rhombi.push_back(*best);
        }
        std::optional<Point3> best;
        for (const auto& v : vertices)
            if (!best || dist(v, d) < dist(*best, d)) best = v;
        if (best && std::find(out.vertices.begin(), out.vertices.end(), *best) == out.vertices.end())
            out.vertices.push_back(*best);
    }
    return out;
}

struct CrosscheckOptions {
    int n_enum = 3;
    int n_mc = 30;
    std::size_t samples = 0;  // 0 skips the Monte Carlo part
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double max_sigma = 4;
    int depth = 0;  // series depth; raised to what the probes need
};

inline int required_depth(const CrosscheckOptions& o) {
    return std::max({o.depth, o.n_enum + 4, o.samples ? o.n_mc + 4 : 0});
}

// (a) enumerated edge probabilities and rates against series coefficients on I(1..n_enum);
// (b) Monte Carlo frequencies on I(n_mc) against series values, within max_sigma standard errors;
// (c) dual-number derivatives of g_{0,0,0} against the series rates.
inline ValidationReport crosscheck_probabilities(const ConductanceField& field, const SeriesTables& series,
                                                 const CrosscheckOptions& o) {
    if (o.n_enum < 1 || o.n_enum > 4) throw InvalidArgument("enumeration order must lie in 1..4");
    ValidationReport rep;
    std::size_t edges = 0, rates = 0, derivs = 0;
    std::string edge_bad, rate_bad, deriv_bad;
    for (int n = 1; n <= o.n_enum; ++n) {
        const auto set = enumerate_groves(field, n);
        for (const auto& r : rhombi_of(set.ic, -n - 4)) {
            ++edges;
            const Rational e = edge_probability(set, r), s = series.probability(r);
            if (e != s && edge_bad.empty())
                edge_bad = r.str() + " on I(" + std::to_string(n) + "): " + to_string(e) + " vs " + to_string(s);
        }
        for (const auto& v : rate_vertices(set.ic)) {
            ++rates;
            ++derivs;
            const Rational e = creation_rate(set, v), s = series.rate(v);
            if (e != s && rate_bad.empty())
                rate_bad = v.str() + " on I(" + std::to_string(n) + "): " + to_string(e) + " vs " + to_string(s);
            const Rational d = creation_rate_by_derivative(field, set.ic, v);
            if (d != s && deriv_bad.empty())
                deriv_bad = v.str() + " on I(" + std::to_string(n) + "): " + to_string(d) + " vs " + to_string(s);
        }
    }
    const std::string upto = "I(1.." + std::to_string(o.n_enum) + ")";
    rep.add("enumerated edge probabilities equal series", edge_bad.empty(),
            edge_bad.empty() ? std::to_string(edges) + " rhombi of " + upto : edge_bad);
    rep.add("enumerated creation rates equal series", rate_bad.empty(),
            rate_bad.empty() ? std::to_string(rates) + " vertices of " + upto : rate_bad);
    rep.add("derivative of g000 equals series rate", deriv_bad.empty(),
            deriv_bad.empty() ? std::to_string(derivs) + " vertices of " + upto : deriv_bad);

    if (o.samples == 0) return rep;
    const ProbeSet probes = monte_carlo_probes(o.n_mc);
    const GroveSampler sampler(field, o.n_mc);
    const auto& ic = sampler.initial_conditions();
    struct Acc {
        std::vector<std::uint64_t> hits;
        std::vector<double> sum, sum2;
    };
    auto degree = [&](const std::vector<std::uint8_t>& flags, const Point3& v) {
        int d = 0;
        for (const auto& r : incident_rhombi(v)) {
            if (!ic.contains(r)) continue;
            const auto diag = sampler.is_long(flags, r) ? r.long_diagonal() : r.short_diagonal();
            if (diag[0] == v || diag[1] == v) ++d;
        }
        return d;
    };
    const auto parts = sample_batch<Acc>(
        sampler, o.seed, o.samples, o.threads,
        [&] {
            return Acc{std::vector<std::uint64_t>(probes.rhombi.size()), std::vector<double>(probes.vertices.size()),
                       std::vector<double>(probes.vertices.size())};
        },
        [&](Acc& acc, const std::vector<std::uint8_t>& flags) {
            for (std::size_t t = 0; t < probes.rhombi.size(); ++t) acc.hits[t] += sampler.is_long(flags, probes.rhombi[t]);
            for (std::size_t t = 0; t < probes.vertices.size(); ++t) {
                const double e = degree(flags, probes.vertices[t]) - 2;
                acc.sum[t] += e;
                acc.sum2[t] += e * e;
            }
        });
    const double N = static_cast<double>(o.samples);
    double worst = 0;
    std::string where;
    auto note = [&](double z, const std::string& what) {
        if (z > worst) worst = z, where = what;
    };
    for (std::size_t t = 0; t < probes.rhombi.size(); ++t) {
        std::uint64_t hits = 0;
        for (const auto& a : parts) hits += a.hits[t];
        const double p = series.probability(probes.rhombi[t]).get_d(), f = static_cast<double>(hits) / N;
        const double se = std::sqrt(p * (1 - p) / N);
        const double z = se > 0 ? std::fabs(f - p) / se : (f == p ? 0 : INFINITY);
        std::ostringstream s;
        s << probes.rhombi[t].str() << " freq " << f << " exact " << p;
        note(z, s.str());
    }
    for (std::size_t t = 0; t < probes.vertices.size(); ++t) {
        double sum = 0, sum2 = 0;
        for (const auto& a : parts) sum += a.sum[t], sum2 += a.sum2[t];
        const double e = series.rate(probes.vertices[t]).get_d();
        // deg v - 2 is integer valued, so its variance is at least frac(e) (1 - frac(e)); this
        // floor matters in frozen regions where every sample may show the same value.
        const double frac = e - std::floor(e);
        const double mean = sum / N, sample_var = std::max(0.0, sum2 / N - mean * mean) * N / std::max(1.0, N - 1);
        const double se = std::sqrt(std::max(sample_var, frac * (1 - frac)) / N);
        const double z = se > 0 ? std::fabs(mean - e) / se : (std::fabs(mean - e) < 1e-12 ? 0 : INFINITY);
        std::ostringstream s;
        s << "E" << probes.vertices[t].str() << " mean " << mean << " exact " << e;
        note(z, s.str());
    }
    CheckResult mc{"Monte Carlo probes within " + std::to_string(static_cast<int>(o.max_sigma)) + " sigma on I(" +
                       std::to_string(o.n_mc) + ")",
                   worst <= o.max_sigma,
                   std::to_string(probes.rhombi.size()) + " edges and " + std::to_string(probes.vertices.size()) +
                       " rates; worst " + where,
                   worst,
                   o.samples,
                   o.max_sigma};
    rep.checks.push_back(mc);
    return rep;
}

inline ValidationReport crosscheck_probabilities(const ConductanceField& field, int N, const CrosscheckOptions& o,
                                                 const std::optional<std::vector<Point3>>& class_order = {}) {
    const auto bundle = build_system(field, N, class_order);
    const auto solved = solve_system(bundle);
    return crosscheck_probabilities(field, origin_tables(bundle, solved, required_depth(o)), o);
}

// Shuffle law against w(G)/Z and against m_f(G)/f_{0,0,0}, and against the law reached by a
// second removal order.
struct MeasureCheck {
    bool boltzmann = true, cube_recurrence = true, schedule_independent = true;
    bool ok() const { return boltzmann && cube_recurrence && schedule_independent; }
};

inline MeasureCheck check_measures(const ConductanceField& field, int n) {
    MeasureCheck m;
    const auto set = enumerate_groves(field, n);
    const auto z = partition_function(field, n);
    const auto f = f_from_conductance(field, n + 3);
    for (const auto& [longs, p] : set.law) {
        const Grove g = set.grove(longs);
        if (p != grove_weight(field, g) / z.by_sum) m.boltzmann = false;
        if (p != grove_monomial(g, f) / f.at({0, 0, 0})) m.cube_recurrence = false;
    }
    m.schedule_independent = enumerate_groves(field, n, lexicographic_schedule(n)) == set;
    return m;
}

struct SuiteOptions {
    int identity_depth = 10;
    int max_order = 3;
    CrosscheckOptions cross;
    bool arctic = true;
};

// Every module-level invariant on one configuration.
inline ValidationReport run_property_suite(const RunConfig& cfg, const SuiteOptions& o) {
    ValidationReport rep;
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            rep.add(name, false, e.what());
        }
    };
    const ConductanceField field = cfg.field();

    guarded("periodicity", [&] {
        const auto p = check_T_periodicity(field, cfg.N, 2 * cfg.N + 4);
        rep.add("periodicity with N = " + std::to_string(cfg.N), p.periodic,
                p.lambda ? "scale " + to_string(*p.lambda) : "no scale");
    });
    guarded("shuffle weights", [&] {
        bool ok = true;
        for (const auto& c : octant_points(-6, 0)) {
            const auto w = field.weights(c);
            ok = ok && w.U + w.V + w.W == 1 && w.U > 0 && w.V > 0 && w.W > 0;
        }
        rep.add("U + V + W = 1 on a depth-6 sweep", ok);
    });
    guarded("partition function", [&] {
        std::string detail;
        for (int n = 1; n <= o.max_order; ++n) detail += (n > 1 ? ", " : "") + to_string(partition_function(field, n).by_sum);
        rep.add("Z by product equals Z by sum for n <= " + std::to_string(o.max_order), true, "Z = " + detail);
    });
    guarded("measures", [&] {
        MeasureCheck all;
        for (int n = 1; n <= o.max_order; ++n) {
            const auto m = check_measures(field, n);
            all.boltzmann = all.boltzmann && m.boltzmann;
            all.cube_recurrence = all.cube_recurrence && m.cube_recurrence;
            all.schedule_independent = all.schedule_independent && m.schedule_independent;
        }
        rep.add("shuffle law equals w(G)/Z", all.boltzmann);
        rep.add("shuffle law equals m_f(G)/f000", all.cube_recurrence);
        rep.add("shuffle law is schedule independent", all.schedule_independent);
    });
    guarded("grove expansion", [&] {
        bool ok = true;
        for (int n = 1; n <= o.max_order; ++n) ok = ok && verify_grove_expansion(field, n, 3, 7);
        rep.add("weighted recurrence equals grove expansion at random boundaries", ok);
    });
    guarded("generating functions", [&] {
        const auto bundle = build_system(field, cfg.N, cfg.class_order);
        const auto solved = solve_system(bundle);
        const std::size_t size = bundle.classes.size();
        bool identity = true;
        for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = 0; c < size; ++c)
                if (bundle.A[r][c].evaluate({0, 0, 0}) != (r == c ? 1 : 0)) identity = false;
        const bool singular = solved.Q.evaluate({1, 1, 1}) == 0;
        rep.add("A(0,0,0) is the identity", identity);
        rep.add("det A vanishes at (1,1,1)", singular);
        const auto id = verify_identities(bundle, solved, field, o.identity_depth);
        rep.add("F + G_p + G_q + G_r = 1/((1-x)(1-y)(1-z)) per class", id.sum_identity);
        rep.add("edge-probability recursion to degree " + std::to_string(o.identity_depth), id.recursion,
                id.failures.empty() ? "" : id.failures.front());
        rep.add("probabilities in [0, 1], rates in [-2, 1]", id.ranges,
                std::to_string(id.negative_rates) + " negative rates, least " + to_string(id.min_rate));
        const auto tables = origin_tables(bundle, solved, required_depth(o.cross));
        rep.append(crosscheck_probabilities(field, tables, o.cross));
        if (o.arctic) {
            const std::size_t c0 = bundle.index_of({0, 0, 0});
            const auto Qt = homogeneous_part_at(solved.Q);
            const auto Pt = homogeneous_part_at(solved.numerator(GfKind::p, c0));
            rep.add("homogeneous parts at (1,1,1)", Qt.degree >= 2,
                    "deg Q~ = " + std::to_string(Qt.degree) + ", deg P~_p = " + std::to_string(Pt.degree));
            const auto dual = dual_curve(Qt);
            const auto slice = arctic_slice(dual.dual, 400);
            rep.add("dual curve and arctic slice", slice.components() > 0,
                    "dual degree " + std::to_string(dual.dual.degree) + ", " + std::to_string(slice.components()) +
                        " real components in the triangle");
        }
    });
    guarded("laplacian", [&] {
        const PolyQ P = char_poly(laplacian(cfg.torus()));
        rep.add("P(1,1) = 0", P.evaluate({1, 1}) == 0);
        const auto poly = newton_polygon(P);
        auto v = poly.vertices;
        std::sort(v.begin(), v.end());
        rep.add("Newton polygon is the centrally symmetric hexagon",
                poly.centrally_symmetric() && v == expected_hexagon(cfg.m, cfg.n));
    });
    return rep;
}

}  // namespace groves
