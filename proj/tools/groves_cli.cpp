#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "groves/groves.hpp"

namespace {

using namespace groves;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConsistency = 2;
constexpr int kExitUsage = 64;

const std::set<std::string> kCommands{"sample", "enumerate", "genfun", "series", "arctic", "laplacian", "verify", "render"};

const char* kUsage =
    "usage: groves <command> --config PATH [--out PATH] [--order N] [--seed U64] [--depth D]\n"
    "              [--resolution R] [--samples COUNT] [--emit-poly PATH]\n"
    "commands:\n"
    "  sample     shuffle a random grove on I(order); SVG when --out ends in .svg, JSON otherwise\n"
    "  enumerate  exact law of the shuffle on I(order), order <= 5\n"
    "  genfun     class system A and its Cramer solution\n"
    "  series     series coefficients to degree --depth as CSV rows\n"
    "  arctic     dual curve of the homogeneous part and its slice as SVG\n"
    "  laplacian  characteristic polynomial and Newton polygon\n"
    "  verify     run every property check and emit a JSON report\n"
    "  render     grove sample with the arctic curve overlaid\n"
    "GROVE_THREADS caps the worker count.\n";

struct Options {
    std::string config, out, emit_poly;
    int order = 0, depth = 10, resolution = 800;
    std::uint64_t seed = 1;
    std::size_t samples = 0;
};

void write_output(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + o.out);
    f << text;
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

json point_json(const Point3& p) { return json::array({p.i, p.j, p.k}); }

json poly_json(const PolyQ& p, const VarNames& names) {
    return json{{"text", to_text(p, names)}, {"sparse", to_json_sparse<json>(p, static_cast<int>(names.size()))}};
}

json grove_json(const Grove& g, int order, std::uint64_t seed) {
    json edges = json::array();
    for (const auto& r : g.long_rhombi) {
        const auto [p, q] = r.long_diagonal();
        edges.push_back(json{{"axis", std::string(1, name(r.axis))}, {"ends", json::array({point_json(p), point_json(q)})}});
    }
    return json{{"order", order}, {"seed", seed}, {"long_edges", edges}};
}

struct Pipeline {
    SystemBundle bundle;
    SolvedSystem solved;
};

Pipeline solve(const RunConfig& cfg, const ConductanceField& field) {
    Pipeline p{build_system(field, cfg.N, cfg.class_order), {}};
    p.solved = solve_system(p.bundle);
    return p;
}

int cmd_sample(const RunConfig& cfg, const Options& o) {
    const int n = o.order ? o.order : 30;
    const GroveSampler sampler(cfg.field(), n);
    if (o.samples <= 1) {
        const Grove g = sampler.sample(o.seed);
        if (ends_with(o.out, ".svg")) write_output(o, render_svg({&g, nullptr}));
        else write_output(o, grove_json(g, n, o.seed).dump(1) + "\n");
        return kExitOk;
    }
    // Several samples: long-edge frequencies of every rhombus of I(n).
    const auto rhombi = rhombi_of(sampler.initial_conditions(), -n - 4);
    using Counts = std::vector<std::uint64_t>;
    const auto parts = sample_batch<Counts>(
        sampler, o.seed, o.samples, configured_threads(), [&] { return Counts(rhombi.size()); },
        [&](Counts& c, const std::vector<std::uint8_t>& flags) {
            for (std::size_t t = 0; t < rhombi.size(); ++t) c[t] += sampler.is_long(flags, rhombi[t]);
        });
    json rows = json::array();
    for (std::size_t t = 0; t < rhombi.size(); ++t) {
        std::uint64_t hits = 0;
        for (const auto& c : parts) hits += c[t];
        if (hits) rows.push_back(json{{"rhombus", rhombi[t].str()}, {"long", hits}});
    }
    write_output(o, json{{"order", n}, {"seed", o.seed}, {"samples", o.samples}, {"frequencies", rows}}.dump(1) + "\n");
    return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg, const Options& o) {
    const int n = o.order ? o.order : 3;
    const ConductanceField field = cfg.field();
    const auto set = enumerate_groves(field, n);
    const auto z = partition_function(field, n);
    json groves = json::array();
    for (const auto& [longs, p] : set.law) {
        json ls = json::array();
        for (const auto& r : longs) ls.push_back(r.str());
        groves.push_back(json{{"long", ls}, {"probability", to_string(p)},
                              {"weight", to_string(grove_weight(field, set.grove(longs)))}});
    }
    write_output(o, json{{"order", n},
                         {"count", set.law.size()},
                         {"Z_product", to_string(z.by_product)},
                         {"Z_sum", to_string(z.by_sum)},
                         {"groves", groves}}
                            .dump(1) +
                        "\n");
    return kExitOk;
}

int cmd_genfun(const RunConfig& cfg, const Options& o) {
    const auto p = solve(cfg, cfg.field());
    const auto& b = p.bundle;
    json classes = json::array(), matrix = json::array(), rhs = json::object(), numerators = json::object();
    for (const auto& c : b.classes) classes.push_back(point_json(c));
    for (const auto& row : b.A) {
        json r = json::array();
        for (const auto& e : row) r.push_back(to_text(e, kXYZ));
        matrix.push_back(r);
    }
    for (GfKind k : kGfKinds) {
        json w = json::array(), num = json::array();
        for (std::size_t c = 0; c < b.classes.size(); ++c) {
            w.push_back(to_string(b.rhs_weight(k, c)));
            num.push_back(poly_json(p.solved.numerator(k, c), kXYZ));
        }
        rhs[kind_name(k)] = w;
        numerators[kind_name(k)] = num;
    }
    json out{{"m", b.m},
             {"n", b.n},
             {"N", b.N},
             {"classes", classes},
             {"A", matrix},
             {"rhs_weights", rhs},
             {"Q", poly_json(p.solved.Q, kXYZ)},
             {"numerators", numerators},
             {"form", "F = P_E/Q; G_s = t P_s/((1-t) Q) with t = x, y, z for s = p, q, r"}};
    write_output(o, out.dump(1) + "\n");
    return kExitOk;
}

int cmd_series(const RunConfig& cfg, const Options& o) {
    if (o.depth < 0 || o.depth > 60) throw InvalidArgument("--depth must lie in 0..60");
    const auto p = solve(cfg, cfg.field());
    std::ostringstream csv;
    csv << "class,i,j,k,kind,value\n";
    for (std::size_t c = 0; c < p.bundle.classes.size(); ++c) {
        const Point3 mu = p.bundle.classes[c];
        const std::string cls = "\"(" + std::to_string(mu.i) + "," + std::to_string(mu.j) + "," + std::to_string(mu.k) + ")\"";
        for (GfKind k : {GfKind::p, GfKind::q, GfKind::r, GfKind::F}) {
            const auto t = extract_coefficients(p.solved.function(k, c), o.depth);
            t.for_each_index([&](int i, int j, int l) {
                csv << cls << ',' << -i << ',' << -j << ',' << -l << ',' << kind_name(k) << ',' << to_string(t.coeff(i, j, l))
                    << '\n';
            });
        }
    }
    write_output(o, csv.str());
    return kExitOk;
}

int cmd_arctic(const RunConfig& cfg, const Options& o) {
    const auto p = solve(cfg, cfg.field());
    const auto Qt = homogeneous_part_at(p.solved.Q);
    const auto dual = dual_curve(Qt);
    const auto slice = arctic_slice(dual.dual, o.resolution);
    if (!o.emit_poly.empty()) {
        std::ofstream f(o.emit_poly, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + o.emit_poly);
        const std::size_t c0 = p.bundle.index_of({0, 0, 0});
        f << json{{"Q_tilde", poly_json(Qt.poly, kXYZ)},
                  {"P_p_tilde", poly_json(homogeneous_part_at(p.solved.numerator(GfKind::p, c0)).poly, kXYZ)},
                  {"dual", poly_json(dual.dual.poly, kUVW)},
                  {"components", slice.components()}}
                 .dump(1)
          << "\n";
    }
    write_output(o, render_svg({nullptr, &slice}));
    return kExitOk;
}

int cmd_laplacian(const RunConfig& cfg, const Options& o) {
    const auto L = laplacian(cfg.torus());
    const PolyQ P = char_poly(L);
    const auto poly = newton_polygon(P);
    json matrix = json::array(), vertices = json::array();
    for (const auto& row : L) {
        json r = json::array();
        for (const auto& e : row) r.push_back(to_text(e, kZW));
        matrix.push_back(r);
    }
    for (const auto& [a, b] : poly.vertices) vertices.push_back(json::array({a, b}));
    write_output(o, json{{"laplacian", matrix},
                         {"P", poly_json(P, kZW)},
                         {"P_at_1_1", to_string(P.evaluate({1, 1}))},
                         {"newton_polygon", vertices},
                         {"centrally_symmetric", poly.centrally_symmetric()}}
                            .dump(1) +
                        "\n");
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const Options& o) {
    SuiteOptions s;
    s.identity_depth = o.depth;
    s.cross.samples = o.samples;
    s.cross.n_mc = o.order ? o.order : 30;
    s.cross.seed = o.seed;
    s.cross.threads = configured_threads();
    const auto rep = run_property_suite(cfg, s);
    write_output(o, json{{"config", cfg.name}, {"passed", rep.ok()}, {"failures", rep.failures()}, {"checks", rep.to_json()}}
                            .dump(1) +
                        "\n");
    for (const auto& c : rep.checks)
        std::cerr << (c.pass ? "pass  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    return rep.ok() ? kExitOk : kExitConsistency;
}

int cmd_render(const RunConfig& cfg, const Options& o) {
    const int n = o.order ? o.order : 100;
    const ConductanceField field = cfg.field();
    const Grove g = GroveSampler(field, n).sample(o.seed);
    const auto p = solve(cfg, field);
    const auto slice = arctic_slice(dual_curve(homogeneous_part_at(p.solved.Q)).dual, o.resolution);
    write_output(o, render_svg({&g, &slice}));
    return kExitOk;
}

int dispatch(const std::string& command, const RunConfig& cfg, const Options& o) {
    if (command == "sample") return cmd_sample(cfg, o);
    if (command == "enumerate") return cmd_enumerate(cfg, o);
    if (command == "genfun") return cmd_genfun(cfg, o);
    if (command == "series") return cmd_series(cfg, o);
    if (command == "arctic") return cmd_arctic(cfg, o);
    if (command == "laplacian") return cmd_laplacian(cfg, o);
    if (command == "verify") return cmd_verify(cfg, o);
    return cmd_render(cfg, o);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << kUsage;
        return kExitUsage;
    }
    const std::string command = argv[1];
    if (command == "--help" || command == "-h") {
        std::cout << kUsage;
        return kExitOk;
    }
    if (!kCommands.count(command)) {
        std::cerr << "unknown command \"" << command << "\"\n" << kUsage;
        return kExitUsage;
    }
    Options o;
    CLI::App app{"groves " + command};
    app.add_option("--config", o.config, "run configuration (JSON)")->required();
    app.add_option("--out", o.out, "output file (stdout when absent)");
    app.add_option("--order", o.order, "order n of the initial conditions")->check(CLI::Range(1, 2000));
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--depth", o.depth, "series degree cutoff")->check(CLI::Range(0, 60));
    app.add_option("--resolution", o.resolution, "slice grid resolution")->check(CLI::Range(2, 20000));
    app.add_option("--samples", o.samples, "number of Monte Carlo samples");
    app.add_option("--emit-poly", o.emit_poly, "write the curve polynomials here (arctic)");
    try {
        app.parse(argc - 1, argv + 1);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }
    try {
        const RunConfig cfg = load_config(o.config);
        return dispatch(command, cfg, o);
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const ScheduleError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
