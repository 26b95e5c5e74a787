#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "groves/conductance.hpp"

namespace groves {

// A malformed configuration; the message starts with the JSON path of the offending field.
struct ConfigError : InvalidArgument {
    ConfigError(const std::string& path, const std::string& what) : InvalidArgument(path + ": " + what), field(path) {}
    std::string field;
};

struct RunConfig {
    std::string name;
    int m = 1, n = 1, N = 1;
    std::string labeling = "laplacian-derived-v1";
    std::map<std::string, Rational> edges;
    std::optional<std::vector<Point3>> class_order;

    TorusConductance torus() const { return torus_from_labels(m, n, edges, labeling); }
    ConductanceField field() const { return ConductanceField(torus()); }
};

namespace detail {

inline int config_int(const nlohmann::json& j, const std::string& key, const std::string& path, int fallback,
                      int min_value) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
    const long long x = v.get<long long>();
    if (x < min_value || x > 1000000) throw ConfigError(path + "." + key, "out of range");
    return static_cast<int>(x);
}

inline Rational config_rational(const nlohmann::json& v, const std::string& path) {
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number_integer()) text = std::to_string(v.get<long long>());
    else throw ConfigError(path, "expected a rational written as a string such as \"3/2\"");
    try {
        return parse_rational(text);
    } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
    }
}

}  // namespace detail

// Reads {"name", "m", "n", "N", "labeling", "edges": {label: "p/q"}, "class_order": [[i,j,k], ...]}.
inline RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("$", "expected an object");
    static const char* known[] = {"name", "m", "n", "N", "labeling", "edges", "class_order", "comment"};
    for (const auto& [key, value] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("$." + key, "unknown field");
    RunConfig c;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ConfigError("$.name", "expected a string");
        c.name = j.at("name").get<std::string>();
    }
    c.m = detail::config_int(j, "m", "$", 1, 1);
    c.n = detail::config_int(j, "n", "$", 1, 1);
    c.N = detail::config_int(j, "N", "$", 1, 1);
    if (c.m > 8 || c.n > 8 || c.N > 16) throw ConfigError("$", "torus or period too large (m, n <= 8, N <= 16)");
    if (j.contains("labeling")) {
        if (!j.at("labeling").is_string()) throw ConfigError("$.labeling", "expected a string");
        c.labeling = j.at("labeling").get<std::string>();
    }
    if (!j.contains("edges") || !j.at("edges").is_object()) throw ConfigError("$.edges", "expected an object");
    for (const auto& [label, value] : j.at("edges").items()) {
        const std::string path = "$.edges." + label;
        const Rational q = detail::config_rational(value, path);
        if (q <= 0) throw ConfigError(path, "conductances must be positive");
        c.edges[label] = q;
    }
    try {
        const auto names = labels_for(c.m, c.n, c.labeling);
        for (const auto& [label, value] : c.edges)
            if (std::find(names.begin(), names.end(), label) == names.end())
                throw ConfigError("$.edges." + label, "not a label of " + c.labeling);
        for (const auto& label : names)
            if (!c.edges.count(label)) throw ConfigError("$.edges." + label, "missing");
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError("$.labeling", e.what());
    }
    if (j.contains("class_order")) {
        const auto& order = j.at("class_order");
        if (!order.is_array()) throw ConfigError("$.class_order", "expected an array");
        std::vector<Point3> pts;
        for (std::size_t t = 0; t < order.size(); ++t) {
            const std::string path = "$.class_order[" + std::to_string(t) + "]";
            const auto& p = order[t];
            if (!p.is_array() || p.size() != 3 || !p[0].is_number_integer() || !p[1].is_number_integer() ||
                !p[2].is_number_integer())
                throw ConfigError(path, "expected [i, j, k]");
            pts.push_back({p[0].get<int>(), p[1].get<int>(), p[2].get<int>()});
        }
        c.class_order = pts;
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path, std::string("not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace groves
