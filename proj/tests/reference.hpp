#pragma once

#include <string>
#include <vector>

#include "groves/groves.hpp"

// Reference constants for the three bundled configurations, kept as text so a reader can
// compare them with their printed form line by line.
namespace reference {

using groves::PolyQ;

inline std::string config_path(const std::string& name) { return std::string(GROVES_CONFIG_DIR) + "/" + name + ".json"; }

inline groves::RunConfig load(const std::string& name) { return groves::load_config(config_path(name)); }

inline const std::vector<std::string> kConfigNames = {"uniform_t11", "t12_n1", "t12_n3"};

inline std::vector<std::vector<PolyQ>> parse_matrix(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<PolyQ>> out;
    for (const auto& row : rows) {
        out.emplace_back();
        for (const auto& cell : row) out.back().push_back(groves::parse_poly(cell, groves::kXYZ));
    }
    return out;
}

// Uniform T_{1,1}.
inline const std::string kUniformQ = "1 + x y z - 1/3 x - 1/3 y - 1/3 z - 1/3 y z - 1/3 x z - 1/3 x y";
inline const std::string kUniformGpNumerator = "2/3 x";
inline const std::string kUniformQtilde = "2/3 y z + 2/3 x z + 2/3 x y";
inline const std::string kUniformPtilde = "2/3";
inline const std::string kUniformDual = "v w + u w + u v - 1/2 u^2 - 1/2 v^2 - 1/2 w^2";

// T_{1,2} with N = 1.
inline const std::vector<std::vector<std::string>> kT12Matrix = {
    {"-3/16 x - 1/16 x y - 3/4 y + 1", "x y z - 3/4 x z - 3/16 y z - 1/16 z"},
    {"x y z - 3/16 x z - 3/4 y z - 1/16 z", "-1/16 x y - 3/4 x - 3/16 y + 1"}};
inline const std::vector<std::string> kT12Rhs = {"13/16", "1/4"};
inline const std::string kT12Ptilde = "185/256 x + 13/32 y";
inline const std::string kT12Qtilde = "255/256 x^2 y + 255/256 x y^2 + 104/256 x^2 z + 370/256 x y z + 104/256 y^2 z";
inline const std::string kT12Dual =
    "6619392 u^4 - 47099520 u^3 v + 97021584 u^2 v^2 - 47099520 u v^3 + 6619392 v^4 - 38301120 u^3 w"
    " - 3164400 u^2 v w - 3164400 u v^2 w - 38301120 v^3 w + 73033700 u^2 w^2 + 6779600 u v w^2"
    " + 73033700 v^2 w^2 - 57655500 u w^3 - 57655500 v w^3 + 27635625 w^4";

// T_{1,2} with N = 3, classes in the order of the bundled configuration.
inline const std::vector<std::vector<std::string>> kT12N3Matrix = {
    {"1", "x y z", "-1/2 x - 1/3 y", "-1/6 z", "-1/6 x y", "-1/3 x z - 1/2 y z"},
    {"x y z", "1", "-5/6 z", "-20/129 x - 1/86 y", "-1/86 x z - 20/129 y z", "-5/6 x y"},
    {"-43/53 x y", "-4/53 x z - 6/53 y z", "1", "x y z", "-6/53 x - 4/53 y", "-43/53 z"},
    {"-3/53 x z - 40/53 y z", "-10/53 x y", "x y z", "1", "-10/53 z", "-40/53 x - 3/53 y"},
    {"-6/53 x - 4/53 y", "-43/53 z", "-43/53 x y", "-4/53 x z - 6/53 y z", "1", "x y z"},
    {"-10/53 z", "-40/53 x - 3/53 y", "-3/53 x z - 40/53 y z", "-10/53 x y", "x y z", "1"}};
inline const std::vector<std::string> kT12N3Rhs = {"1/2", "109/129", "47/53", "13/53", "47/53", "13/53"};
inline const std::string kT12N3Ptilde =
    "(-8376157535 x^3 - 27465850948 x^2 y - 37792606090 x^2 z - 32422312230 x y^2 - 81250160702 x y z"
    " - 41078137290 x z^2 - 12081677400 y^3 - 37378399260 y^2 z - 26396541912 y z^2)";
inline const std::string kT12N3PtildeDen = "2035744098";
inline const std::string kT12N3Qtilde =
    "(-2195435870 x^4 y - 4213162175 x^4 z - 8636813573 x^3 y^2 - 26901515220 x^3 y z - 18270472400 x^3 z^2"
    " - 8949558855 x^2 y^3 - 44782155243 x^2 y^2 z - 62350371390 x^2 y z^2 - 19642088100 x^2 z^3"
    " - 2785734900 x y^4 - 25376048920 x y^3 z - 53016222846 x y^2 z^2 - 27385424860 x y z^3"
    " - 4027225800 y^4 z - 12459466420 y^3 z^2 - 8798847304 y^2 z^3)";
inline const std::string kT12N3QtildeDen = "678581366";

// Strips the surrounding parentheses of the long numerators above.
inline PolyQ parse_scaled(const std::string& numerator, const std::string& denominator) {
    std::string body = numerator;
    if (!body.empty() && body.front() == '(') body = body.substr(1, body.size() - 2);
    return groves::parse_poly(body, groves::kXYZ) / groves::parse_rational(denominator);
}

// The symbolic T_{1,2} Laplacian in variables z, w, a, ..., f.
inline const groves::VarNames kLaplacianNames = {"z", "w", "a", "b", "c", "d", "e", "f"};
inline const std::vector<std::vector<std::string>> kT12Laplacian = {
    {"a + b + d + e + 2 f - f z - f z^-1", "-a w - b z w - d - e z^-1"},
    {"-a w^-1 - b z^-1 w^-1 - d - e z", "a + b + d + e + 2 c - c z - c z^-1"}};

}  // namespace reference
