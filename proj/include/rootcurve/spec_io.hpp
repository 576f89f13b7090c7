#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/family.hpp"

namespace rootcurve {

class SpecParseError : public std::runtime_error {
  public:
    explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline ComplexPoly parse_coeff_list(const nlohmann::json& node, const std::string& field) {
    if (!node.is_array())
        throw SpecParseError("spec field '" + field + "' must be an array of [re, im] pairs");
    std::vector<ComplexNum> coeffs;
    coeffs.reserve(node.size());
    for (const auto& entry : node) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
            throw SpecParseError("spec field '" + field + "': every coefficient must be a [re, im] pair");
        coeffs.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    return ComplexPoly(std::move(coeffs));
}

}  // namespace detail

/// Loads a family spec from JSON: {"n": int, "A": [[re,im],...], "B": [[re,im],...]}
/// with coefficients ascending. Rejects n < 2 and an all-zero A, naming the field.
inline FamilySpec load_family_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SpecParseError("spec file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw SpecParseError("spec field 'n' must be an integer");
    const long n = doc["n"].get<long>();
    if (n < 2) throw SpecParseError("spec field 'n' must be >= 2");
    if (!doc.contains("A")) throw SpecParseError("spec field 'A' is missing");
    if (!doc.contains("B")) throw SpecParseError("spec field 'B' is missing");
    ComplexPoly a = detail::parse_coeff_list(doc["A"], "A");
    ComplexPoly b = detail::parse_coeff_list(doc["B"], "B");
    if (a.is_zero()) throw SpecParseError("spec field 'A' must not be identically zero");
    return make_family_spec(static_cast<int>(n), std::move(a), std::move(b));
}

struct RunConfig {
    double tolerance = 1e-8;     // curve membership / classification tolerance
    double residual_tol = 1e-6;  // acceptance threshold for located roots
    int max_iterations = 200;
    int samples = 500;
    std::string output_path;  // empty = stdout
    enum class Format { csv, json } format = Format::csv;
};

}  // namespace rootcurve
