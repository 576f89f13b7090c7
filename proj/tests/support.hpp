// Shared helpers for the unit and acceptance suites. Test-only code.
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rootcurve/rootcurve.hpp"

namespace testsupport {

using rootcurve::ComplexNum;
using rootcurve::ComplexPoly;
using rootcurve::FamilySpec;

inline FamilySpec chebyshev_spec() {
    return rootcurve::make_family_spec(2, ComplexPoly{{{1.0, 0.0}}},
                                       ComplexPoly{{{0.0, 0.0}, {-2.0, 0.0}}});
}

inline FamilySpec quintic_spec() {
    return rootcurve::make_family_spec(
        5, ComplexPoly{{{0.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}},
        ComplexPoly{{{0.0, 0.0}, {1.0, 0.0}}});
}

inline FamilySpec hexic_spec() {
    return rootcurve::make_family_spec(6, ComplexPoly{{{-0.3, 0.2}, {1.0, 0.0}}},
                                       ComplexPoly{{{0.2, -0.1}, {1.0, 0.0}}});
}

inline FamilySpec hexic_alt_spec() {
    return rootcurve::make_family_spec(6, ComplexPoly{{{0.1, 0.5}, {0.7, -0.3}}},
                                       ComplexPoly{{{-0.25, 0.15}, {1.2, 0.4}}});
}

/// nb <= a regime: n = 2, deg B = 1, deg A = 5.
inline FamilySpec wide_numerator_spec() {
    return rootcurve::make_family_spec(
        2,
        ComplexPoly{{{1.0, 0.2}, {0.0, 0.0}, {0.3, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}},
        ComplexPoly{{{0.0, 0.0}, {-2.0, 0.0}}});
}

/// Multiset distance between two root lists (bottleneck matching); robust to
/// ordering flips of near-axis conjugate values.
inline double sorted_match_distance(const std::vector<ComplexNum>& a,
                                    const std::vector<ComplexNum>& b) {
    return rootcurve::matched_max_distance(a, b);
}

/// e_1..e_n of the given values.
inline std::vector<ComplexNum> elementary_symmetric(const std::vector<ComplexNum>& x) {
    std::vector<ComplexNum> e(x.size() + 1, ComplexNum{0.0, 0.0});
    e[0] = ComplexNum{1.0, 0.0};
    for (const auto& v : x)
        for (std::size_t j = e.size() - 1; j >= 1; --j) e[j] += v * e[j - 1];
    return e;
}

/// |x (2x^6 y + 6x^4 y^3 - x^4 + 6x^2 y^5 + 10x^2 y^2 + 2y^7 - 5y^4)| at z = x+iy:
/// the Cartesian form of Im(z^5 conj(z^3 + i)) for the quintic example family.
inline double quintic_cartesian_residual(ComplexNum z) {
    const double x = z.real();
    const double y = z.imag();
    const double x2 = x * x, y2 = y * y;
    const double bracket = 2.0 * x2 * x2 * x2 * y + 6.0 * x2 * x2 * y2 * y - x2 * x2 +
                           6.0 * x2 * y2 * y2 * y + 10.0 * x2 * y2 + 2.0 * y2 * y2 * y2 * y -
                           5.0 * y2 * y2;
    return std::abs(x * bracket);
}

/// Deterministic random family specs for property and oracle tests.
class SpecSampler {
  public:
    explicit SpecSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    }

    long uniform_int(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng_);
    }

    ComplexNum coeff() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    /// Random polynomial with |leading| >= 0.25 so the degree is stable.
    ComplexPoly poly(int degree) {
        std::vector<ComplexNum> c(static_cast<std::size_t>(degree) + 1);
        for (auto& v : c) v = coeff();
        while (std::abs(c.back()) < 0.25) c.back() = coeff();
        return ComplexPoly(std::move(c));
    }

    FamilySpec family(int n_min, int n_max, int a_max, int b_max) {
        const int n = static_cast<int>(uniform_int(n_min, n_max));
        const int a = static_cast<int>(uniform_int(0, a_max));
        const int b = static_cast<int>(uniform_int(1, b_max));
        return rootcurve::make_family_spec(n, poly(a), poly(b));
    }

  private:
    std::mt19937_64 rng_;
};

// ---- CLI integration helpers ----

inline std::string cli_path() {
#ifdef ROOTCURVE_CLI_PATH
    return ROOTCURVE_CLI_PATH;
#else
    return "rootcurve";
#endif
}

inline std::string specs_dir() {
#ifdef ROOTCURVE_SPECS_DIR
    return ROOTCURVE_SPECS_DIR;
#else
    return "specs";
#endif
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline CliResult run_cli(const std::string& args, const std::string& tag) {
    const std::string out_path = "cli_" + tag + ".out";
    const std::string err_path = "cli_" + tag + ".err";
    const std::string cmd = cli_path() + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CliResult result;
#ifdef WIFEXITED
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    result.exit_code = status;
#endif
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

/// Parses a CSV written by the CLI: first row is the header.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (first) {
            csv.header = cells;
            first = false;
        } else {
            csv.rows.push_back(cells);
        }
    }
    return csv;
}

inline Csv read_csv_file(const std::string& path) { return parse_csv(read_file(path)); }

}  // namespace testsupport
