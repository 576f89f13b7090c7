#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/errors.hpp"

namespace rootcurve {

struct RootSolveOptions {
    int max_iterations = 200;
    double tolerance = 1e-12;  // stop when corrections fall below tolerance * |root|
    int polish_steps = 2;      // Newton refinements after convergence
};

/// Deterministic order for every root list we hand out: modulus, then
/// principal argument. Keeps golden files stable.
inline bool root_order(ComplexNum lhs, ComplexNum rhs) {
    const double ml = std::abs(lhs);
    const double mr = std::abs(rhs);
    if (ml != mr) return ml < mr;
    const double al = std::arg(lhs);
    const double ar = std::arg(rhs);
    if (al != ar) return al < ar;
    return false;
}

inline void sort_roots(std::vector<ComplexNum>& roots) {
    std::sort(roots.begin(), roots.end(), root_order);
}

namespace detail {

inline void solve_quadratic(ComplexNum a, ComplexNum b, ComplexNum c, ComplexNum& x0, ComplexNum& x1) {
    const ComplexNum sqrt_d = std::sqrt(b * b - 4.0 * a * c);
    // pick the sign that avoids cancellation in b +/- sqrt_d
    const ComplexNum big = (std::real(std::conj(b) * sqrt_d) >= 0.0) ? -0.5 * (b + sqrt_d) : -0.5 * (b - sqrt_d);
    if (big == ComplexNum{0.0, 0.0}) {
        x0 = ComplexNum{0.0, 0.0};
        x1 = -b / a;
    } else {
        x0 = c / big;
        x1 = big / a;
    }
}

inline double eval_and_derivative(const ComplexPoly& p, ComplexNum z, ComplexNum& value, ComplexNum& deriv) {
    const auto& c = p.coeffs();
    ComplexNum v = c.back();
    ComplexNum d{0.0, 0.0};
    double scale = std::abs(v);
    const double az = std::abs(z);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        d = d * z + v;
        v = v * z + c[i];
        scale = scale * az + std::abs(v);
    }
    value = v;
    deriv = d;
    return scale;  // Adams-style running magnitude for the stopping floor
}

/// Initial guesses from the Newton polygon: the upper convex hull of
/// (k, ln|c_k|) splits the index range into annuli whose radii track the
/// root moduli. A single circle stalls when the moduli spread over orders of
/// magnitude (pairs of approximations collapse onto a non-root and freeze
/// each other through the repulsion term); per-annulus placement avoids that.
inline std::vector<ComplexNum> initial_guesses(const ComplexPoly& p) {
    const int d = p.degree();
    struct Point {
        double k;
        double y;
    };
    std::vector<Point> pts;
    for (int k = 0; k <= d; ++k) {
        const double mag = std::abs(p.coeffs()[static_cast<std::size_t>(k)]);
        if (mag > 0.0) pts.push_back({static_cast<double>(k), std::log(mag)});
    }
    std::vector<Point> hull;  // upper hull, k ascending
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull[hull.size() - 1];
            if ((b.k - a.k) * (pt.y - a.y) - (b.y - a.y) * (pt.k - a.k) >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    constexpr double kPhaseOffset = 0.4;
    std::vector<ComplexNum> z;
    z.reserve(static_cast<std::size_t>(d));
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int count = static_cast<int>(hull[s + 1].k - hull[s].k);
        const double radius = std::exp((hull[s].y - hull[s + 1].y) / count);
        for (int j = 0; j < count; ++j) {
            const double angle = kPhaseOffset + 2.0 * M_PI * (j + 0.26 * (hull[s].k + 1.0)) / count;
            z.push_back(std::polar(radius, angle));
        }
    }
    return z;
}

inline void newton_polish(const ComplexPoly& p, std::vector<ComplexNum>& roots, int steps) {
    const ComplexPoly dp = derivative(p);
    for (auto& z : roots) {
        double best = std::abs(eval(p, z));
        for (int s = 0; s < steps; ++s) {
            if (best == 0.0) break;
            const ComplexNum dv = eval(dp, z);
            if (dv == ComplexNum{0.0, 0.0}) break;
            const ComplexNum cand = z - eval(p, z) / dv;
            const double cand_res = std::abs(eval(p, cand));
            if (cand_res >= best) break;
            z = cand;
            best = cand_res;
        }
    }
}

}  // namespace detail

/// All roots of p, with multiplicity, by Ehrlich-Aberth simultaneous
/// iteration. Exact zero roots are split off first, degrees 1 and 2 are
/// solved in closed form. Returned list is sorted by (modulus, argument);
/// clustered roots come back as repeated values.
inline std::vector<ComplexNum> roots_all(const ComplexPoly& p, const RootSolveOptions& opts = {}) {
    if (p.degree() < 1) throw std::invalid_argument("roots_all: degree must be >= 1");

    // split off exact roots at the origin
    std::size_t zero_roots = 0;
    while (zero_roots < p.coeffs().size() && p.coeffs()[zero_roots] == ComplexNum{0.0, 0.0}) ++zero_roots;
    std::vector<ComplexNum> work(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zero_roots), p.coeffs().end());
    const ComplexPoly reduced{std::vector<ComplexNum>(work)};

    std::vector<ComplexNum> roots(zero_roots, ComplexNum{0.0, 0.0});
    const int d = reduced.degree();

    if (d == 1) {
        roots.push_back(-reduced.coeffs()[0] / reduced.coeffs()[1]);
    } else if (d == 2) {
        ComplexNum x0, x1;
        detail::solve_quadratic(reduced.coeffs()[2], reduced.coeffs()[1], reduced.coeffs()[0], x0, x1);
        roots.push_back(x0);
        roots.push_back(x1);
    } else if (d >= 3) {
        std::vector<ComplexNum> z = detail::initial_guesses(reduced);

        const double eps = std::numeric_limits<double>::epsilon();
        bool converged = false;
        for (int iter = 0; iter < opts.max_iterations && !converged; ++iter) {
            converged = true;
            for (int i = 0; i < d; ++i) {
                ComplexNum value, deriv;
                const double floor_scale = detail::eval_and_derivative(reduced, z[i], value, deriv);
                if (std::abs(value) <= 8.0 * d * eps * floor_scale) continue;  // at the noise floor

                ComplexNum newton;
                if (deriv == ComplexNum{0.0, 0.0}) {
                    newton = std::polar(0.1 * (1.0 + std::abs(z[i])), 0.4 + i);
                } else {
                    newton = value / deriv;
                }
                ComplexNum repulsion{0.0, 0.0};
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    const ComplexNum diff = z[i] - z[j];
                    if (diff != ComplexNum{0.0, 0.0}) repulsion += 1.0 / diff;
                }
                const ComplexNum denom = 1.0 - newton * repulsion;
                const ComplexNum correction = (denom == ComplexNum{0.0, 0.0}) ? newton : newton / denom;
                z[i] -= correction;
                if (std::abs(correction) > opts.tolerance * (std::abs(z[i]) + 1e-300)) converged = false;
            }
        }
        if (!converged)
            throw NonConvergence("roots_all: Ehrlich-Aberth did not converge in " +
                                 std::to_string(opts.max_iterations) + " iterations (degree " +
                                 std::to_string(p.degree()) + ")");

        // every accepted root must sit at the backward-error floor; a stalled
        // approximation (small corrections away from any root) fails this
        for (const auto& root : z) {
            ComplexNum value, deriv;
            const double floor_scale = detail::eval_and_derivative(reduced, root, value, deriv);
            if (!(std::abs(value) <= 1e8 * 8.0 * d * eps * floor_scale))
                throw NonConvergence("roots_all: a root candidate stalled away from any root");
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }

    if (opts.polish_steps > 0 && d >= 1) detail::newton_polish(p, roots, opts.polish_steps);
    sort_roots(roots);
    return roots;
}

}  // namespace rootcurve
