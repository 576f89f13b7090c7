#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/errors.hpp"
#include "rootcurve/root_solver.hpp"

namespace rootcurve {

/// sin(n*theta)/sin(theta), extended continuously through sin(theta) = 0,
/// where it equals n * (-1)^{...}; the extension is computed as the Chebyshev
/// polynomial U_{n-1}(cos theta), which is the same function everywhere.
inline double cheb_ratio(int n, double theta) {
    if (n < 1) throw std::invalid_argument("cheb_ratio: n must be >= 1");
    const double s = std::sin(theta);
    if (std::abs(s) > 1e-2) return std::sin(n * theta) / s;
    const double c = std::cos(theta);
    double u_prev = 1.0;  // U_0
    if (n == 1) return u_prev;
    double u = 2.0 * c;  // U_1
    for (int k = 2; k < n; ++k) {
        const double next = 2.0 * c * u - u_prev;
        u_prev = u;
        u = next;
    }
    return u;
}

/// Everything attached to one theta in [0, pi/n): the trinomial
///   P_theta(zeta) = zeta^n - (sin n.theta/sin theta) zeta + sin((n-1)theta)/sin theta,
/// its n roots with zeta[0] = e^{-i theta}, zeta[1] = e^{+i theta} assigned
/// analytically, and P'_theta at every root.
struct ThetaContext {
    int n = 2;
    double theta = 0.0;
    double ratio_n = 0.0;   // sin(n theta)/sin(theta)
    double ratio_n1 = 0.0;  // sin((n-1) theta)/sin(theta)
    ComplexPoly p_theta;
    std::vector<ComplexNum> zeta;
    std::vector<ComplexNum> dp_at_zeta;
};

inline ComplexPoly make_p_theta(int n, double theta) {
    std::vector<ComplexNum> c(static_cast<std::size_t>(n) + 1, ComplexNum{0.0, 0.0});
    c[0] = ComplexNum{cheb_ratio(n - 1, theta), 0.0};
    c[1] = ComplexNum{-cheb_ratio(n, theta), 0.0};
    c[static_cast<std::size_t>(n)] = ComplexNum{1.0, 0.0};
    return ComplexPoly(std::move(c));
}

/// The two unit-circle roots e^{+-i theta} are deflated exactly before the
/// numeric solve, which removes the ill-conditioning of the nearly coincident
/// pair at small theta. The remaining n-2 roots are sorted by
/// (modulus, argument).
inline ThetaContext build_theta_context(int n, double theta, const RootSolveOptions& opts = {}) {
    if (n < 2) throw std::invalid_argument("build_theta_context: n must be >= 2");
    if (!(theta >= 0.0 && theta < M_PI / n))
        throw std::invalid_argument("build_theta_context: theta must lie in [0, pi/n)");

    ThetaContext ctx;
    ctx.n = n;
    ctx.theta = theta;
    ctx.ratio_n = cheb_ratio(n, theta);
    ctx.ratio_n1 = cheb_ratio(n - 1, theta);
    ctx.p_theta = make_p_theta(n, theta);

    const ComplexNum lo = std::polar(1.0, -theta);
    const ComplexNum hi = std::polar(1.0, theta);
    ctx.zeta.push_back(lo);
    ctx.zeta.push_back(hi);
    if (n > 2) {
        const ComplexPoly quotient = deflate(deflate(ctx.p_theta, lo), hi);
        std::vector<ComplexNum> outer = roots_all(quotient, opts);
        ctx.zeta.insert(ctx.zeta.end(), outer.begin(), outer.end());
    }

    const ComplexPoly dp = derivative(ctx.p_theta);
    ctx.dp_at_zeta.reserve(ctx.zeta.size());
    for (const auto& z : ctx.zeta) ctx.dp_at_zeta.push_back(eval(dp, z));
    return ctx;
}

/// The root-counting function
///   h(theta) = sum_k 1 / (zeta_k^{m+1} P'_theta(zeta_k)),
/// real by conjugate symmetry of the root set. Powers go through polar form
/// with the exponent applied to the log-modulus, so m up to ~10^6 cannot
/// overflow. Throws RealnessViolation when the imaginary part fails
/// |Im| <= 1e-6 (1 + |Re|), which signals an upstream root-solve failure.
inline double h_eval(const ThetaContext& ctx, long m, double* imag_out = nullptr) {
    if (m < 1) throw std::invalid_argument("h_eval: m must be >= 1");
    if (ctx.theta == 0.0)
        throw std::invalid_argument("h_eval: singular at theta = 0 (double root of P_0)");
    ComplexNum sum{0.0, 0.0};
    const double e = static_cast<double>(m) + 1.0;
    for (std::size_t k = 0; k < ctx.zeta.size(); ++k) {
        const ComplexNum z = ctx.zeta[k];
        const double inv_mod = std::exp(-e * std::log(std::abs(z)));
        const ComplexNum inv_pow = std::polar(inv_mod, -e * std::arg(z));
        sum += inv_pow / ctx.dp_at_zeta[k];
    }
    if (imag_out != nullptr) *imag_out = sum.imag();
    if (!(std::abs(sum.imag()) <= 1e-6 * (1.0 + std::abs(sum.real()))))
        throw RealnessViolation("h_eval: imaginary part " + std::to_string(sum.imag()) +
                                " too large at theta = " + std::to_string(ctx.theta));
    return sum.real();
}

/// v(theta) = sin^n(n theta) / (sin(theta) sin^{n-1}((n-1) theta)) on
/// [0, pi/n], extended by v(0) = n^n/(n-1)^{n-1} and v(pi/n) = 0, and clamped
/// into that range. This is the height (-1)^n B^n/A takes along the curve.
inline double curve_height(int n, double theta) {
    if (n < 2) throw std::invalid_argument("curve_height: n must be >= 2");
    if (!(theta >= 0.0 && theta <= M_PI / n + 1e-15))
        throw std::invalid_argument("curve_height: theta must lie in [0, pi/n]");
    const double bound = std::pow(n, n) / std::pow(n - 1.0, n - 1);
    const double rn = cheb_ratio(n, theta);
    const double rn1 = cheb_ratio(n - 1, theta);
    const double v = std::pow(rn, n) / std::pow(rn1, n - 1);
    return std::min(std::max(v, 0.0), bound);
}

/// One predicted sign of h: at theta = pi/n - l pi/m with l = h_index + r/n
/// the sign is (-1)^{p - h_index + 1} for large m.
struct SignGridPoint {
    int h_index = 0;
    double l_value = 0.0;
    double theta = 0.0;
    int expected_sign = 0;
};

/// The p+1 grid values of theta, in decreasing order, at which h provably
/// alternates sign: the near-pi/n endpoint (sign (-1)^{p+1}), the interior
/// points h_index = 1..p-1, and the near-zero endpoint (sign -1, consistent
/// with h(0+) < 0).
inline std::vector<SignGridPoint> sign_grid(int n, long m) {
    if (n < 2) throw std::invalid_argument("sign_grid: n must be >= 2");
    if (m < n) throw std::invalid_argument("sign_grid: requires m >= n");
    const long p = m / n;
    const long r = m % n;
    const double md = static_cast<double>(m);
    const auto parity_sign = [](long k) { return (k % 2 == 0) ? 1 : -1; };

    const double eps_lo = M_PI / (4.0 * n * md);
    double eps_hi = M_PI / (4.0 * n * md);
    if (r > 0) eps_hi = std::min(eps_hi, 0.5 * (static_cast<double>(r) / n) * (M_PI / md));

    std::vector<SignGridPoint> grid;
    grid.reserve(static_cast<std::size_t>(p) + 1);
    grid.push_back({0, eps_hi * md / M_PI, M_PI / n - eps_hi, parity_sign(p + 1)});
    for (long h = 1; h <= p - 1; ++h) {
        const double l = static_cast<double>(h) + static_cast<double>(r) / n;
        grid.push_back({static_cast<int>(h), l, M_PI / n - l * M_PI / md, parity_sign(p - h + 1)});
    }
    grid.push_back({static_cast<int>(p), (M_PI / n - eps_lo) * md / M_PI, eps_lo, -1});
    return grid;
}

struct ThetaRoot {
    double theta = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    double h_residual = 0.0;
};

/// Non-fatal diagnostic: observed sign of h at a grid point disagrees with
/// the prediction. Expected for m below the validity threshold.
struct SignMismatch {
    std::size_t grid_index = 0;
    double theta = 0.0;
    int expected = 0;
    int observed = 0;
};

struct ThetaRootScan {
    std::vector<ThetaRoot> roots;  // increasing theta
    std::vector<SignMismatch> mismatches;
    std::vector<SignGridPoint> grid;
    std::vector<double> h_at_grid;
};

/// Isolates the real roots of h on (0, pi/n) by bisection between adjacent
/// grid points with opposite observed signs. When every observed sign matches
/// its prediction, the count is exactly p = floor(m/n).
inline ThetaRootScan find_theta_roots(int n, long m, const RootSolveOptions& opts = {}) {
    ThetaRootScan scan;
    scan.grid = sign_grid(n, m);
    const auto h_at = [&](double theta) { return h_eval(build_theta_context(n, theta, opts), m); };

    scan.h_at_grid.reserve(scan.grid.size());
    std::vector<int> observed(scan.grid.size(), 0);
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        const double value = h_at(scan.grid[i].theta);
        scan.h_at_grid.push_back(value);
        observed[i] = (value > 0.0) ? 1 : (value < 0.0 ? -1 : 0);
        if (observed[i] != scan.grid[i].expected_sign)
            scan.mismatches.push_back({i, scan.grid[i].theta, scan.grid[i].expected_sign, observed[i]});
        if (observed[i] == 0) scan.roots.push_back({scan.grid[i].theta, {scan.grid[i].theta, scan.grid[i].theta}, 0.0});
    }

    constexpr double kBracketWidth = 1e-13;
    for (std::size_t i = 0; i + 1 < scan.grid.size(); ++i) {
        if (observed[i] * observed[i + 1] >= 0) continue;
        double lo = scan.grid[i + 1].theta;  // grid is in decreasing theta
        double hi = scan.grid[i].theta;
        double f_lo = scan.h_at_grid[i + 1];
        double mid = 0.5 * (lo + hi);
        while (hi - lo >= kBracketWidth) {
            mid = 0.5 * (lo + hi);
            const double f_mid = h_at(mid);
            if (std::abs(f_mid) <= opts.tolerance || f_mid == 0.0) break;
            if ((f_mid > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        ThetaRoot root;
        root.theta = mid;
        root.bracket = {lo, hi};
        root.h_residual = std::abs(h_at(mid));
        scan.roots.push_back(root);
    }

    std::sort(scan.roots.begin(), scan.roots.end(),
              [](const ThetaRoot& x, const ThetaRoot& y) { return x.theta < y.theta; });
    return scan;
}

}  // namespace rootcurve
