#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/errors.hpp"
#include "rootcurve/family.hpp"
#include "rootcurve/root_solver.hpp"
#include "rootcurve/theta_kernel.hpp"
#include "rootcurve/trinomial.hpp"

namespace rootcurve {

enum class CurveTag { OnCurve, AZero, OffCurve };

inline const char* to_string(CurveTag tag) {
    switch (tag) {
        case CurveTag::OnCurve: return "on_curve";
        case CurveTag::AZero: return "a_zero";
        case CurveTag::OffCurve: return "off_curve";
    }
    return "?";
}

/// Classification of z against the fixed curve
///   Im(B^n/A) = 0,  0 <= (-1)^n Re(B^n/A) <= n^n/(n-1)^{n-1}.
/// w and height are meaningful only when tag != AZero.
struct CurveClass {
    CurveTag tag = CurveTag::OffCurve;
    ComplexNum w{0.0, 0.0};  // B^n(z)/A(z)
    double height = 0.0;     // (-1)^n Re w
};

inline CurveClass curve_membership(const FamilySpec& spec, ComplexNum z, double tol) {
    CurveClass out;
    if (leading_is_degenerate(spec, z, tol)) {
        out.tag = CurveTag::AZero;
        return out;
    }
    out.w = ipow(eval(spec.B, z), static_cast<unsigned long>(spec.n)) / eval(spec.A, z);
    out.height = (spec.n % 2 == 0 ? 1.0 : -1.0) * out.w.real();
    const double bound = std::pow(spec.n, spec.n) / std::pow(spec.n - 1.0, spec.n - 1);
    const bool im_ok = std::abs(out.w.imag()) <= tol * std::max(1.0, std::abs(out.w));
    const bool height_ok = out.height >= -tol && out.height <= bound + tol;
    out.tag = (im_ok && height_ok) ? CurveTag::OnCurve : CurveTag::OffCurve;
    return out;
}

/// All z with a denominator root quotient e^{2 i theta}: the roots of
///   (-1)^n c_B(theta) B(z)^n - c_A(theta) A(z)
/// with c_B = (1-q) q^{n-1} (1-q^{n-1})^{n-1} and c_A = (1-q^n)^n, q = e^{2 i theta}.
/// Every solution lands on the curve; the generic count is max(nb, a).
inline std::vector<ComplexNum> z_from_theta(const FamilySpec& spec, double theta,
                                            const RootSolveOptions& opts = {}) {
    const int n = spec.n;
    if (!(theta > 0.0 && theta < M_PI / n))
        throw std::invalid_argument("z_from_theta: theta must lie in (0, pi/n)");
    const ComplexNum q = std::polar(1.0, 2.0 * theta);
    const ComplexNum one{1.0, 0.0};
    const ComplexNum c_b = (one - q) * ipow(q, static_cast<unsigned long>(n - 1)) *
                           ipow(one - ipow(q, static_cast<unsigned long>(n - 1)),
                                static_cast<unsigned long>(n - 1));
    const ComplexNum c_a = ipow(one - ipow(q, static_cast<unsigned long>(n)),
                                static_cast<unsigned long>(n));
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    const ComplexPoly equation =
        sub(scale(pow(spec.B, static_cast<unsigned>(n)), sign_n * c_b), scale(spec.A, c_a));
    if (equation.is_zero())
        throw DegenerateEquation("z_from_theta: assembled equation vanishes identically");
    if (equation.degree() < 1) return {};
    return roots_all(equation, opts);
}

struct TracePoint {
    double theta = 0.0;
    ComplexNum z{0.0, 0.0};
};

struct CurveTrace {
    std::vector<TracePoint> points;
    std::vector<std::pair<double, std::string>> failures;  // theta -> reason
};

/// Point cloud on the curve: solves z_from_theta on a uniform grid over
/// (0, pi/n). Per-sample failures are recorded, not fatal.
inline CurveTrace trace_curve(const FamilySpec& spec, int samples, const RootSolveOptions& opts = {}) {
    if (samples < 2) throw std::invalid_argument("trace_curve: samples must be >= 2");
    CurveTrace trace;
    for (int j = 0; j < samples; ++j) {
        const double theta = (M_PI / spec.n) * (j + 1) / static_cast<double>(samples + 1);
        try {
            for (const auto& z : z_from_theta(spec, theta, opts)) trace.points.push_back({theta, z});
        } catch (const std::exception& e) {
            trace.failures.emplace_back(theta, e.what());
        }
    }
    return trace;
}

/// One located root of H_m: where it came from, how well it verifies, and
/// where it sits relative to the curve.
struct RootRecord {
    ComplexNum z{0.0, 0.0};
    bool from_b_root = false;
    int theta_index = -1;  // into LocateReport::theta_roots; -1 for B-roots
    std::optional<double> theta;
    double residual = 0.0;  // scale-free |H_m(z)| from the recurrence
    CurveClass curve;
};

enum class Verdict { Complete, Incomplete, BelowThreshold };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Complete: return "Complete";
        case Verdict::Incomplete: return "Incomplete";
        case Verdict::BelowThreshold: return "BelowThreshold";
    }
    return "?";
}

struct LocateOptions {
    RootSolveOptions solve{};
    double curve_tol = 1e-8;
    double residual_tol = 1e-6;
};

struct LocateReport {
    long m = 0;
    long p = 0;
    int r = 0;
    std::vector<ThetaRoot> theta_roots;
    std::vector<SignMismatch> sign_mismatches;
    std::vector<RootRecord> records;
    long expected_count = 0;  // degree bound
    long located_count = 0;
    Verdict verdict = Verdict::Incomplete;
    std::vector<std::string> failures;
};

namespace detail {

/// Newton against the rescaled recurrence evaluation; the derivative comes
/// from the termwise-differentiated recurrence, so this works at m where the
/// expanded coefficients would overflow. Steps that raise the residual are
/// rejected.
inline void polish_record(const FamilySpec& spec, long m, RootRecord& record) {
    RecurrencePoint rp = recurrence_eval(spec, m, record.z);
    double residual = rp.relative_residual();
    for (int step = 0; step < 5; ++step) {
        if (residual < 1e-14) break;
        if (rp.deriv == ComplexNum{0.0, 0.0}) break;
        const ComplexNum candidate = record.z - rp.value / rp.deriv;
        const RecurrencePoint next = recurrence_eval(spec, m, candidate);
        const double next_residual = next.relative_residual();
        if (next_residual >= residual) break;
        record.z = candidate;
        rp = next;
        residual = next_residual;
    }
    record.residual = residual;
}

}  // namespace detail

/// Locates every root of H_m from the theta-roots of h plus the roots of B
/// (the B^r divisor), polishes each against the recurrence, and verifies the
/// count against the degree bound.
inline LocateReport locate_roots(const FamilySpec& spec, long m, const LocateOptions& opts = {}) {
    if (m < spec.n) throw std::invalid_argument("locate_roots: requires m >= n");
    LocateReport report;
    report.m = m;
    report.p = m / spec.n;
    report.r = static_cast<int>(m % spec.n);
    report.expected_count = degree_bound(spec, m);

    ThetaRootScan scan = find_theta_roots(spec.n, m, opts.solve);
    report.theta_roots = std::move(scan.roots);
    report.sign_mismatches = std::move(scan.mismatches);

    for (std::size_t i = 0; i < report.theta_roots.size(); ++i) {
        const double theta = report.theta_roots[i].theta;
        try {
            for (const auto& z : z_from_theta(spec, theta, opts.solve)) {
                RootRecord record;
                record.z = z;
                record.theta_index = static_cast<int>(i);
                record.theta = theta;
                report.records.push_back(record);
            }
        } catch (const std::exception& e) {
            report.failures.push_back("theta_root " + std::to_string(i) + ": " + e.what());
        }
    }
    if (report.r > 0 && spec.b >= 1) {
        try {
            for (const auto& beta : roots_all(spec.B, opts.solve))
                for (int copy = 0; copy < report.r; ++copy) {
                    RootRecord record;
                    record.z = beta;
                    record.from_b_root = true;
                    report.records.push_back(record);
                }
        } catch (const std::exception& e) {
            report.failures.push_back(std::string("b_roots: ") + e.what());
        }
    }

    bool residuals_ok = true;
    for (auto& record : report.records) {
        detail::polish_record(spec, m, record);
        record.curve = curve_membership(spec, record.z, opts.curve_tol);
        if (record.residual > opts.residual_tol) residuals_ok = false;
    }
    report.located_count = static_cast<long>(report.records.size());

    if (static_cast<long>(report.theta_roots.size()) != report.p)
        report.verdict = Verdict::BelowThreshold;
    else if (report.located_count == report.expected_count && residuals_ok && report.failures.empty())
        report.verdict = Verdict::Complete;
    else
        report.verdict = Verdict::Incomplete;
    return report;
}

/// Smallest achievable max pointwise distance over perfect matchings of the
/// two multisets (bottleneck assignment); +inf when the sizes differ.
inline double matched_max_distance(const std::vector<ComplexNum>& lhs,
                                   const std::vector<ComplexNum>& rhs) {
    if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = lhs.size();
    if (n == 0) return 0.0;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            dist[i][j] = std::abs(lhs[i] - rhs[j]);
            values.push_back(dist[i][j]);
        }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    const auto has_perfect_matching = [&](double threshold) {
        std::vector<int> match(n, -1);
        std::vector<char> visited;
        const auto augment = [&](auto&& self, std::size_t i) -> bool {
            for (std::size_t j = 0; j < n; ++j) {
                if (dist[i][j] > threshold || visited[j]) continue;
                visited[j] = 1;
                if (match[j] < 0 || self(self, static_cast<std::size_t>(match[j]))) {
                    match[j] = static_cast<int>(i);
                    return true;
                }
            }
            return false;
        };
        for (std::size_t i = 0; i < n; ++i) {
            visited.assign(n, 0);
            if (!augment(augment, i)) return false;
        }
        return true;
    };

    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (has_perfect_matching(values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return values[lo];
}

struct VerifyReport {
    long on_curve = 0;
    long a_zero = 0;
    long off_curve = 0;
    bool pass = false;
    double max_match_distance = 0.0;
    long brute_count = 0;
    long located_count = 0;
    Verdict locate_verdict = Verdict::Incomplete;
};

/// Brute-force check at small m: expand H_m, solve for all roots, classify
/// each against the curve, and measure the bottleneck distance to the
/// locator's output. PASS means no root is off the curve.
inline VerifyReport verify_roots_on_curve(const FamilySpec& spec, long m, double tol,
                                   const LocateOptions& opts = {}) {
    VerifyReport report;
    const ComplexPoly h = coefficients(spec, m);
    std::vector<ComplexNum> brute;
    if (h.degree() >= 1) brute = roots_all(h, opts.solve);
    report.brute_count = static_cast<long>(brute.size());
    for (const auto& z : brute) {
        switch (curve_membership(spec, z, tol).tag) {
            case CurveTag::OnCurve: ++report.on_curve; break;
            case CurveTag::AZero: ++report.a_zero; break;
            case CurveTag::OffCurve: ++report.off_curve; break;
        }
    }
    report.pass = report.off_curve == 0;

    const LocateReport located = locate_roots(spec, m, opts);
    report.locate_verdict = located.verdict;
    report.located_count = located.located_count;
    std::vector<ComplexNum> located_roots;
    located_roots.reserve(located.records.size());
    for (const auto& record : located.records) located_roots.push_back(record.z);
    report.max_match_distance = matched_max_distance(brute, located_roots);
    return report;
}

}  // namespace rootcurve
