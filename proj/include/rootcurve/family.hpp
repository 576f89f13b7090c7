#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/root_solver.hpp"

namespace rootcurve {

/// The triple (A, B, n) generating the family H_m via
///   sum_m H_m(z) t^m = 1 / (1 + B(z) t + A(z) t^n),
/// equivalently H_m = -B H_{m-1} - A H_{m-n} with H_m = (-1)^m B^m for m < n.
struct FamilySpec {
    int n = 2;
    ComplexPoly A;
    ComplexPoly B;
    int a = 0;  // deg A
    int b = 0;  // deg B (-1 when B is identically zero)
};

inline FamilySpec make_family_spec(int n, ComplexPoly A, ComplexPoly B) {
    if (n < 2) throw std::invalid_argument("family spec: n must be >= 2");
    if (A.is_zero()) throw std::invalid_argument("family spec: A must not be identically zero");
    FamilySpec spec;
    spec.n = n;
    spec.a = A.degree();
    spec.b = B.degree();
    spec.A = std::move(A);
    spec.B = std::move(B);
    return spec;
}

/// A complex value mantissa * exp(log_scale), with |mantissa| in [1, 2) unless
/// the value is exactly zero. Carries H_m(z) past the range of double.
struct ScaledValue {
    ComplexNum mantissa{0.0, 0.0};
    double log_scale = 0.0;

    static ScaledValue normalized(ComplexNum value, double log_scale) {
        if (value == ComplexNum{0.0, 0.0}) return {};
        const int e = std::ilogb(std::abs(value));
        return {ComplexNum{std::ldexp(value.real(), -e), std::ldexp(value.imag(), -e)},
                log_scale + e * M_LN2};
    }

    /// The represented value, when it fits in a double.
    ComplexNum to_complex() const { return mantissa * std::exp(log_scale); }
};

/// H_m(z) and H'_m(z) from one pass of the rescaled recurrence. `value` and
/// `deriv` share the same frame: true H_m(z) = value * exp(log_scale).
struct RecurrencePoint {
    ComplexNum value{0.0, 0.0};
    ComplexNum deriv{0.0, 0.0};
    double log_scale = 0.0;
    double window_peak = 0.0;  // max |H_k(z)| over the trailing window, same frame

    /// |H_m(z)| relative to the running magnitude of the recurrence; immune to
    /// the exponential growth of the family.
    double relative_residual() const {
        if (window_peak == 0.0) return 0.0;
        return std::abs(value) / window_peak;
    }
};

inline RecurrencePoint recurrence_eval(const FamilySpec& spec, long m, ComplexNum z) {
    if (m < 0) throw std::invalid_argument("recurrence_eval: m must be >= 0");
    const int n = spec.n;
    const ComplexNum az = eval(spec.A, z);
    const ComplexNum bz = eval(spec.B, z);
    const ComplexNum apz = eval(derivative(spec.A), z);
    const ComplexNum bpz = eval(derivative(spec.B), z);

    const std::size_t win = static_cast<std::size_t>(n);
    std::vector<ComplexNum> h(win, ComplexNum{0.0, 0.0});
    std::vector<ComplexNum> d(win, ComplexNum{0.0, 0.0});

    // initial segment H_k = (-1)^k B(z)^k, H'_k = (-1)^k k B(z)^{k-1} B'(z)
    ComplexNum bpow{1.0, 0.0};  // B(z)^k
    ComplexNum bpow_prev{0.0, 0.0};
    for (long k = 0; k < n && k <= m; ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        h[static_cast<std::size_t>(k)] = sgn * bpow;
        d[static_cast<std::size_t>(k)] = sgn * static_cast<double>(k) * bpow_prev * bpz;
        bpow_prev = bpow;
        bpow *= bz;
    }

    double log_scale = 0.0;
    const double rescale_trigger = std::ldexp(1.0, 512);
    for (long k = n; k <= m; ++k) {
        const std::size_t slot = static_cast<std::size_t>(k % n);       // also holds H_{k-n}
        const std::size_t prev = static_cast<std::size_t>((k - 1) % n);
        const ComplexNum hk = -(bz * h[prev] + az * h[slot]);
        const ComplexNum dk = -(bz * d[prev] + bpz * h[prev] + az * d[slot] + apz * h[slot]);
        h[slot] = hk;
        d[slot] = dk;
        const double mag = std::max(std::abs(hk), std::abs(dk));
        if (mag > rescale_trigger) {
            for (auto& v : h) v /= mag;
            for (auto& v : d) v /= mag;
            log_scale += std::log(mag);
        }
    }

    RecurrencePoint out;
    out.log_scale = log_scale;
    const std::size_t last = static_cast<std::size_t>(m % n);
    out.value = h[last];
    out.deriv = d[last];
    const long filled = std::min<long>(m + 1, n);
    for (long k = 0; k < filled; ++k) {
        const std::size_t idx = static_cast<std::size_t>((m - k) % n);
        out.window_peak = std::max(out.window_peak, std::abs(h[idx]));
    }
    return out;
}

/// H_m(z) as a scaled value; runs the length-(n+1) recurrence at fixed z with
/// window renormalization whenever the magnitude passes 2^512.
inline ScaledValue eval_scaled(const FamilySpec& spec, long m, ComplexNum z) {
    const RecurrencePoint rp = recurrence_eval(spec, m, z);
    return ScaledValue::normalized(rp.value, rp.log_scale);
}

/// H_m as an explicit polynomial via the recurrence on coefficients.
/// Intended for moderate m; coefficient growth is the caller's concern.
inline ComplexPoly coefficients(const FamilySpec& spec, long m) {
    if (m < 0) throw std::invalid_argument("coefficients: m must be >= 0");
    const int n = spec.n;
    std::vector<ComplexPoly> window(static_cast<std::size_t>(n));
    const ComplexPoly minus_b = scale(spec.B, ComplexNum{-1.0, 0.0});
    window[0] = ComplexPoly{{ComplexNum{1.0, 0.0}}};
    for (long k = 1; k < n && k <= m; ++k)
        window[static_cast<std::size_t>(k)] = mul(window[static_cast<std::size_t>(k - 1)], minus_b);
    if (m < n) return window[static_cast<std::size_t>(m)];
    for (long k = n; k <= m; ++k) {
        const std::size_t slot = static_cast<std::size_t>(k % n);
        const std::size_t prev = static_cast<std::size_t>((k - 1) % n);
        window[slot] = scale(add(mul(spec.B, window[prev]), mul(spec.A, window[slot])), ComplexNum{-1.0, 0.0});
    }
    return window[static_cast<std::size_t>(m % n)];
}

namespace detail {

// exact for the sizes used here; intermediate products kept in 128 bits
inline double binomial(long top, long k) {
    if (k < 0 || k > top) return 0.0;
    if (k > top - k) k = top - k;
    unsigned __int128 acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(top - k + i);
        acc /= static_cast<unsigned __int128>(i);
    }
    return static_cast<double>(acc);
}

}  // namespace detail

/// Independent route to H_m: expand 1/(1 + (Bt + At^n)) as a geometric series
/// and collect the coefficient of t^m through binomial sums,
///   H_m = sum_j (-1)^{m-(n-1)j} C(m-(n-1)j, j) A^j B^{m-nj}.
inline ComplexPoly series_oracle(const FamilySpec& spec, long m) {
    if (m < 0) throw std::invalid_argument("series_oracle: m must be >= 0");
    if (m > 64) throw std::invalid_argument("series_oracle: supported for m <= 64");
    const int n = spec.n;
    ComplexPoly acc;
    for (long j = 0; j * n <= m; ++j) {
        const long k = m - (n - 1) * j;  // total factors drawn from the k-th power
        const double c = detail::binomial(k, j);
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        ComplexPoly term = scale(mul(pow(spec.A, static_cast<unsigned>(j)),
                                     pow(spec.B, static_cast<unsigned>(m - n * j))),
                                 ComplexNum{sgn * c, 0.0});
        acc = add(acc, term);
    }
    return acc;
}

/// Degree cap for H_m: mb when nb > a, else pa + rb with m = np + r.
inline long degree_bound(const FamilySpec& spec, long m) {
    if (m < 0) throw std::invalid_argument("degree_bound: m must be >= 0");
    const long b = std::max(spec.b, 0);
    const long a = spec.a;
    const long p = m / spec.n;
    const long r = m % spec.n;
    const long bound = (spec.n * b > a) ? m * b : p * a + r * b;
    return std::max<long>(bound, 0);
}

/// Checks that B^r divides H_m (r = m mod n): the first r derivatives of H_m
/// must vanish at every root of B. Vacuously true for r = 0 or constant B.
inline bool b_multiplicity_check(const FamilySpec& spec, long m, double tol,
                                 const RootSolveOptions& opts = {}) {
    const long r = m % spec.n;
    if (r == 0 || spec.b < 1) return true;
    const std::vector<ComplexNum> beta = roots_all(spec.B, opts);
    ComplexPoly h = coefficients(spec, m);
    for (long j = 0; j < r; ++j) {
        for (const auto& root : beta) {
            const double residual = std::abs(eval(h, root));
            const double scale = eval_scale(h, root);
            if (residual > tol * std::max(scale, 1e-300)) return false;
        }
        h = derivative(h);
    }
    return true;
}

}  // namespace rootcurve
