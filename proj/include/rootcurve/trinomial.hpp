#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rootcurve/complex_poly.hpp"
#include "rootcurve/errors.hpp"
#include "rootcurve/family.hpp"
#include "rootcurve/root_solver.hpp"
#include "rootcurve/theta_kernel.hpp"

namespace rootcurve {

/// Shared threshold for treating A(z) as numerically zero; the locator's
/// AZero classification uses the same test so the two modules agree.
inline constexpr double kDegenerateLeadingTol = 1e-8;

/// Quotients with |q - 1| below this go through the q -> 1 limit formulas.
inline constexpr double kQNearOneTol = 1e-7;

inline bool leading_is_degenerate(const FamilySpec& spec, ComplexNum z, double tol) {
    const double magnitude = std::abs(eval(spec.A, z));
    const double scale = spec.A.coeff_scale() * std::pow(1.0 + std::abs(z), spec.a);
    return magnitude <= tol * scale;
}

/// D(t) = 1 + B(z) t + A(z) t^n at fixed z, as a polynomial in t.
inline ComplexPoly denominator_at(const FamilySpec& spec, ComplexNum z,
                                  double tol = kDegenerateLeadingTol) {
    if (leading_is_degenerate(spec, z, tol))
        throw DegenerateLeading("denominator_at: A(z) is numerically zero at this z");
    std::vector<ComplexNum> c(static_cast<std::size_t>(spec.n) + 1, ComplexNum{0.0, 0.0});
    c[0] = ComplexNum{1.0, 0.0};
    c[1] = eval(spec.B, z);
    c[static_cast<std::size_t>(spec.n)] = eval(spec.A, z);
    return ComplexPoly(std::move(c));
}

/// Roots t_k of the denominator at z, sorted by (modulus, argument), and the
/// quotients q_k = t_k/t_0. When the principal quotient lands on the unit
/// circle, theta records the angle with q_1 = e^{2 i theta}.
struct DenominatorRoots {
    ComplexNum z{0.0, 0.0};
    std::vector<ComplexNum> t;
    std::vector<ComplexNum> q;  // q[k-1] = t[k]/t[0], k = 1..n-1
    std::optional<double> theta;
};

inline constexpr double kUnitModulusTol = 1e-6;

inline DenominatorRoots roots_and_quotients(const FamilySpec& spec, ComplexNum z,
                                            const RootSolveOptions& opts = {},
                                            double tol = kDegenerateLeadingTol) {
    DenominatorRoots out;
    out.z = z;
    out.t = roots_all(denominator_at(spec, z, tol), opts);
    out.q.reserve(out.t.size() - 1);
    for (std::size_t k = 1; k < out.t.size(); ++k) out.q.push_back(out.t[k] / out.t[0]);
    if (!out.q.empty() && std::abs(std::abs(out.q[0]) - 1.0) <= kUnitModulusTol)
        out.theta = 0.5 * std::arg(out.q[0]);
    return out;
}

/// Certifies, at this z, that the rotated quotients e^{-i theta} q_k are roots
/// of P_theta. Returns the max |P_theta(e^{-i theta} q_k)| over k = 1..n-1.
inline double quotient_trinomial_residual(const DenominatorRoots& dr, int n) {
    if (!dr.theta.has_value())
        throw std::invalid_argument("quotient_trinomial_residual: no unit-circle quotient at this z");
    const ComplexPoly p = make_p_theta(n, *dr.theta);
    const ComplexNum rot = std::polar(1.0, -*dr.theta);
    double worst = 0.0;
    for (const auto& quotient : dr.q) worst = std::max(worst, std::abs(eval(p, rot * quotient)));
    return worst;
}

/// The q-difference operator (D_q P)(t) = (P(t) - P(qt)) / (t - qt); for
/// |q - 1| below threshold this is the limit P'(t).
inline ComplexNum dq_operator(const ComplexPoly& p, ComplexNum q, ComplexNum t) {
    if (std::abs(q - ComplexNum{1.0, 0.0}) < kQNearOneTol) return eval(derivative(p), t);
    return (eval(p, t) - eval(p, q * t)) / (t - q * t);
}

/// Both routes to the q-discriminant of D(t) = 1 + Bt + At^n.
struct QDiscResult {
    ComplexNum product_form{0.0, 0.0};
    ComplexNum closed_form{0.0, 0.0};
    int sign_factor = 1;  // empirical ratio of the two forms
    bool limit_path = false;
};

/// product form:  (-1)^{n(n-1)/2} A^{n-2} prod_i (D_q D)(t_i)  over the roots
/// closed form:   A^{n-2} (B^n q^{n-1} s_{n-1}^{n-1} + (-1)^{n-1} A s_n^n)
/// with s_k = (1-q^k)/(1-q) evaluated as the geometric sum, so the q -> 1
/// limit (s_{n-1} = n-1, s_n = n) is the classical discriminant up to sign.
/// The forms agree in magnitude; their ratio is reported as sign_factor.
inline QDiscResult q_discriminant(const FamilySpec& spec, ComplexNum z, ComplexNum q,
                                  const RootSolveOptions& opts = {},
                                  double tol = kDegenerateLeadingTol) {
    const int n = spec.n;
    const ComplexPoly d = denominator_at(spec, z, tol);
    const ComplexNum a = eval(spec.A, z);
    const ComplexNum b = eval(spec.B, z);

    QDiscResult out;
    out.limit_path = std::abs(q - ComplexNum{1.0, 0.0}) < kQNearOneTol;

    ComplexNum s_n1, s_n, q_pow;
    if (out.limit_path) {
        s_n1 = ComplexNum{static_cast<double>(n - 1), 0.0};
        s_n = ComplexNum{static_cast<double>(n), 0.0};
        q_pow = ComplexNum{1.0, 0.0};
    } else {
        s_n1 = ComplexNum{0.0, 0.0};
        for (int j = n - 2; j >= 0; --j) s_n1 = s_n1 * q + 1.0;
        s_n = s_n1 * q + 1.0;
        q_pow = ipow(q, static_cast<unsigned long>(n - 1));
    }
    const double parity = ((n - 1) % 2 == 0) ? 1.0 : -1.0;
    out.closed_form = ipow(a, static_cast<unsigned long>(n - 2)) *
                      (ipow(b, static_cast<unsigned long>(n)) * q_pow *
                           ipow(s_n1, static_cast<unsigned long>(n - 1)) +
                       parity * a * ipow(s_n, static_cast<unsigned long>(n)));

    ComplexNum prod{1.0, 0.0};
    for (const auto& root : roots_all(d, opts)) prod *= dq_operator(d, q, root);
    const double front = ((static_cast<long>(n) * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    out.product_form = front * ipow(a, static_cast<unsigned long>(n - 2)) * prod;

    const ComplexNum denom = out.closed_form;
    if (denom != ComplexNum{0.0, 0.0})
        out.sign_factor = (std::real(out.product_form / denom) >= 0.0) ? 1 : -1;
    return out;
}

}  // namespace rootcurve
