#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rootcurve {

using ComplexNum = std::complex<double>;

/// Integer power of a complex scalar by repeated squaring.
inline ComplexNum ipow(ComplexNum base, unsigned long exp) {
    ComplexNum result{1.0, 0.0};
    while (exp != 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

/// Dense univariate polynomial with complex coefficients in ascending order:
/// coeffs[k] multiplies x^k. The zero polynomial is the empty list; any other
/// value keeps a nonzero last coefficient (only exactly-zero leading
/// coefficients are stripped, never thresholded).
class ComplexPoly {
  public:
    ComplexPoly() = default;

    explicit ComplexPoly(std::vector<ComplexNum> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    ComplexPoly(std::initializer_list<ComplexNum> coeffs) : coeffs_(coeffs) { normalize(); }

    static ComplexPoly constant(ComplexNum c) { return ComplexPoly{{c}}; }

    /// c * x^k
    static ComplexPoly monomial(ComplexNum c, std::size_t k) {
        std::vector<ComplexNum> v(k + 1, ComplexNum{0.0, 0.0});
        v[k] = c;
        return ComplexPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// Degree of a nonzero polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<ComplexNum>& coeffs() const { return coeffs_; }

    ComplexNum coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : ComplexNum{0.0, 0.0};
    }

    ComplexNum leading_coeff() const {
        return coeffs_.empty() ? ComplexNum{0.0, 0.0} : coeffs_.back();
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double coeff_scale() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
        return s;
    }

    bool operator==(const ComplexPoly& other) const { return coeffs_ == other.coeffs_; }

  private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == ComplexNum{0.0, 0.0}) coeffs_.pop_back();
    }

    std::vector<ComplexNum> coeffs_;
};

/// Horner evaluation.
inline ComplexNum eval(const ComplexPoly& p, ComplexNum z) {
    ComplexNum acc{0.0, 0.0};
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

/// Sum of |coeffs[k]| * |z|^k; the natural scale for residuals of eval(p, z).
inline double eval_scale(const ComplexPoly& p, ComplexNum z) {
    double acc = 0.0;
    const double az = std::abs(z);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * az + std::abs(p.coeffs()[i]);
    return acc;
}

inline ComplexPoly derivative(const ComplexPoly& p) {
    if (p.degree() <= 0) return ComplexPoly{};
    std::vector<ComplexNum> d(p.coeffs().size() - 1);
    for (std::size_t k = 1; k < p.coeffs().size(); ++k)
        d[k - 1] = static_cast<double>(k) * p.coeffs()[k];
    return ComplexPoly(std::move(d));
}

inline ComplexPoly add(const ComplexPoly& p, const ComplexPoly& q) {
    std::vector<ComplexNum> s(std::max(p.coeffs().size(), q.coeffs().size()), ComplexNum{0.0, 0.0});
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) s[k] += p.coeffs()[k];
    for (std::size_t k = 0; k < q.coeffs().size(); ++k) s[k] += q.coeffs()[k];
    return ComplexPoly(std::move(s));
}

inline ComplexPoly scale(const ComplexPoly& p, ComplexNum c) {
    std::vector<ComplexNum> s(p.coeffs());
    for (auto& v : s) v *= c;
    return ComplexPoly(std::move(s));
}

inline ComplexPoly sub(const ComplexPoly& p, const ComplexPoly& q) {
    return add(p, scale(q, ComplexNum{-1.0, 0.0}));
}

inline ComplexPoly mul(const ComplexPoly& p, const ComplexPoly& q) {
    if (p.is_zero() || q.is_zero()) return ComplexPoly{};
    std::vector<ComplexNum> s(p.coeffs().size() + q.coeffs().size() - 1, ComplexNum{0.0, 0.0});
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        for (std::size_t j = 0; j < q.coeffs().size(); ++j) s[i + j] += p.coeffs()[i] * q.coeffs()[j];
    return ComplexPoly(std::move(s));
}

inline ComplexPoly pow(const ComplexPoly& p, unsigned k) {
    ComplexPoly result{{ComplexNum{1.0, 0.0}}};
    ComplexPoly base = p;
    while (k != 0) {
        if (k & 1u) result = mul(result, base);
        base = mul(base, base);
        k >>= 1u;
    }
    return result;
}

/// Synthetic division by (x - root); the remainder eval(p, root) is discarded.
/// The caller is responsible for root actually being (close to) a root.
inline ComplexPoly deflate(const ComplexPoly& p, ComplexNum root) {
    if (p.degree() < 1) throw std::invalid_argument("deflate: polynomial must have degree >= 1");
    const auto& c = p.coeffs();
    std::vector<ComplexNum> q(c.size() - 1);
    ComplexNum acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        q[i] = acc;
        acc = c[i] + acc * root;
    }
    return ComplexPoly(std::move(q));
}

/// Determinant of the Sylvester matrix of p and q, by partially pivoted
/// elimination in complex arithmetic. Equals lc(p)^deg(q) * prod q(root_i(p)).
inline ComplexNum resultant(const ComplexPoly& p, const ComplexPoly& q) {
    if (p.is_zero() || q.is_zero())
        throw std::invalid_argument("resultant: inputs must be nonzero");
    const int dp = p.degree();
    const int dq = q.degree();
    if (dp == 0 && dq == 0) return ComplexNum{1.0, 0.0};
    if (dp == 0) return ipow(p.leading_coeff(), static_cast<unsigned long>(dq));
    if (dq == 0) return ipow(q.leading_coeff(), static_cast<unsigned long>(dp));

    const int n = dp + dq;
    std::vector<std::vector<ComplexNum>> m(static_cast<std::size_t>(n),
                                           std::vector<ComplexNum>(static_cast<std::size_t>(n), ComplexNum{0.0, 0.0}));
    for (int row = 0; row < dq; ++row)
        for (int j = 0; j <= dp; ++j) m[row][row + j] = p.coeffs()[static_cast<std::size_t>(dp - j)];
    for (int row = 0; row < dp; ++row)
        for (int j = 0; j <= dq; ++j) m[dq + row][row + j] = q.coeffs()[static_cast<std::size_t>(dq - j)];

    ComplexNum det{1.0, 0.0};
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        if (m[pivot][col] == ComplexNum{0.0, 0.0}) return ComplexNum{0.0, 0.0};
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int row = col + 1; row < n; ++row) {
            const ComplexNum f = m[row][col] / m[col][col];
            if (f == ComplexNum{0.0, 0.0}) continue;
            for (int j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return det;
}

/// (-1)^{d(d-1)/2} * Res(p, p') / lc(p).
inline ComplexNum discriminant(const ComplexPoly& p) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
    if (d == 1) return ComplexNum{1.0, 0.0};
    const ComplexNum res = resultant(p, derivative(p));
    const double sign = (static_cast<long>(d) * (d - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * res / p.leading_coeff();
}

}  // namespace rootcurve
