#pragma once

#include <stdexcept>
#include <string>

namespace rootcurve {

/// Iterative solver exhausted its iteration budget before convergence.
class NonConvergence : public std::runtime_error {
  public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A sum that must be real (by conjugate symmetry of its terms) came back
/// with a non-negligible imaginary part; signals an upstream root-solve failure.
class RealnessViolation : public std::runtime_error {
  public:
    explicit RealnessViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Leading coefficient A(z) is numerically zero, so the denominator
/// degenerates below degree n.
class DegenerateLeading : public std::runtime_error {
  public:
    explicit DegenerateLeading(const std::string& what) : std::runtime_error(what) {}
};

/// An assembled polynomial equation vanished identically.
class DegenerateEquation : public std::runtime_error {
  public:
    explicit DegenerateEquation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rootcurve
