#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace scs {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a quadrature cannot certify its requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_bound(achieved) {}
    double achieved_bound;
};

/// Raised when an infinite series fails to settle.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Termination rule shared by every j-series (overlap, coordinate kernel).
struct SeriesConfig {
    double rel_tol = 1e-15;
    int min_terms = 5;
    int max_terms = 200;
};

/// A point of C^3. Coherent-state labels live on the quadric z.z = 1.
struct ComplexVec3 {
    std::array<Complex, 3> v{};

    ComplexVec3() = default;
    ComplexVec3(Complex a, Complex b, Complex c) : v{a, b, c} {}

    Complex& operator[](std::size_t i) { return v[i]; }
    const Complex& operator[](std::size_t i) const { return v[i]; }

    /// Bilinear product z.w (no conjugation).
    Complex dot(const ComplexVec3& w) const { return v[0] * w[0] + v[1] * w[1] + v[2] * w[2]; }

    ComplexVec3 conj() const { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

    /// Hermitian square norm z.z*.
    double norm2() const { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }
};

using RealVec3 = std::array<double, 3>;

inline RealVec3 cross(const RealVec3& a, const RealVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const RealVec3& a, const RealVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// x.z for a real x and complex z.
inline Complex dot(const RealVec3& x, const ComplexVec3& z) { return x[0] * z[0] + x[1] * z[1] + x[2] * z[2]; }

}  // namespace scs
