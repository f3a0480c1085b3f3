#include "scs/phasespace.hpp"

#include <cmath>
#include <string>

namespace scs {

namespace {

constexpr double two_pi = 2.0 * pi;
constexpr double constraint_tol = 1e-12;
constexpr double small_l = 1e-6;

}  // namespace

void PhasePoint::validate() const {
    if (!(theta >= 0.0 && theta <= pi)) {
        throw DomainError("PhasePoint: theta outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi < two_pi)) {
        throw DomainError("PhasePoint: phi outside [0, 2pi)");
    }
    if (!(alpha >= 0.0 && alpha < two_pi)) {
        throw DomainError("PhasePoint: alpha outside [0, 2pi)");
    }
    if (!(l >= 0.0) || !std::isfinite(l)) {
        throw DomainError("PhasePoint: l must be finite and non-negative");
    }
}

RealVec3 unit_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

VectorPhasePoint to_vector(const PhasePoint& p) {
    p.validate();
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const double cp = std::cos(p.phi), sp = std::sin(p.phi);
    const RealVec3 e_theta{ct * cp, ct * sp, -st};
    const RealVec3 e_phi{-sp, cp, 0.0};
    const double a = -p.l * std::cos(p.alpha);
    const double b = p.l * std::sin(p.alpha);
    VectorPhasePoint v;
    v.x = unit_vector(p.theta, p.phi);
    for (int i = 0; i < 3; ++i) {
        v.lvec[i] = a * e_theta[i] + b * e_phi[i];
    }
    return v;
}

ComplexVec3 phase_to_z(const PhasePoint& p) {
    p.validate();
    const double ch = std::cosh(p.l), sh = std::sinh(p.l);
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const double cp = std::cos(p.phi), sp = std::sin(p.phi);
    const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
    return {Complex(ch * st * cp, sh * (sa * cp * ct - ca * sp)),
            Complex(ch * st * sp, sh * (sa * sp * ct + ca * cp)),
            Complex(ch * ct, -sh * sa * st)};
}

ComplexVec3 vec_phase_to_z(const VectorPhasePoint& v) {
    const double r2 = dot(v.x, v.x);
    if (std::abs(r2 - 1.0) > constraint_tol) {
        throw DomainError("vec_phase_to_z: x is not a unit vector (residual " + std::to_string(r2 - 1.0) + ")");
    }
    if (std::abs(dot(v.lvec, v.x)) > constraint_tol) {
        throw DomainError("vec_phase_to_z: lvec is not tangent to the sphere");
    }
    const double l = std::sqrt(dot(v.lvec, v.lvec));
    const double ch = std::cosh(l);
    // sinh(l)/l, series below small_l
    const double shc = l < small_l ? 1.0 + l * l / 6.0 : std::sinh(l) / l;
    const RealVec3 lx = cross(v.lvec, v.x);
    return {Complex(ch * v.x[0], shc * lx[0]), Complex(ch * v.x[1], shc * lx[1]), Complex(ch * v.x[2], shc * lx[2])};
}

ConstraintResiduals z_constraint_residuals(const ComplexVec3& z, const std::optional<PhasePoint>& p) {
    ConstraintResiduals r{z.dot(z) - 1.0, std::nullopt};
    if (p) {
        r.radial = z.norm2() - std::cosh(2.0 * p->l);
    }
    return r;
}

PhasePoint sample_phase_point(std::mt19937_64& rng, double l_max) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    PhasePoint p;
    p.theta = std::acos(1.0 - 2.0 * u01(rng));
    p.phi = two_pi * u01(rng);
    p.alpha = two_pi * u01(rng);
    p.l = l_max * u01(rng);
    if (p.phi >= two_pi) p.phi = 0.0;
    if (p.alpha >= two_pi) p.alpha = 0.0;
    return p;
}

}  // namespace scs
