#pragma once

#include <optional>
#include <random>

#include "scs/types.hpp"

namespace scs {

/** Point of T*S^2 in the coordinates (theta, phi, alpha, l).

    theta, phi locate x on the unit sphere; l >= 0 is the norm of the angular
    momentum and alpha fixes its direction in the tangent plane. With the local
    frame e_theta, e_phi the momentum is

        lvec = l (-cos(alpha) e_theta + sin(alpha) e_phi),

    which is the unique orientation for which phase_to_z and vec_phase_to_z agree.
 */
struct PhasePoint {
    double theta = 0.0;
    double phi = 0.0;
    double alpha = 0.0;
    double l = 0.0;

    /// Throws DomainError unless theta in [0,pi], phi and alpha in [0,2pi), l >= 0.
    void validate() const;
};

/// Position x on the unit sphere and tangent angular momentum lvec.
struct VectorPhasePoint {
    RealVec3 x{0.0, 0.0, 1.0};
    RealVec3 lvec{0.0, 0.0, 0.0};
};

RealVec3 unit_vector(double theta, double phi);

VectorPhasePoint to_vector(const PhasePoint& p);

/// z = cosh l x + i sinh l (lhat x x), written out in angles.
ComplexVec3 phase_to_z(const PhasePoint& p);

/// z = cosh|l| x + i (sinh|l|/|l|) lvec x x. Throws DomainError if x.x != 1 or lvec.x != 0 beyond 1e-12.
ComplexVec3 vec_phase_to_z(const VectorPhasePoint& v);

struct ConstraintResiduals {
    Complex quadric;               ///< z.z - 1
    std::optional<double> radial;  ///< z.z* - cosh 2l, when the phase point is known
};

ConstraintResiduals z_constraint_residuals(const ComplexVec3& z, const std::optional<PhasePoint>& p = std::nullopt);

/// Uniform angles, l uniform in [0, l_max].
PhasePoint sample_phase_point(std::mt19937_64& rng, double l_max);

}  // namespace scs
