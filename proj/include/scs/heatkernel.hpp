#pragma once

#include "scs/types.hpp"

/** \file heatkernel.hpp
 *
 *  \brief Heat kernel of the hyperbolic plane H^2 and the density h(l) of the Bargmann measure.
 *
 *  \f[
 *  k(\rho,t) = \sqrt{2}(4\pi t)^{-3/2} e^{-t/4}
 *      \int_\rho^\infty \frac{s e^{-s^2/4t}}{\sqrt{\cosh s - \cosh\rho}}\,ds,
 *  \qquad h(l) = 4\pi k(2l,1)\sinh 2l
 *  \f]
 *
 *  The inner integral is taken in u with s = rho + u^2, which makes the integrand
 *  smooth at the lower limit, and cosh s - cosh rho is formed as
 *  2 sinh(rho + u^2/2) sinh(u^2/2) to avoid cancellation. The Gaussian factor
 *  e^{-rho^2/4t} is carried in log form so that h(l) P_j(cosh 2l) keeps full
 *  relative accuracy across its ~50 decades of range.
 */

namespace scs {

enum class Exec { serial, parallel };

struct HeatKernelConfig {
    double t = 1.0;          ///< diffusion time
    int n_nodes = 32;        ///< Gauss-Legendre order per panel of the inner u-integral
    double tail_cut = 1e-14; ///< bound on the truncated tail relative to the inner integral
    int l_order = 24;        ///< Gauss-Legendre order per unit l-panel in moment()

    void validate() const;
};

/// log k(rho, cfg.t). Throws DomainError for rho < 0, AccuracyError if the tail cannot be certified.
double log_heat_kernel_h2(double rho, const HeatKernelConfig& cfg);

double heat_kernel_h2(double rho, const HeatKernelConfig& cfg);

/// log(4 pi k(2l, cfg.t) sinh 2l); -inf at l = 0.
double log_heat_density(double l, const HeatKernelConfig& cfg);

/// log h(l); always at t = 1 regardless of cfg.t.
double log_density_h(double l, const HeatKernelConfig& cfg);

/// h(l) = 4 pi k(2l, 1) sinh 2l.
double density_h(double l, const HeatKernelConfig& cfg);

/// The same density written with the collapsed constant e^{-1/4} sinh(2l) / sqrt(2 pi).
double density_h_explicit(double l, const HeatKernelConfig& cfg);

/// Upper limit of the l-integration in moment(): t j + 10 sqrt(t).
double moment_cutoff(int j, double t);

/** \int_0^L 4 pi k(2l, t) sinh(2l) P_j(cosh 2l) dl over unit panels, L = moment_cutoff(j, t).

    Equals e^{t j(j+1)}; at t = 1 this is the moment condition on h(l). For j >= 8
    the sum is accumulated as a log-sum-exp. Requires 0 <= j <= 12.
 */
double moment(int j, const HeatKernelConfig& cfg, Exec exec = Exec::parallel);

struct HeatResidual {
    double residual;    ///< |dk/dt - (1/sinh rho) d/drho (sinh rho dk/drho)|
    double dk_dt;       ///< central difference in t
    double laplacian;   ///< k'' + coth(rho) k'
    double term_scale;  ///< max(|dk/dt|, |k''|, |coth(rho) k'|)
};

/// Finite-difference check of the heat equation with steps 1e-3; rho > 0.1, t in [0.5, 2].
HeatResidual heat_equation_residual(double rho, double t, const HeatKernelConfig& cfg);

}  // namespace scs
