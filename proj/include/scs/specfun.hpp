#pragma once

#include <span>

#include "scs/types.hpp"

/** \file specfun.hpp
 *
 *  \brief Legendre, associated Legendre and Gegenbauer polynomials, spherical harmonics.
 *
 *  Polynomials are evaluated by forward three-term recurrences and accept complex
 *  arguments; the coherent-state coefficients evaluate C_n^a at complex z_3 whose
 *  modulus reaches cosh 2l.
 */

namespace scs {

/// P_n(x) by (n+1)P_{n+1} = (2n+1)x P_n - n P_{n-1}.
Complex legendre_p(int n, Complex x);
double legendre_p(int n, double x);

/// P_n, P_n' and P_n'' from the derivative recurrence P_n' = P_{n-2}' + (2n-1)P_{n-1}.
struct LegendreJet {
    Complex p;
    Complex dp;
    Complex d2p;
};
LegendreJet legendre_p_jet(int n, Complex x);

/** Gegenbauer C_n^alpha(x), alpha >= 1/2.
    \f[
    n C_n^\alpha = 2(n+\alpha-1) x C_{n-1}^\alpha - (n+2\alpha-2) C_{n-2}^\alpha,
    \quad C_0^\alpha = 1,\ C_1^\alpha = 2\alpha x
    \f]
 */
Complex gegenbauer_c(int n, double alpha, Complex x);

/// Fills out[k] = C_k^alpha(x) for k = 0..out.size()-1.
void gegenbauer_c_all(double alpha, Complex x, std::span<Complex> out);

/// Associated Legendre P_n^m(x) with the Condon-Shortley factor (-1)^m. Returns 0 for m > n.
double assoc_legendre(int n, int m, double x);

/// Y_jm(theta, phi) = (-1)^{(m-|m|)/2} sqrt((2j+1)(j-|m|)!/(4 pi (j+|m|)!)) P_j^{|m|}(cos theta) e^{i m phi}.
Complex sph_harm(int j, int m, double theta, double phi);

/// log of (2p)!/p! * sqrt((j-p)!/(j+p)!), the m-dependent factor shared by both ket formulas.
double log_ket_factor(int j, int p);

/** sum_{j>=0} e^{-a j(j+1)} (2j+1) P_j(x).

    Stops once the bound e^{-a j(j+1)} (2j+1) R^j on the next term, with
    R = |x| + sqrt(|x|^2 + 1) >= |P_j(x)|^{1/j}, falls below rel_tol |sum| and
    keeps halving; throws ConvergenceError after max_terms.
 */
Complex heat_legendre_series(Complex x, double a, const SeriesConfig& cfg = {});

}  // namespace scs
