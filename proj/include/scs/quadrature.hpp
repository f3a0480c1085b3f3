#pragma once

#include <span>
#include <string>
#include <vector>

namespace scs {

enum class Coordinate { theta, phi, alpha, l, rho, u };

std::string to_string(Coordinate c);

/// Nodes and weights for one integration coordinate.
struct QuadratureGrid {
    Coordinate coordinate = Coordinate::l;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double total() const;
};

/// Gauss-Legendre rule of the given order on [-1, 1] (Newton on the Legendre recurrence).
QuadratureGrid gauss_legendre(int order);

/// Composite Gauss-Legendre over consecutive panels [b_0,b_1], [b_1,b_2], ...
QuadratureGrid composite_gauss_legendre(std::span<const double> breakpoints, int order, Coordinate c);

/// Equal panels of width `width` covering [0, n_panels * width].
QuadratureGrid panel_grid(int n_panels, double width, int order, Coordinate c);

/// 2 pi k / n with equal weights 2 pi / n; exact for trigonometric polynomials of degree < n.
QuadratureGrid uniform_angle_grid(int n, Coordinate c);

/// theta = arccos(x_k) for Gauss-Legendre x_k; weights integrate sin(theta) d(theta) and sum to 2.
QuadratureGrid polar_grid(int n);

/** Product grid over (phi, theta, alpha, l) for the Bargmann scalar product.

    Point weight = norm * w_phi * w_theta * w_alpha * w_l, where the l-weights
    already carry the density h(l). Points are enumerated with phi fastest and
    l slowest.
 */
struct ProductGrid {
    QuadratureGrid phi;
    QuadratureGrid theta;
    QuadratureGrid alpha;
    QuadratureGrid l;
    double norm = 1.0;

    std::size_t size() const { return phi.size() * theta.size() * alpha.size() * l.size(); }
};

}  // namespace scs
