#include "scs/quadrature.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "scs/types.hpp"

namespace scs {

std::string to_string(Coordinate c) {
    switch (c) {
        case Coordinate::theta: return "theta";
        case Coordinate::phi: return "phi";
        case Coordinate::alpha: return "alpha";
        case Coordinate::l: return "l";
        case Coordinate::rho: return "rho";
        case Coordinate::u: return "u";
    }
    return "unknown";
}

double QuadratureGrid::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

namespace {

// (P_n(x), P_n'(x))
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureGrid gauss_legendre(int order) {
    if (order < 1) {
        throw DomainError("gauss_legendre: order must be positive");
    }
    QuadratureGrid g;
    g.nodes.resize(order);
    g.weights.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_with_derivative(order, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                break;
            }
        }
        const double dp = legendre_with_derivative(order, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.nodes[order - 1 - i] = x;
        g.weights[i] = w;
        g.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        g.nodes[order / 2] = 0.0;
    }
    return g;
}

QuadratureGrid composite_gauss_legendre(std::span<const double> breakpoints, int order, Coordinate c) {
    const QuadratureGrid ref = gauss_legendre(order);
    QuadratureGrid g;
    g.coordinate = c;
    if (breakpoints.size() < 2) {
        return g;
    }
    g.nodes.reserve((breakpoints.size() - 1) * order);
    g.weights.reserve((breakpoints.size() - 1) * order);
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double a = breakpoints[p], b = breakpoints[p + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int k = 0; k < order; ++k) {
            g.nodes.push_back(mid + half * ref.nodes[k]);
            g.weights.push_back(half * ref.weights[k]);
        }
    }
    return g;
}

QuadratureGrid panel_grid(int n_panels, double width, int order, Coordinate c) {
    std::vector<double> b(n_panels + 1);
    for (int i = 0; i <= n_panels; ++i) {
        b[i] = i * width;
    }
    return composite_gauss_legendre(b, order, c);
}

QuadratureGrid uniform_angle_grid(int n, Coordinate c) {
    if (n < 1) {
        throw DomainError("uniform_angle_grid: n must be positive");
    }
    QuadratureGrid g;
    g.coordinate = c;
    g.nodes.resize(n);
    g.weights.assign(n, 2.0 * pi / n);
    for (int k = 0; k < n; ++k) {
        g.nodes[k] = 2.0 * pi * k / n;
    }
    return g;
}

QuadratureGrid polar_grid(int n) {
    QuadratureGrid g = gauss_legendre(n);
    g.coordinate = Coordinate::theta;
    for (auto& x : g.nodes) {
        x = std::acos(x);
    }
    return g;
}

}  // namespace scs
