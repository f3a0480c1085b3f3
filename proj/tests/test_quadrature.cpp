#include <doctest.h>

#include <cmath>

#include "scs/quadrature.hpp"
#include "scs/types.hpp"

using namespace scs;

namespace {

double integrate(const QuadratureGrid& g, auto f) {
    double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * f(g.nodes[i]);
    return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates monomials of degree < 2n exactly") {
    for (int n : {1, 2, 5, 16, 24, 40}) {
        QuadratureGrid g = gauss_legendre(n);
        REQUIRE(g.size() == std::size_t(n));
        CHECK(g.total() == doctest::Approx(2.0).epsilon(1e-14));
        for (int k = 0; k < 2 * n; ++k) {
            double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(integrate(g, [k](double x) { return std::pow(x, k); }) - exact) < 1e-14);
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g.weights[i] > 0.0);
            CHECK(std::abs(g.nodes[i] + g.nodes[g.size() - 1 - i]) < 1e-15);
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("panel_grid covers [0, n w]") {
    QuadratureGrid g = panel_grid(7, 0.5, 12, Coordinate::l);
    CHECK(g.coordinate == Coordinate::l);
    CHECK(g.size() == 84);
    CHECK(g.total() == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(integrate(g, [](double x) { return std::exp(-x); }) == doctest::Approx(1.0 - std::exp(-3.5)).epsilon(1e-14));
    for (double x : g.nodes) {
        CHECK(x > 0.0);
        CHECK(x < 3.5);
    }
}

TEST_CASE("composite_gauss_legendre with uneven breakpoints") {
    std::vector<double> b{0.0, 0.1, 1.0, 4.0};
    QuadratureGrid g = composite_gauss_legendre(b, 3, Coordinate::rho);
    CHECK(g.size() == 9);
    // piecewise rule of order 3 is exact for quintics on each panel
    CHECK(integrate(g, [](double x) { return x * x * x * x * x; }) == doctest::Approx(std::pow(4.0, 6) / 6).epsilon(1e-13));
    CHECK(composite_gauss_legendre(std::span<const double>(b.data(), 1), 3, Coordinate::rho).size() == 0);
}

TEST_CASE("uniform angle grid is exact for trigonometric polynomials of degree < n") {
    int n = 9;
    QuadratureGrid g = uniform_angle_grid(n, Coordinate::phi);
    CHECK(g.total() == doctest::Approx(2 * pi).epsilon(1e-15));
    for (int k = 1; k < n; ++k) {
        CHECK(std::abs(integrate(g, [k](double x) { return std::cos(k * x); })) < 1e-14);
        CHECK(std::abs(integrate(g, [k](double x) { return std::sin(k * x); })) < 1e-14);
    }
    CHECK(integrate(g, [n](double x) { return std::cos(n * x); }) == doctest::Approx(2 * pi));
    CHECK_THROWS_AS(uniform_angle_grid(0, Coordinate::alpha), DomainError);
}

TEST_CASE("polar grid integrates sin(theta) dtheta") {
    QuadratureGrid g = polar_grid(10);
    CHECK(g.coordinate == Coordinate::theta);
    CHECK(g.total() == doctest::Approx(2.0).epsilon(1e-14));
    // int cos^2 theta sin theta dtheta = 2/3
    CHECK(integrate(g, [](double t) { return std::cos(t) * std::cos(t); }) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    for (double t : g.nodes) {
        CHECK(t > 0.0);
        CHECK(t < pi);
    }
}

TEST_CASE("ProductGrid size and coordinate names") {
    ProductGrid p;
    p.phi = uniform_angle_grid(3, Coordinate::phi);
    p.theta = polar_grid(4);
    p.alpha = uniform_angle_grid(5, Coordinate::alpha);
    p.l = panel_grid(2, 1.0, 6, Coordinate::l);
    CHECK(p.size() == 3 * 4 * 5 * 12);
    CHECK(to_string(Coordinate::theta) == "theta");
    CHECK(to_string(Coordinate::l) == "l");
}
