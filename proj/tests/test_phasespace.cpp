#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "scs/phasespace.hpp"

using namespace scs;
using scs::testing::Gen;

namespace {

double max_diff(const ComplexVec3& a, const ComplexVec3& b) {
    double d = 0;
    for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("phase_to_z at l = 0 is the position") {
    PhasePoint p{0.7, 2.1, 1.3, 0.0};
    ComplexVec3 z = phase_to_z(p);
    RealVec3 x = unit_vector(p.theta, p.phi);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(z[i] - x[i]) < 1e-15);
        CHECK(z[i].imag() == 0.0);
    }
}

TEST_CASE("phase_to_z at the north pole with l = 1") {
    ComplexVec3 z = phase_to_z(PhasePoint{0.0, 0.0, 0.0, 1.0});
    CHECK(max_diff(z, ComplexVec3{0.0, Complex(0.0, std::sinh(1.0)), std::cosh(1.0)}) < 1e-15);
}

TEST_CASE("vec_phase_to_z examples") {
    VectorPhasePoint v{{0.6, 0.0, 0.8}, {0.0, 0.0, 0.0}};
    ComplexVec3 z = vec_phase_to_z(v);
    CHECK(max_diff(z, ComplexVec3{0.6, 0.0, 0.8}) < 1e-15);

    // l x x = (1,0,0) x (0,0,1) = (0,-1,0)
    ComplexVec3 w = vec_phase_to_z({{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}});
    CHECK(max_diff(w, ComplexVec3{0.0, Complex(0.0, -std::sinh(1.0)), std::cosh(1.0)}) < 1e-15);
    CHECK(std::abs(w.dot(w) - 1.0) < 1e-15);

    CHECK_THROWS_AS(vec_phase_to_z({{0.0, 0.0, 1.1}, {0.0, 0.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(vec_phase_to_z({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.5}}), DomainError);
}

TEST_CASE("small |lvec| uses the smooth limit") {
    VectorPhasePoint v{{1.0, 0.0, 0.0}, {0.0, 1e-9, 0.0}};
    ComplexVec3 z = vec_phase_to_z(v);
    // lvec x x = (0, 1e-9, 0) x (1,0,0) = (0,0,-1e-9)
    CHECK(std::abs(z[2] - Complex(0.0, -1e-9)) < 1e-20);
    CHECK(std::abs(z[0] - 1.0) < 1e-16);
}

TEST_CASE("z_constraint_residuals") {
    PhasePoint p{1.2, 0.4, 2.2, 0.8};
    auto r = z_constraint_residuals(phase_to_z(p), p);
    CHECK(std::abs(r.quadric) < 1e-12);
    REQUIRE(r.radial.has_value());
    CHECK(std::abs(*r.radial) < 1e-12);

    auto n = z_constraint_residuals(ComplexVec3{0.0, 0.0, 1.0}, PhasePoint{0.0, 0.0, 0.0, 0.0});
    CHECK(std::abs(n.quadric) == 0.0);
    CHECK(*n.radial == 0.0);

    auto e = z_constraint_residuals(ComplexVec3{0.0, 0.0, 1.0 + 1e-3});
    CHECK(std::abs(e.quadric - 2.001e-3) < 1e-15);
    CHECK_FALSE(e.radial.has_value());
}

TEST_CASE("PhasePoint validation") {
    CHECK_THROWS_AS(phase_to_z(PhasePoint{-0.1, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(phase_to_z(PhasePoint{0.1, 2 * pi, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(phase_to_z(PhasePoint{0.1, 0.0, -0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(phase_to_z(PhasePoint{0.1, 0.0, 0.0, -1.0}), DomainError);
    CHECK_NOTHROW(phase_to_z(PhasePoint{pi, 0.0, 0.0, 0.0}));
}

TEST_CASE("to_vector gives a unit position and a tangent momentum of norm l") {
    Gen g(201);
    for (int k = 0; k < 200; ++k) {
        PhasePoint p = g.phase(3.0);
        VectorPhasePoint v = to_vector(p);
        CHECK(std::abs(dot(v.x, v.x) - 1.0) < 1e-14);
        CHECK(std::abs(dot(v.x, v.lvec)) < 1e-14);
        CHECK(std::abs(std::sqrt(dot(v.lvec, v.lvec)) - p.l) < 1e-14);
    }
}

TEST_CASE("round trip: vec_phase_to_z(to_vector(p)) == phase_to_z(p) for 500 points") {
    Gen g(202);
    for (int k = 0; k < 500; ++k) {
        PhasePoint p = g.phase(2.0);
        INFO(scs::testing::describe(p));
        CHECK(max_diff(vec_phase_to_z(to_vector(p)), phase_to_z(p)) < 1e-12);
    }
}

TEST_CASE("z.z = 1 and z.z* = cosh 2l") {
    Gen g(203);
    for (int k = 0; k < 300; ++k) {
        PhasePoint p = g.phase(2.0);
        ComplexVec3 z = phase_to_z(p);
        CHECK(std::abs(z.dot(z) - 1.0) < 1e-12 * std::cosh(2 * p.l));
        CHECK(std::abs(z.norm2() - std::cosh(2 * p.l)) < 1e-12 * std::cosh(2 * p.l));
    }
}

TEST_CASE("rotation equivariance of vec_phase_to_z") {
    Gen g(204);
    for (int k = 0; k < 200; ++k) {
        auto r = g.rotation();
        VectorPhasePoint v = to_vector(g.phase(1.5));
        VectorPhasePoint rv{scs::testing::apply(r, v.x), scs::testing::apply(r, v.lvec)};
        CHECK(max_diff(vec_phase_to_z(rv), scs::testing::apply(r, vec_phase_to_z(v))) < 1e-12);
    }
}

TEST_CASE("sample_phase_point ranges") {
    Gen g(205);
    for (int k = 0; k < 1000; ++k) {
        PhasePoint p = g.phase(0.5);
        CHECK_NOTHROW(p.validate());
        CHECK(p.l <= 0.5);
    }
}
