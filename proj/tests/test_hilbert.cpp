#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "scs/hilbert.hpp"
#include "scs/phasespace.hpp"

using namespace scs;
using scs::testing::Gen;

namespace {

double fiducial_norm_oracle() {
    double s = 0;
    for (int j = 0; j <= 30; ++j) s += (2 * j + 1) * std::exp(-double(j) * (j + 1));
    return s;
}

/// Partial derivative of f along coordinate k by the trapezoid rule on a circle.
template <class F>
Complex partial(F f, ComplexVec3 z, int k, double r = 0.1, int n = 48) {
    Complex sum = 0;
    Complex z0 = z[k];
    for (int i = 0; i < n; ++i) {
        Complex e = std::polar(1.0, 2 * pi * i / n);
        z[k] = z0 + r * e;
        sum += f(z) / (r * e);
    }
    return sum / double(n);
}

bool only_couples(const Eigen::MatrixXcd& m, bool adjacent) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            if (m(r, c) == Complex(0.0)) continue;
            int dj = std::abs(BasisSpec::jm(r).first - BasisSpec::jm(c).first);
            if (adjacent ? dj != 1 : dj != 0) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("basis indexing is a bijection") {
    BasisSpec s{7};
    CHECK(s.dim() == 64);
    CHECK(s.interior_dim() == 36);
    std::vector<int> seen(s.dim(), 0);
    for (int j = 0; j <= s.j_max; ++j)
        for (int m = -j; m <= j; ++m) {
            int i = BasisSpec::index(j, m);
            REQUIRE(i >= 0);
            REQUIRE(i < s.dim());
            ++seen[i];
            CHECK(BasisSpec::jm(i) == std::pair{j, m});
        }
    for (int v : seen) CHECK(v == 1);
    CHECK_THROWS_AS(BasisSpec{-1}.validate(), DomainError);
    CHECK_THROWS_AS(BasisSpec{61}.validate(), DomainError);
    CHECK(BasisSpec{}.j_max == 12);
}

TEST_CASE("coherent_coeff examples") {
    ComplexVec3 n3{0.0, 0.0, 1.0};
    for (int j = 0; j <= 10; ++j)
        CHECK(std::abs(coherent_coeff(j, 0, n3) - std::exp(-0.5 * j * (j + 1)) * std::sqrt(2.0 * j + 1)) < 1e-15);
    ComplexVec3 z = phase_to_z(PhasePoint{1.0, 2.0, 0.5, 0.7});
    CHECK(std::abs(coherent_coeff(0, 0, z) - 1.0) < 1e-15);
    CHECK(std::abs(coherent_coeff(1, 0, z) - std::exp(-1.0) * std::sqrt(3.0) * z[2]) < 1e-15);
    // j=1, m=1: e^{-1} sqrt(3) * 2 * sqrt(1/2) * (-z1 + i z2)/2
    Complex c11 = std::exp(-1.0) * std::sqrt(3.0) * 2.0 * std::sqrt(0.5) * (-z[0] + Complex(0, 1) * z[1]) / 2.0;
    CHECK(std::abs(coherent_coeff(1, 1, z) - c11) < 1e-15);
    CHECK_THROWS_AS(coherent_coeff(1, 2, z), DomainError);
    CHECK_THROWS_AS(coherent_coeff(1, 0, ComplexVec3{0.0, 0.0, 2.0}), DomainError);
}

TEST_CASE("coherent_coeffs fills the basis order") {
    ComplexVec3 z = phase_to_z(PhasePoint{0.4, 1.0, 3.0, 0.9});
    std::vector<Complex> all(BasisSpec{6}.dim());
    coherent_coeffs(z, 6, all);
    for (int j = 0; j <= 6; ++j)
        for (int m = -j; m <= j; ++m) CHECK(std::abs(all[BasisSpec::index(j, m)] - coherent_coeff(j, m, z)) < 1e-15);
}

TEST_CASE("coherent_coeff_jet against contour derivatives") {
    ComplexVec3 z = phase_to_z(PhasePoint{1.1, 0.3, 2.0, 0.6});
    for (int j = 0; j <= 5; ++j)
        for (int m = -j; m <= j; ++m) {
            CoeffJet jet = coherent_coeff_jet(j, m, z);
            auto f = [&](const ComplexVec3& w) { return coherent_coeff_jet(j, m, w).value; };
            CHECK(std::abs(jet.value - coherent_coeff(j, m, z)) < 1e-15);
            for (int a = 0; a < 3; ++a) {
                Complex g = partial(f, z, a);
                CHECK(std::abs(jet.grad[a] - g) < 1e-12 * std::max(1.0, std::abs(g)));
                for (int b = 0; b < 3; ++b) {
                    Complex h = partial([&](const ComplexVec3& w) { return coherent_coeff_jet(j, m, w).grad[a]; }, z, b);
                    CHECK(std::abs(jet.hess[a][b] - h) < 1e-11 * std::max(1.0, std::abs(h)));
                }
            }
        }
}

TEST_CASE("coherent_state at n3 is the fiducial vector") {
    BasisSpec s{12};
    StateVector a = coherent_state(ComplexVec3{0.0, 0.0, 1.0}, s);
    StateVector f = fiducial_state(s);
    CHECK((a.c - f.c).cwiseAbs().maxCoeff() < 1e-15);
    for (int j = 0; j <= s.j_max; ++j)
        for (int m = -j; m <= j; ++m) {
            Complex expect = m == 0 ? std::exp(-0.5 * j * (j + 1)) * std::sqrt(2.0 * j + 1) : 0.0;
            CHECK(std::abs(f.c[BasisSpec::index(j, m)] - expect) < 1e-16);
        }
}

TEST_CASE("coherent_state norm and truncation bound") {
    BasisSpec s{10};
    StateVector a = coherent_state(ComplexVec3{0.0, 0.0, 1.0}, s);
    CHECK(std::abs(a.c.squaredNorm() - fiducial_norm_oracle()) < 1e-8);
    CHECK(std::abs(a.c.squaredNorm() - 1.41844264) < 1e-8);
    CHECK_FALSE(a.truncation_warning);

    ComplexVec3 z = phase_to_z(PhasePoint{0.9, 1.2, 0.4, 0.8});
    StateVector b = coherent_state(z, BasisSpec{12});
    CHECK(std::abs(b.c.squaredNorm() - overlap(z, z).real()) < 1e-10);
    CHECK(b.tail_bound < 1e-10);

    StateVector c = coherent_state(phase_to_z(PhasePoint{0.9, 1.2, 0.4, 3.0}), BasisSpec{3});
    CHECK(c.truncation_warning);
    CHECK(c.tail_bound > 1e-10);
}

TEST_CASE("overlap examples") {
    ComplexVec3 n3{0.0, 0.0, 1.0};
    CHECK(std::abs(overlap(n3, n3) - fiducial_norm_oracle()) < 1e-14);
    CHECK(std::abs(overlap(n3, n3) - 1.41844264) < 1e-8);
    Gen g(301);
    BasisSpec s{12};
    for (int k = 0; k < 50; ++k) {
        ComplexVec3 z = phase_to_z(g.phase(1.0)), w = phase_to_z(g.phase(1.0));
        Complex zw = overlap(z, w);
        CHECK(std::abs(zw - std::conj(overlap(w, z))) < 1e-14 * std::abs(zw));
        Complex sum = coherent_state(z, s).c.dot(coherent_state(w, s).c);
        CHECK(std::abs(zw - sum) < 1e-10);
    }
}

TEST_CASE("op_matrix examples") {
    BasisSpec s{4};
    auto J3 = op_matrix(Op::J3, s).entries;
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(s.dim());
    e[BasisSpec::index(1, 1)] = 1.0;
    CHECK((J3 * e - e).norm() < 1e-15);

    auto X3 = op_matrix(Op::X3, s).entries;
    CHECK(std::abs(X3(BasisSpec::index(1, 0), 0) - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(X3.col(0).cwiseAbs().sum() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

    auto Jp = op_matrix(Op::Jplus, s).entries;
    Eigen::VectorXcd e10 = Eigen::VectorXcd::Zero(s.dim());
    e10[BasisSpec::index(1, 0)] = 1.0;
    Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(s.dim());
    expect[BasisSpec::index(1, 1)] = std::sqrt(2.0);
    CHECK((Jp * e10 - expect).norm() < 1e-15);

    auto Jsq = op_matrix(Op::Jsq, s).entries;
    for (int i = 0; i < s.dim(); ++i) {
        int j = BasisSpec::jm(i).first;
        CHECK(std::abs(Jsq(i, i) - double(j * (j + 1))) < 1e-13);
    }
}

TEST_CASE("band structure of the operator matrices") {
    BasisSpec s{5};
    for (Op op : {Op::J1, Op::J2, Op::J3, Op::Jplus, Op::Jminus, Op::Jsq}) {
        OperatorMatrix m = op_matrix(op, s);
        CHECK(m.band == OperatorMatrix::Band::diagonal_in_j);
        CHECK(only_couples(m.entries, false));
    }
    for (Op op : {Op::X1, Op::X2, Op::X3, Op::Xplus, Op::Xminus, Op::Z1, Op::Z2, Op::Z3}) {
        OperatorMatrix m = op_matrix(op, s);
        CHECK(m.band == OperatorMatrix::Band::adjacent_j);
        CHECK(only_couples(m.entries, true));
    }
}

TEST_CASE("operator names") {
    for (Op op : {Op::J1, Op::J2, Op::J3, Op::Jplus, Op::Jminus, Op::Jsq, Op::X1, Op::X2, Op::X3, Op::Xplus, Op::Xminus,
                  Op::Z1, Op::Z2, Op::Z3})
        CHECK(parse_op(to_string(op)) == op);
    CHECK(to_string(Op::Jplus) == "J+");
    CHECK_THROWS_AS(parse_op("Q7"), DomainError);
}

TEST_CASE("Z is the Casimir conjugate of X, Z^dagger the inverse conjugate") {
    BasisSpec s{6};
    Eigen::VectorXcd e(s.dim());
    for (int i = 0; i < s.dim(); ++i) {
        int j = BasisSpec::jm(i).first;
        e[i] = std::exp(0.5 * j * (j + 1));
    }
    Eigen::MatrixXcd E = e.asDiagonal(), Einv = e.cwiseInverse().asDiagonal();
    const std::array<std::pair<Op, Op>, 3> pairs{{{Op::X1, Op::Z1}, {Op::X2, Op::Z2}, {Op::X3, Op::Z3}}};
    for (auto [xo, zo] : pairs) {
        Eigen::MatrixXcd x = op_matrix(xo, s).entries, z = op_matrix(zo, s).entries;
        double scale = z.cwiseAbs().maxCoeff();
        CHECK((z - Einv * x * E).cwiseAbs().maxCoeff() < 1e-14 * scale);
        CHECK((z.adjoint() - E * x * Einv).cwiseAbs().maxCoeff() < 1e-14 * scale);
    }
}

TEST_CASE("algebra relations and Casimirs on interior rows") {
    AlgebraResiduals a = algebra_residuals(BasisSpec{12});
    CHECK(a.jj_commutators < 1e-12);
    CHECK(a.xx_commutators < 1e-12);
    CHECK(a.jx_commutators < 1e-12);
    CHECK(a.x_squared < 1e-12);
    CHECK(a.j_dot_x < 1e-12);
    CHECK(a.hermiticity < 1e-12);
    CHECK(a.z_squared_scaled < 1e-10);
    CHECK(algebra_residuals(BasisSpec{6}).z_squared < 1e-10);
}

TEST_CASE("block_exp of a diagonal generator") {
    BasisSpec s{4};
    Eigen::MatrixXcd g = Complex(0, 0.7) * op_matrix(Op::J3, s).entries;
    Eigen::MatrixXcd e = block_exp(g, s);
    for (int i = 0; i < s.dim(); ++i) {
        int m = BasisSpec::jm(i).second;
        CHECK(std::abs(e(i, i) - std::exp(Complex(0, 0.7 * m))) < 1e-14);
    }
    CHECK((e - Eigen::MatrixXcd(e.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
    MatrixXcld gl = g.cast<std::complex<long double>>();
    CHECK((block_exp_extended(gl, s).cast<Complex>() - e).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rotation construction equals the closed form") {
    BasisSpec s{10};
    Gen g(302);
    for (int k = 0; k < 20; ++k) {
        PhasePoint p = g.phase(1.0);
        INFO(scs::testing::describe(p));
        ComplexVec3 z = phase_to_z(p);
        CHECK((coherent_via_rotation(z, s).c - coherent_state(z, s).c).cwiseAbs().maxCoeff() < 1e-10);
    }
    // real labels: an ordinary rotation
    ComplexVec3 x = phase_to_z(PhasePoint{2.0, 4.0, 0.0, 0.0});
    CHECK((coherent_via_rotation(x, s).c - coherent_state(x, s).c).cwiseAbs().maxCoeff() < 1e-10);
    // z3 = 1 with z != n3
    for (double a : {1e-8, 0.3}) {
        ComplexVec3 w{a, Complex(0, a), 1.0};
        CHECK((coherent_via_rotation(w, s).c - coherent_state(w, s).c).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("rotation construction at the poles") {
    BasisSpec s{8};
    ComplexVec3 n3{0.0, 0.0, 1.0}, s3{0.0, 0.0, -1.0};
    CHECK((coherent_via_rotation(n3, s).c - fiducial_state(s).c).cwiseAbs().maxCoeff() == 0.0);
    CHECK((coherent_via_rotation(s3, s).c - coherent_state(s3, s).c).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(coherent_via_rotation(ComplexVec3{1.0, Complex(0, 1), -1.0}, s), DomainError);
}

TEST_CASE("eigenrelation residual") {
    CHECK(eigenrelation_residual(ComplexVec3{0.0, 0.0, 1.0}, BasisSpec{12}) <= 1e-10);
    Gen g(303);
    for (int k = 0; k < 10; ++k) {
        PhasePoint p = g.phase(0.5);
        p.l = 0.5;
        CHECK(eigenrelation_residual(phase_to_z(p), BasisSpec{14}) <= 1e-8);
    }
    // exact on interior rows for every j_max: the sequence is flat at roundoff
    ComplexVec3 z = phase_to_z(PhasePoint{0.8, 0.2, 1.0, 0.5});
    double prev = 1.0;
    for (int jm = 8; jm <= 14; ++jm) {
        double r = eigenrelation_residual(z, BasisSpec{jm});
        CHECK(r <= 1e-12);
        CHECK(r <= prev + 1e-13);
        prev = r;
    }
}

TEST_CASE("complex rotation identity") {
    BasisSpec s{10};
    CHECK(complex_rotation_residual({0.0, 0.5, 0.0}, s) < 1e-10);
    CHECK(complex_rotation_residual({Complex(0, 1.0 / 3), 0.0, 0.0}, s) < 1e-10);
    CHECK(complex_rotation_residual({0.0, 0.0, 0.0}, s) < 1e-15);
}

TEST_CASE("interior_max_abs ignores the top two shells") {
    BasisSpec s{4};
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(s.dim(), s.dim()), b = a;
    b(s.dim() - 1, 0) = 5.0;
    CHECK(interior_max_abs(a, b, s) == 0.0);
    b(s.interior_dim() - 1, 3) = 2.0;
    CHECK(interior_max_abs(a, b, s) == 2.0);
}
