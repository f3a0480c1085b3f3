#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "scs/types.hpp"

/** \file hilbert.hpp
 *
 *  \brief Truncated angular-momentum basis |j,m>, j <= j_max, of the e(3)
 *  representation with X^2 = 1 and J.X = 0; coherent-state coefficients and
 *  the matrices of J, X and Z = e^{-J^2/2} X e^{J^2/2}.
 */

namespace scs {

struct BasisSpec {
    int j_max = 12;

    int dim() const { return (j_max + 1) * (j_max + 1); }
    /// Rows with j <= j_max - 2; identities involving X or Z hold exactly there.
    int interior_dim() const { return j_max >= 2 ? (j_max - 1) * (j_max - 1) : 0; }
    static int index(int j, int m) { return j * j + j + m; }
    static std::pair<int, int> jm(int index);
    void validate() const;
};

struct StateVector {
    BasisSpec spec;
    Eigen::VectorXcd c;               ///< c[index(j,m)] = <j,m|psi>
    double tail_bound = 0.0;          ///< bound on the norm^2 dropped by the truncation
    bool truncation_warning = false;  ///< tail_bound above 1e-10
};

enum class Op { J1, J2, J3, Jplus, Jminus, Jsq, X1, X2, X3, Xplus, Xminus, Z1, Z2, Z3 };

std::string to_string(Op op);
Op parse_op(const std::string& name);

struct OperatorMatrix {
    enum class Band { diagonal_in_j, adjacent_j };

    BasisSpec spec;
    Op op = Op::J3;
    Band band = Band::diagonal_in_j;
    Eigen::MatrixXcd entries;
};

/// Throws DomainError unless |z.z - 1| <= 1e-10 max(1, z.z*).
void check_label(const ComplexVec3& z, const char* who);

/** <j,m|z> = e^{-j(j+1)/2} sqrt(2j+1) (2|m|)!/|m|! sqrt((j-|m|)!/(j+|m|)!)
              ((-eps(m) z1 + i z2)/2)^{|m|} C_{j-|m|}^{|m|+1/2}(z3) */
Complex coherent_coeff(int j, int m, const ComplexVec3& z);

/// All coefficients j <= j_max into out[index(j,m)]; no label check.
void coherent_coeffs(const ComplexVec3& z, int j_max, std::span<Complex> out);

/// Value, gradient and Hessian of z -> <j,m|z> as a polynomial on C^3.
struct CoeffJet {
    Complex value;
    std::array<Complex, 3> grad;
    std::array<std::array<Complex, 3>, 3> hess;
};
CoeffJet coherent_coeff_jet(int j, int m, const ComplexVec3& z);

StateVector coherent_state(const ComplexVec3& z, const BasisSpec& spec);

/// |n3> = sum_j e^{-j(j+1)/2} sqrt(2j+1) |j,0>.
StateVector fiducial_state(const BasisSpec& spec);

/// <z|w> = sum_j e^{-j(j+1)} (2j+1) P_j(z*.w).
Complex overlap(const ComplexVec3& z, const ComplexVec3& w, const SeriesConfig& series = {});

OperatorMatrix op_matrix(Op op, const BasisSpec& spec);

using MatrixXcld = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

/// Entries of op_matrix in long double, for similarity transforms by e^{J_k} whose condition grows like e^{2j}.
MatrixXcld op_matrix_extended(Op op, const BasisSpec& spec);

/// exp of a generator that is block-diagonal in j, one (2j+1)-block at a time.
Eigen::MatrixXcd block_exp(const Eigen::MatrixXcd& generator, const BasisSpec& spec);
MatrixXcld block_exp_extended(const MatrixXcld& generator, const BasisSpec& spec);

/** exp[(arccosh z3 / sqrt(1 - z3^2)) (z x n3).J] |n3>.

    The scalar is evaluated as i acosh(z3) / (sqrt(z3 - 1) sqrt(z3 + 1)), the
    branch that stays analytic through z3 = 1. z = -n3 is the rotation by pi
    about the x axis; other labels with z3 = -1 throw DomainError.
 */
StateVector coherent_via_rotation(const ComplexVec3& z, const BasisSpec& spec);

/// max over i and interior rows of |(Z_i c)_{jm} - z_i c_{jm}| for c = coherent_state(z).
double eigenrelation_residual(const ComplexVec3& z, const BasisSpec& spec);

/// Max interior-row entry of |a - b|.
double interior_max_abs(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const BasisSpec& spec);
double interior_max_abs_extended(const MatrixXcld& a, const MatrixXcld& b, const BasisSpec& spec);

/// e^{w.J} X e^{-w.J} against its closed form, worst component on interior rows.
double complex_rotation_residual(const std::array<Complex, 3>& w, const BasisSpec& spec);

/// Worst interior-row residuals of the e(3) relations and Casimirs.
struct AlgebraResiduals {
    double jj_commutators;  ///< [J_i,J_j] - i eps J_k, all rows
    double xx_commutators;  ///< [X_i,X_j]
    double jx_commutators;  ///< [J_i,X_j] - i eps X_k
    double x_squared;       ///< sum X_i^2 - 1
    double j_dot_x;         ///< sum (J_i X_i + X_i J_i)/2
    double z_squared;       ///< sum Z_i^2 - 1
    double z_squared_scaled;  ///< sum Z_i^2 - 1, entrywise over sum_i |Z_i| |Z_i|; the entries themselves reach e^{2 j_max}
    double hermiticity;     ///< J_i, X_i Hermitian; Z_i^dagger = E X_i E^{-1}
};
AlgebraResiduals algebra_residuals(const BasisSpec& spec);

}  // namespace scs
