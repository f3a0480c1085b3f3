#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "scs/heatkernel.hpp"
#include "scs/hilbert.hpp"
#include "scs/phasespace.hpp"
#include "scs/quadrature.hpp"
#include "scs/types.hpp"

/** \file bargmann.hpp
 *
 *  \brief Quadrature realization of the Bargmann space over T*S^2.
 *
 *  \f[
 *  \langle\phi|\psi\rangle = \frac{1}{8\pi^2}\int d\varphi\int\sin\theta\,d\theta
 *      \int d\alpha\int_0^\infty dl\,h(l)\,\overline{\phi(z^*)}\,\psi(z^*)
 *  \f]
 *
 *  with z = z(theta, phi, alpha, l) and phi(z*) = <z|phi>. The basis functions are
 *  e_jm(z*) = <z|j,m> = conj(<j,m|z>).
 */

namespace scs {

/// Node counts of the Bargmann product grid.
struct GridSizes {
    int n_phi = 0;
    int n_theta = 0;
    int n_alpha = 0;
    int l_panels = 0;       ///< unit-width l panels covering [0, l_panels]
    int l_order = 16;       ///< Gauss-Legendre order per l panel

    /// 2 j_max + 3 angular nodes, j_max + 10 l panels.
    static GridSizes defaults(int j_max);
    void validate() const;
};

/// Product grid with h(l) folded into the l weights and norm 1/(8 pi^2).
ProductGrid make_bargmann_grid(const GridSizes& sizes, const HeatKernelConfig& hk = {}, Exec exec = Exec::parallel);

/// Throws DomainError unless every coordinate grid is non-empty with matching node and weight counts.
void validate_grid(const ProductGrid& grid);

/// Gauss-Legendre in cos(theta) times uniform phi; weights integrate sin(theta) dtheta dphi.
struct SphereGrid {
    QuadratureGrid theta;
    QuadratureGrid phi;

    std::size_t size() const { return theta.size() * phi.size(); }
};
SphereGrid make_sphere_grid(int n_theta, int n_phi);

/// A function on the Bargmann space: phi(z*) = <z|phi>, from coefficients or a callable of the label z.
class BargmannFn {
public:
    using Callable = std::function<Complex(const ComplexVec3& z)>;

    static BargmannFn from_coeffs(StateVector s);
    static BargmannFn from_callable(Callable f);
    /// e_jm(z*) = <z|j,m>.
    static BargmannFn basis(int j, int m, const BasisSpec& spec);
    /// phi_w(z*) = <z|w>, the symbol of the coherent state |w>.
    static BargmannFn coherent_symbol(const ComplexVec3& w);

    /// phi(z*) for the label z.
    Complex operator()(const ComplexVec3& z) const;

    /// Coefficients, or nullptr for callable-backed functions.
    const StateVector* coeffs() const;

private:
    std::variant<StateVector, Callable> impl_;
};

/// <phi|psi> by the product-grid quadrature.
Complex bargmann_inner(const BargmannFn& phi, const BargmannFn& psi, const ProductGrid& grid,
                       Exec exec = Exec::parallel);

/// G(a, b) = <f_a|f_b>.
Eigen::MatrixXcd bargmann_gram(std::span<const BargmannFn> fns, const ProductGrid& grid, Exec exec = Exec::parallel);

/// G[(j,m),(j',m')] = <e_jm|e_j'm'> for j, j' <= spec.j_max.
Eigen::MatrixXcd gram_matrix(const BasisSpec& spec, const ProductGrid& grid, Exec exec = Exec::parallel);

/// int dmu(z) <w|z> phi(z*); equals phi(w*) for phi in the span of the basis.
Complex reproduce(const BargmannFn& phi, const ComplexVec3& w, const ProductGrid& grid,
                  const SeriesConfig& series = {}, Exec exec = Exec::parallel);

/// R(a, b) = reproduce(fns[b], ws[a]) in one pass over the grid.
Eigen::MatrixXcd reproduce_batch(std::span<const BargmannFn> fns, std::span<const ComplexVec3> ws,
                                 const ProductGrid& grid, const SeriesConfig& series = {},
                                 Exec exec = Exec::parallel);

enum class JComponent { J1, J2, J3, Jsq };

/** -i (z* x d/dz*)_k phi(z*) or -(z* x d/dz*)^2 phi(z*), from the analytic
    gradient and Hessian of the coefficients. Throws DomainError for callable-backed phi. */
Complex apply_diff_J(const BargmannFn& phi, JComponent component, const ComplexVec3& z);

/// Worst interior-row deviations of the diagonal-conjugation forms of X_i and Z_i from their matrices.
struct X3Equivalence {
    double x1, x2, x3;   ///< e^{-J^2/2} z3* e^{J^2/2} forms, rotated by e^{J_2}, e^{J_1} for X1, X2
    double z1, z2, z3;   ///< the same with e^{-J^2}, e^{J^2}
    double zero_exponent; ///< exponent 0 gives back Z3^dagger
    double pointwise;    ///< max |z3* phi(z*) - <z|Z3^dagger phi>| at sampled z, relative to |z3* phi(z*)|
};
X3Equivalence x3_action_equivalence(const BasisSpec& spec);

/// <x|j,m> = sqrt((2j+1)/4pi) (2|m|)!/|m|! sqrt((j-|m|)!/(j+|m|)!) ((-eps(m) x1 - i x2)/2)^{|m|} C_{j-|m|}^{|m|+1/2}(x3).
Complex coord_ket(int j, int m, const RealVec3& x);

/// k(x.z) = <x|z> = (4 pi)^{-1/2} sum_j e^{-j(j+1)/2} (2j+1) P_j(x.z).
Complex coordinate_kernel(const RealVec3& x, const ComplexVec3& z, const SeriesConfig& series = {});

using SphereFn = std::function<Complex(double theta, double phi)>;

/// (U phi)(z*) = int dnu(x) k(x.z*) phi(x).
Complex map_U(const SphereFn& phi, const ComplexVec3& z, const SphereGrid& sphere, const SeriesConfig& series = {});

/// (U^{-1} phi)(x) = int dmu(z) k(x.z) phi(z*).
Complex map_U_inv(const BargmannFn& phi, const RealVec3& x, const ProductGrid& grid,
                  const SeriesConfig& series = {}, Exec exec = Exec::parallel);

/// U^{-1} phi at several points in one pass.
Eigen::VectorXcd map_U_inv_batch(const BargmannFn& phi, std::span<const RealVec3> xs, const ProductGrid& grid,
                                 const SeriesConfig& series = {}, Exec exec = Exec::parallel);

/** U applied to Y_jm, j <= j_max, tabulated by sphere quadrature at every
    Bargmann node; used only for the unitarity and round-trip checks. */
struct DenseUCheck {
    Eigen::MatrixXcd gram;        ///< <U Y_a | U Y_b>
    Eigen::MatrixXcd round_trip;  ///< (U^{-1} U Y_b)(xs[a])
};
DenseUCheck map_U_dense(int j_max, std::span<const RealVec3> xs, const ProductGrid& grid, const SphereGrid& sphere,
                        const SeriesConfig& series = {}, Exec exec = Exec::parallel);

/// p_z(x) = |<x|z>|^2 / <z|z>.
double husimi(const ComplexVec3& z, const RealVec3& x, const SeriesConfig& series = {});

struct HusimiField {
    ComplexVec3 z;
    std::optional<PhasePoint> point;
    std::vector<double> thetas;         ///< Gauss-Legendre in cos(theta)
    std::vector<double> theta_weights;
    std::vector<double> phis;           ///< uniform, weight 2 pi / n_phi
    std::vector<double> values;         ///< row-major, theta index slowest
    double normalization = 0.0;         ///< quadrature of the field over the sphere
    std::size_t argmax_theta = 0;
    std::size_t argmax_phi = 0;

    double value(std::size_t it, std::size_t ip) const { return values[it * phis.size() + ip]; }
};

HusimiField husimi_grid(const ComplexVec3& z, int n_theta, int n_phi, const SeriesConfig& series = {},
                        Exec exec = Exec::parallel);
HusimiField husimi_grid(const PhasePoint& p, int n_theta, int n_phi, const SeriesConfig& series = {},
                        Exec exec = Exec::parallel);

/// Grid index (theta, phi) of the node closest to x on the sphere.
std::pair<std::size_t, std::size_t> nearest_node(const HusimiField& f, const RealVec3& x);

}  // namespace scs
