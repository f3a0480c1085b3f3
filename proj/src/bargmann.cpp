#include "scs/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scs/kernels.hpp"
#include "scs/specfun.hpp"

namespace scs {

namespace {

constexpr Complex I{0.0, 1.0};

Complex ipow(Complex x, int n) {
    Complex r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

Eigen::VectorXd casimir_diag(const BasisSpec& spec, double s) {
    Eigen::VectorXd d(spec.dim());
    for (int j = 0; j <= spec.j_max; ++j) {
        for (int m = -j; m <= j; ++m) d[BasisSpec::index(j, m)] = std::exp(s * j * (j + 1.0));
    }
    return d;
}

// diag(e^{s j(j+1)}) a diag(e^{-s j(j+1)})
Eigen::MatrixXcd conjugate(const Eigen::MatrixXcd& a, const BasisSpec& spec, double s) {
    const Eigen::VectorXd d = casimir_diag(spec, s);
    return d.asDiagonal() * a * d.cwiseInverse().asDiagonal();
}

void require_coordinate(const QuadratureGrid& g, Coordinate c) {
    if (g.nodes.empty() || g.nodes.size() != g.weights.size() || g.coordinate != c) {
        throw DomainError("bargmann grid: bad " + to_string(c) + " grid");
    }
}

// out[b] = fns[b](z); coefficient-backed functions share one evaluation of the basis.
kernels::Sampler function_sampler(std::span<const BargmannFn> fns) {
    int j_max = -1;
    bool all_coeffs = true;
    for (const auto& f : fns) {
        if (const StateVector* s = f.coeffs()) {
            j_max = std::max(j_max, s->spec.j_max);
        } else {
            all_coeffs = false;
        }
    }
    if (!all_coeffs || j_max < 0) {
        return [fns](const ComplexVec3& z, std::span<Complex> out) {
            for (std::size_t b = 0; b < fns.size(); ++b) out[b] = fns[b](z);
        };
    }
    return [fns, j_max](const ComplexVec3& z, std::span<Complex> out) {
        const int n = (j_max + 1) * (j_max + 1);
        thread_local std::vector<Complex> e;
        e.resize(n);
        coherent_coeffs(z, j_max, e);
        for (std::size_t b = 0; b < fns.size(); ++b) {
            const StateVector& s = *fns[b].coeffs();
            Complex sum = 0.0;
            for (int i = 0; i < s.spec.dim(); ++i) sum += std::conj(e[i]) * s.c[i];
            out[b] = sum;
        }
    };
}

Complex ladder_x(int m, const RealVec3& x) { return (m >= 0 ? -x[0] : x[0]) * 0.5 - I * x[1] * 0.5; }

}  // namespace

GridSizes GridSizes::defaults(int j_max) {
    const int n = 2 * j_max + 3;
    return {n, n, n, j_max + 10, 16};
}

void GridSizes::validate() const {
    if (n_phi < 1 || n_theta < 1 || n_alpha < 1 || l_panels < 1 || l_order < 1) {
        throw DomainError("GridSizes: all sizes must be positive");
    }
}

ProductGrid make_bargmann_grid(const GridSizes& sizes, const HeatKernelConfig& hk, Exec exec) {
    sizes.validate();
    HeatKernelConfig unit = hk;
    unit.t = 1.0;
    ProductGrid g;
    g.phi = uniform_angle_grid(sizes.n_phi, Coordinate::phi);
    g.theta = polar_grid(sizes.n_theta);
    g.alpha = uniform_angle_grid(sizes.n_alpha, Coordinate::alpha);
    g.l = panel_grid(sizes.l_panels, 1.0, sizes.l_order, Coordinate::l);
    const std::vector<double> log_h = kernels::log_heat_density(g.l.nodes, unit, exec);
    for (std::size_t i = 0; i < g.l.size(); ++i) {
        g.l.weights[i] *= std::exp(log_h[i]);
    }
    g.norm = 1.0 / (8.0 * pi * pi);
    return g;
}

void validate_grid(const ProductGrid& grid) {
    require_coordinate(grid.phi, Coordinate::phi);
    require_coordinate(grid.theta, Coordinate::theta);
    require_coordinate(grid.alpha, Coordinate::alpha);
    require_coordinate(grid.l, Coordinate::l);
}

SphereGrid make_sphere_grid(int n_theta, int n_phi) {
    return {polar_grid(n_theta), uniform_angle_grid(n_phi, Coordinate::phi)};
}

BargmannFn BargmannFn::from_coeffs(StateVector s) {
    BargmannFn f;
    f.impl_ = std::move(s);
    return f;
}

BargmannFn BargmannFn::from_callable(Callable c) {
    BargmannFn f;
    f.impl_ = std::move(c);
    return f;
}

BargmannFn BargmannFn::basis(int j, int m, const BasisSpec& spec) {
    spec.validate();
    if (j < 0 || j > spec.j_max || std::abs(m) > j) {
        throw DomainError("BargmannFn::basis: index outside the basis");
    }
    StateVector s{spec, Eigen::VectorXcd::Zero(spec.dim())};
    s.c[BasisSpec::index(j, m)] = 1.0;
    return from_coeffs(std::move(s));
}

BargmannFn BargmannFn::coherent_symbol(const ComplexVec3& w) {
    check_label(w, "coherent_symbol");
    return from_callable([w](const ComplexVec3& z) { return heat_legendre_series(z.conj().dot(w), 1.0); });
}

Complex BargmannFn::operator()(const ComplexVec3& z) const {
    if (const auto* s = std::get_if<StateVector>(&impl_)) {
        thread_local std::vector<Complex> e;
        e.resize(s->spec.dim());
        coherent_coeffs(z, s->spec.j_max, e);
        Complex sum = 0.0;
        for (int i = 0; i < s->spec.dim(); ++i) sum += std::conj(e[i]) * s->c[i];
        return sum;
    }
    return std::get<Callable>(impl_)(z);
}

const StateVector* BargmannFn::coeffs() const { return std::get_if<StateVector>(&impl_); }

Eigen::MatrixXcd bargmann_gram(std::span<const BargmannFn> fns, const ProductGrid& grid, Exec exec) {
    validate_grid(grid);
    const int n = static_cast<int>(fns.size());
    return kernels::cross_accumulate(grid, function_sampler(fns), n, nullptr, n, exec);
}

Complex bargmann_inner(const BargmannFn& phi, const BargmannFn& psi, const ProductGrid& grid, Exec exec) {
    validate_grid(grid);
    const kernels::Sampler left = [&phi](const ComplexVec3& z, std::span<Complex> out) { out[0] = phi(z); };
    const kernels::Sampler right = [&psi](const ComplexVec3& z, std::span<Complex> out) { out[0] = psi(z); };
    return kernels::cross_accumulate(grid, left, 1, right, 1, exec)(0, 0);
}

Eigen::MatrixXcd gram_matrix(const BasisSpec& spec, const ProductGrid& grid, Exec exec) {
    spec.validate();
    validate_grid(grid);
    const int j_max = spec.j_max;
    const kernels::Sampler basis = [j_max](const ComplexVec3& z, std::span<Complex> out) {
        coherent_coeffs(z, j_max, out);
        for (auto& v : out) v = std::conj(v);
    };
    return kernels::cross_accumulate(grid, basis, spec.dim(), nullptr, spec.dim(), exec);
}

Eigen::MatrixXcd reproduce_batch(std::span<const BargmannFn> fns, std::span<const ComplexVec3> ws,
                                 const ProductGrid& grid, const SeriesConfig& series, Exec exec) {
    validate_grid(grid);
    for (const auto& w : ws) check_label(w, "reproduce");
    // conj(left) must be K(w*, z) = <w|z>, so left = <z|w>.
    const kernels::Sampler left = [ws, series](const ComplexVec3& z, std::span<Complex> out) {
        const ComplexVec3 zc = z.conj();
        for (std::size_t a = 0; a < ws.size(); ++a) out[a] = heat_legendre_series(zc.dot(ws[a]), 1.0, series);
    };
    return kernels::cross_accumulate(grid, left, static_cast<int>(ws.size()), function_sampler(fns), static_cast<int>(fns.size()),
                                     exec);
}

Complex reproduce(const BargmannFn& phi, const ComplexVec3& w, const ProductGrid& grid, const SeriesConfig& series,
                  Exec exec) {
    return reproduce_batch(std::span<const BargmannFn>(&phi, 1), std::span<const ComplexVec3>(&w, 1), grid, series,
                           exec)(0, 0);
}

Complex apply_diff_J(const BargmannFn& phi, JComponent component, const ComplexVec3& z) {
    const StateVector* s = phi.coeffs();
    if (!s) {
        throw DomainError("apply_diff_J: needs a coefficient-backed function");
    }
    const Complex zz = z.dot(z);
    Complex sum = 0.0;
    for (int idx = 0; idx < s->spec.dim(); ++idx) {
        if (s->c[idx] == Complex(0.0)) continue;
        const auto [j, m] = BasisSpec::jm(idx);
        const CoeffJet f = coherent_coeff_jet(j, m, z);
        const auto& g = f.grad;
        Complex lf;  // (z x grad) applied to <j,m|z>
        switch (component) {
            case JComponent::J1: lf = z[1] * g[2] - z[2] * g[1]; break;
            case JComponent::J2: lf = z[2] * g[0] - z[0] * g[2]; break;
            case JComponent::J3: lf = z[0] * g[1] - z[1] * g[0]; break;
            case JComponent::Jsq: {
                // (z x grad)^2 f = (z.z) lap f - z.H.z - 2 z.grad f
                Complex lap = 0.0, zhz = 0.0, zg = 0.0;
                for (int a = 0; a < 3; ++a) {
                    lap += f.hess[a][a];
                    zg += z[a] * g[a];
                    for (int b = 0; b < 3; ++b) zhz += z[a] * f.hess[a][b] * z[b];
                }
                lf = zz * lap - zhz - 2.0 * zg;
                break;
            }
        }
        // phi(z*) = sum c conj(f(z)); derivatives in z* are conjugates of derivatives in z.
        sum += s->c[idx] * (component == JComponent::Jsq ? -std::conj(lf) : -I * std::conj(lf));
    }
    return sum;
}

X3Equivalence x3_action_equivalence(const BasisSpec& spec) {
    spec.validate();
    if (spec.j_max < 4) {
        throw DomainError("x3_action_equivalence: needs j_max >= 4");
    }
    using C = std::complex<long double>;
    const MatrixXcld x1 = op_matrix_extended(Op::X1, spec), x2 = op_matrix_extended(Op::X2, spec);
    const MatrixXcld x3 = op_matrix_extended(Op::X3, spec);
    const MatrixXcld z1 = op_matrix_extended(Op::Z1, spec), z2 = op_matrix_extended(Op::Z2, spec);
    const MatrixXcld z3 = op_matrix_extended(Op::Z3, spec);
    const MatrixXcld z3_dag_ext = z3.adjoint();  // multiplication by z3*
    const MatrixXcld j1 = op_matrix_extended(Op::J1, spec), j2 = op_matrix_extended(Op::J2, spec);
    const MatrixXcld e_j1 = block_exp_extended(j1, spec), e_mj1 = block_exp_extended((-j1).eval(), spec);
    const MatrixXcld e_j2 = block_exp_extended(j2, spec), e_mj2 = block_exp_extended((-j2).eval(), spec);
    const long double sh = std::sinh(1.0L), ch = std::cosh(1.0L);
    const C i_over_sh(0.0L, 1.0L / sh);

    X3Equivalence r{};
    for (long double s : {0.5L, 1.0L}) {
        // e^{-s J^2} z3* e^{s J^2}
        MatrixXcld c3 = z3_dag_ext;
        for (int row = 0; row < c3.rows(); ++row) {
            const long double jr = BasisSpec::jm(row).first;
            for (int col = 0; col < c3.cols(); ++col) {
                const long double jc = BasisSpec::jm(col).first;
                c3(row, col) *= std::exp(s * (jc * (jc + 1) - jr * (jr + 1)));
            }
        }
        const MatrixXcld c1 = -i_over_sh * (e_j2 * c3 * e_mj2 - ch * c3);
        const MatrixXcld c2 = i_over_sh * (e_j1 * c3 * e_mj1 - ch * c3);
        if (s == 0.5L) {
            r.x1 = interior_max_abs_extended(c1, x1, spec);
            r.x2 = interior_max_abs_extended(c2, x2, spec);
            r.x3 = interior_max_abs_extended(c3, x3, spec);
        } else {
            r.z1 = interior_max_abs_extended(c1, z1, spec);
            r.z2 = interior_max_abs_extended(c2, z2, spec);
            r.z3 = interior_max_abs_extended(c3, z3, spec);
        }
    }
    const Eigen::MatrixXcd z3_dag = op_matrix(Op::Z3, spec).entries.adjoint();
    r.zero_exponent = (conjugate(z3_dag, spec, 0.0) - z3_dag).cwiseAbs().maxCoeff();

    // z3* phi(z*) against <z|Z3^dagger phi> for phi supported on j < j_max, where Z3^dagger phi is not truncated.
    std::mt19937_64 rng(20);
    std::normal_distribution<double> gauss;
    StateVector phi{spec, Eigen::VectorXcd::Zero(spec.dim())};
    for (int i = 0; i < spec.j_max * spec.j_max; ++i) phi.c[i] = Complex(gauss(rng), gauss(rng));
    StateVector moved{spec, z3_dag * phi.c};
    const BargmannFn f = BargmannFn::from_coeffs(phi), g = BargmannFn::from_coeffs(moved);
    for (int k = 0; k < 10; ++k) {
        const ComplexVec3 z = phase_to_z(sample_phase_point(rng, 1.0));
        const Complex lhs = std::conj(z[2]) * f(z);
        r.pointwise = std::max(r.pointwise, std::abs(lhs - g(z)) / std::abs(lhs));
    }
    return r;
}

Complex coord_ket(int j, int m, const RealVec3& x) {
    if (j < 0 || std::abs(m) > j) {
        throw DomainError("coord_ket: |m| > j");
    }
    const int p = std::abs(m);
    return std::sqrt((2.0 * j + 1.0) / (4.0 * pi)) * std::exp(log_ket_factor(j, p)) * ipow(ladder_x(m, x), p) *
           gegenbauer_c(j - p, p + 0.5, Complex(x[2]));
}

Complex coordinate_kernel(const RealVec3& x, const ComplexVec3& z, const SeriesConfig& series) {
    return heat_legendre_series(dot(x, z), 0.5, series) / std::sqrt(4.0 * pi);
}

Complex map_U(const SphereFn& phi, const ComplexVec3& z, const SphereGrid& sphere, const SeriesConfig& series) {
    const ComplexVec3 zc = z.conj();
    Complex sum = 0.0;
    for (std::size_t it = 0; it < sphere.theta.size(); ++it) {
        for (std::size_t ip = 0; ip < sphere.phi.size(); ++ip) {
            const double th = sphere.theta.nodes[it], ph = sphere.phi.nodes[ip];
            const double w = sphere.theta.weights[it] * sphere.phi.weights[ip];
            sum += w * coordinate_kernel(unit_vector(th, ph), zc, series) * phi(th, ph);
        }
    }
    return sum;
}

Eigen::VectorXcd map_U_inv_batch(const BargmannFn& phi, std::span<const RealVec3> xs, const ProductGrid& grid,
                                 const SeriesConfig& series, Exec exec) {
    validate_grid(grid);
    // conj(left) = k(x.z)
    const kernels::Sampler left = [xs, series](const ComplexVec3& z, std::span<Complex> out) {
        for (std::size_t a = 0; a < xs.size(); ++a) out[a] = std::conj(coordinate_kernel(xs[a], z, series));
    };
    const kernels::Sampler right = [&phi](const ComplexVec3& z, std::span<Complex> out) { out[0] = phi(z); };
    return kernels::cross_accumulate(grid, left, static_cast<int>(xs.size()), right, 1, exec).col(0);
}

Complex map_U_inv(const BargmannFn& phi, const RealVec3& x, const ProductGrid& grid, const SeriesConfig& series,
                  Exec exec) {
    return map_U_inv_batch(phi, std::span<const RealVec3>(&x, 1), grid, series, exec)[0];
}

DenseUCheck map_U_dense(int j_max, std::span<const RealVec3> xs, const ProductGrid& grid, const SphereGrid& sphere,
                        const SeriesConfig& series, Exec exec) {
    validate_grid(grid);
    const std::size_t n_phi = grid.phi.size();
    if (sphere.phi.size() % n_phi != 0) {
        throw DomainError("map_U_dense: sphere phi count must be a multiple of the Bargmann phi count");
    }
    const int nf = (j_max + 1) * (j_max + 1);
    const int nx = static_cast<int>(xs.size());
    std::vector<RealVec3> nodes;
    Eigen::MatrixXcd wy(sphere.size(), nf);  // w_s Y_b(x_s)
    for (std::size_t it = 0; it < sphere.theta.size(); ++it) {
        for (std::size_t ip = 0; ip < sphere.phi.size(); ++ip) {
            const double th = sphere.theta.nodes[it], ph = sphere.phi.nodes[ip];
            const double w = sphere.theta.weights[it] * sphere.phi.weights[ip];
            const auto row = static_cast<Eigen::Index>(nodes.size());
            for (int j = 0; j <= j_max; ++j) {
                for (int m = -j; m <= j; ++m) wy(row, BasisSpec::index(j, m)) = w * sph_harm(j, m, th, ph);
            }
            nodes.push_back(unit_vector(th, ph));
        }
    }

    // The sphere grid is invariant under the rotations by the Bargmann phi steps, so
    // (U Y_jm)(z*) at phi_k is e^{i m phi_k} times its value at phi = 0.
    const std::size_t n_t = grid.theta.size(), n_a = grid.alpha.size();
    const auto slot = [n_t, n_a](std::size_t il, std::size_t it, std::size_t ia) { return (il * n_t + it) * n_a + ia; };
    const Eigen::MatrixXcd table = kernels::tabulate(
        grid.l.size() * n_t * n_a, nf,
        [&](std::size_t i, std::span<Complex> row) {
            const std::size_t ia = i % n_a, it = (i / n_a) % n_t, il = i / (n_a * n_t);
            const ComplexVec3 zc = phase_to_z({grid.theta.nodes[it], 0.0, grid.alpha.nodes[ia], grid.l.nodes[il]}).conj();
            Eigen::Map<Eigen::RowVectorXcd> uy(row.data(), nf);
            uy.setZero();
            for (std::size_t s = 0; s < nodes.size(); ++s) {
                uy += coordinate_kernel(nodes[s], zc, series) * wy.row(static_cast<Eigen::Index>(s));
            }
        },
        exec);
    std::vector<int> ms(nf);
    for (int b = 0; b < nf; ++b) ms[b] = BasisSpec::jm(b).second;

    const kernels::IndexedSampler u_values = [&](const ComplexVec3&, const kernels::GridPoint& at,
                                                 std::span<Complex> out) {
        const auto row = table.row(static_cast<Eigen::Index>(slot(at.il, at.it, at.ia)));
        const double ph = grid.phi.nodes[at.ip];
        for (int b = 0; b < nf; ++b) out[b] = std::polar(1.0, ms[b] * ph) * row[b];
    };
    // conj(left) is U Y_a for the Gram rows and k(x_a.z) for the round-trip rows.
    const kernels::IndexedSampler left = [&](const ComplexVec3& z, const kernels::GridPoint& at,
                                             std::span<Complex> out) {
        u_values(z, at, out.first(nf));
        for (int a = 0; a < nx; ++a) out[nf + a] = std::conj(coordinate_kernel(xs[a], z, series));
    };
    const Eigen::MatrixXcd m = kernels::cross_accumulate_indexed(grid, left, nf + nx, u_values, nf, exec);
    return {m.topRows(nf), m.bottomRows(nx)};
}

double husimi(const ComplexVec3& z, const RealVec3& x, const SeriesConfig& series) {
    check_label(z, "husimi");
    return std::norm(coordinate_kernel(x, z, series)) / overlap(z, z, series).real();
}

HusimiField husimi_grid(const ComplexVec3& z, int n_theta, int n_phi, const SeriesConfig& series, Exec exec) {
    if (n_theta < 8 || n_phi < 8) {
        throw DomainError("husimi_grid: n_theta and n_phi must be at least 8");
    }
    check_label(z, "husimi_grid");
    const SphereGrid sphere = make_sphere_grid(n_theta, n_phi);
    HusimiField f;
    f.z = z;
    f.thetas = sphere.theta.nodes;
    f.theta_weights = sphere.theta.weights;
    f.phis = sphere.phi.nodes;
    const double norm = overlap(z, z, series).real();
    f.values = kernels::sample_sphere(
        f.thetas, f.phis,
        [&](double th, double ph) { return std::norm(coordinate_kernel(unit_vector(th, ph), z, series)) / norm; },
        exec);
    const double w_phi = 2.0 * pi / n_phi;
    std::size_t best = 0;
    for (std::size_t it = 0; it < f.thetas.size(); ++it) {
        double row = 0.0;
        for (std::size_t ip = 0; ip < f.phis.size(); ++ip) {
            const std::size_t k = it * f.phis.size() + ip;
            row += f.values[k];
            if (f.values[k] > f.values[best]) best = k;
        }
        f.normalization += f.theta_weights[it] * w_phi * row;
    }
    f.argmax_theta = best / f.phis.size();
    f.argmax_phi = best % f.phis.size();
    return f;
}

HusimiField husimi_grid(const PhasePoint& p, int n_theta, int n_phi, const SeriesConfig& series, Exec exec) {
    HusimiField f = husimi_grid(phase_to_z(p), n_theta, n_phi, series, exec);
    f.point = p;
    return f;
}

std::pair<std::size_t, std::size_t> nearest_node(const HusimiField& f, const RealVec3& x) {
    std::pair<std::size_t, std::size_t> best{0, 0};
    double best_dot = -2.0;
    for (std::size_t it = 0; it < f.thetas.size(); ++it) {
        for (std::size_t ip = 0; ip < f.phis.size(); ++ip) {
            const double d = dot(unit_vector(f.thetas[it], f.phis[ip]), x);
            if (d > best_dot) {
                best_dot = d;
                best = {it, ip};
            }
        }
    }
    return best;
}

}  // namespace scs
