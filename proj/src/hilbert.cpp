#include "scs/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "scs/specfun.hpp"

namespace scs {

namespace {

constexpr Complex I{0.0, 1.0};

Complex ipow(Complex x, int n) {
    Complex r = 1.0;
    for (int k = 0; k < n; ++k) {
        r *= x;
    }
    return r;
}

// (-eps(m) z1 + i z2) / 2 and its gradient in (z1, z2).
Complex ladder_g(int m, const ComplexVec3& z) { return (m >= 0 ? -z[0] : z[0]) * 0.5 + I * z[1] * 0.5; }

double log_prefactor(int j, int p) { return -0.5 * j * (j + 1.0) + log_ket_factor(j, p); }

double tail_mass_bound(int j_max, double cosh2l) {
    const double logr = std::log(std::max(cosh2l, 1.0));
    double tail = 0.0;
    for (int j = j_max + 1; j < j_max + 200; ++j) {
        const double term = std::exp(-j * (j + 1.0) + std::log(2.0 * j + 1.0) + j * logr);
        tail += term;
        if (term < 1e-300 || (j > j_max + 2 && term < 1e-17 * tail)) {
            break;
        }
    }
    return tail;
}

template <class T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
void put(CMatrix<T>& a, int j_row, int m_row, int col, T v, const BasisSpec& spec) {
    if (j_row < 0 || j_row > spec.j_max || std::abs(m_row) > j_row) {
        return;
    }
    a(BasisSpec::index(j_row, m_row), col) += v;
}

template <class T>
CMatrix<T> raw(Op op, const BasisSpec& spec) {
    using std::sqrt;
    const int n = spec.dim();
    CMatrix<T> a = CMatrix<T>::Zero(n, n);
    for (int j = 0; j <= spec.j_max; ++j) {
        const T dj = j;
        const T up = sqrt((2 * dj + 1) * (2 * dj + 3));
        const T down = j > 0 ? sqrt((2 * dj - 1) * (2 * dj + 1)) : T(1);
        for (int m = -j; m <= j; ++m) {
            const int col = BasisSpec::index(j, m);
            const T dm = m;
            switch (op) {
                case Op::J3:
                    a(col, col) = dm;
                    break;
                case Op::Jsq:
                    a(col, col) = dj * (dj + 1);
                    break;
                case Op::Jplus:
                    put<T>(a, j, m + 1, col, sqrt((dj - dm) * (dj + dm + 1)), spec);
                    break;
                case Op::Jminus:
                    put<T>(a, j, m - 1, col, sqrt((dj + dm) * (dj - dm + 1)), spec);
                    break;
                case Op::Xplus:
                    put<T>(a, j + 1, m + 1, col, -sqrt((dj + dm + 1) * (dj + dm + 2)) / up, spec);
                    if (j > 0) put<T>(a, j - 1, m + 1, col, sqrt((dj - dm - 1) * (dj - dm)) / down, spec);
                    break;
                case Op::Xminus:
                    put<T>(a, j + 1, m - 1, col, sqrt((dj - dm + 1) * (dj - dm + 2)) / up, spec);
                    if (j > 0) put<T>(a, j - 1, m - 1, col, -sqrt((dj + dm - 1) * (dj + dm)) / down, spec);
                    break;
                case Op::X3:
                    put<T>(a, j + 1, m, col, sqrt((dj - dm + 1) * (dj + dm + 1)) / up, spec);
                    if (j > 0) put<T>(a, j - 1, m, col, sqrt((dj - dm) * (dj + dm)) / down, spec);
                    break;
                default:
                    throw DomainError("op_matrix: not a primitive operator");
            }
        }
    }
    return a;
}

// Z_rc = X_rc exp((j_c(j_c+1) - j_r(j_r+1)) s), s = 1/2 for Z = E^{-1} X E.
template <class T>
CMatrix<T> conjugate_by_casimir(const CMatrix<T>& x, T s) {
    CMatrix<T> out = x;
    for (int r = 0; r < x.rows(); ++r) {
        const T jr = BasisSpec::jm(r).first;
        for (int c = 0; c < x.cols(); ++c) {
            if (out(r, c) == std::complex<T>(0)) continue;
            const T jc = BasisSpec::jm(c).first;
            out(r, c) *= std::exp(s * (jc * (jc + 1) - jr * (jr + 1)));
        }
    }
    return out;
}

template <class T>
CMatrix<T> build(Op op, const BasisSpec& spec) {
    const std::complex<T> two_i(0, 2);
    const T half = T(1) / 2;
    switch (op) {
        case Op::J1: return half * (raw<T>(Op::Jplus, spec) + raw<T>(Op::Jminus, spec));
        case Op::J2: return (raw<T>(Op::Jplus, spec) - raw<T>(Op::Jminus, spec)) / two_i;
        case Op::X1: return half * (raw<T>(Op::Xplus, spec) + raw<T>(Op::Xminus, spec));
        case Op::X2: return (raw<T>(Op::Xplus, spec) - raw<T>(Op::Xminus, spec)) / two_i;
        case Op::Z1: return conjugate_by_casimir<T>(build<T>(Op::X1, spec), half);
        case Op::Z2: return conjugate_by_casimir<T>(build<T>(Op::X2, spec), half);
        case Op::Z3: return conjugate_by_casimir<T>(raw<T>(Op::X3, spec), half);
        default: return raw<T>(op, spec);
    }
}

template <class T>
CMatrix<T> block_exp_impl(const CMatrix<T>& generator, const BasisSpec& spec) {
    CMatrix<T> out = CMatrix<T>::Zero(spec.dim(), spec.dim());
    for (int j = 0; j <= spec.j_max; ++j) {
        const int o = j * j, n = 2 * j + 1;
        const CMatrix<T> block = generator.block(o, o, n, n);
        out.block(o, o, n, n) = block.exp();
    }
    return out;
}

Eigen::MatrixXcd mat(Op op, const BasisSpec& spec) { return op_matrix(op, spec).entries; }

// acosh(z) / (sqrt(z-1) sqrt(z+1)), analytic at z = 1.
Complex rotation_scalar(Complex z) {
    const Complex w = z - 1.0;
    if (std::abs(w) < 1e-6) {
        return 1.0 - w / 3.0 + 2.0 * w * w / 15.0;
    }
    return std::acosh(z) / (std::sqrt(z - 1.0) * std::sqrt(z + 1.0));
}

}  // namespace

std::pair<int, int> BasisSpec::jm(int index) {
    const int j = static_cast<int>(std::sqrt(static_cast<double>(index)));
    int jj = j;
    while (jj * jj > index) --jj;
    while ((jj + 1) * (jj + 1) <= index) ++jj;
    return {jj, index - jj * jj - jj};
}

void BasisSpec::validate() const {
    if (j_max < 0 || j_max > 60) {
        throw DomainError("BasisSpec: j_max must be in [0, 60]");
    }
}

std::string to_string(Op op) {
    switch (op) {
        case Op::J1: return "J1";
        case Op::J2: return "J2";
        case Op::J3: return "J3";
        case Op::Jplus: return "J+";
        case Op::Jminus: return "J-";
        case Op::Jsq: return "Jsq";
        case Op::X1: return "X1";
        case Op::X2: return "X2";
        case Op::X3: return "X3";
        case Op::Xplus: return "X+";
        case Op::Xminus: return "X-";
        case Op::Z1: return "Z1";
        case Op::Z2: return "Z2";
        case Op::Z3: return "Z3";
    }
    return "?";
}

Op parse_op(const std::string& name) {
    for (Op op : {Op::J1, Op::J2, Op::J3, Op::Jplus, Op::Jminus, Op::Jsq, Op::X1, Op::X2, Op::X3, Op::Xplus,
                  Op::Xminus, Op::Z1, Op::Z2, Op::Z3}) {
        if (to_string(op) == name) return op;
    }
    throw DomainError("unknown operator tag: " + name);
}

void check_label(const ComplexVec3& z, const char* who) {
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) {
            throw DomainError(std::string(who) + ": non-finite label");
        }
    }
    if (std::abs(z.dot(z) - 1.0) > 1e-10 * std::max(1.0, z.norm2())) {
        throw DomainError(std::string(who) + ": label violates z.z = 1");
    }
}

Complex coherent_coeff(int j, int m, const ComplexVec3& z) {
    if (j < 0 || std::abs(m) > j) {
        throw DomainError("coherent_coeff: |m| > j");
    }
    check_label(z, "coherent_coeff");
    const int p = std::abs(m);
    return std::exp(log_prefactor(j, p)) * std::sqrt(2.0 * j + 1.0) * ipow(ladder_g(m, z), p) *
           gegenbauer_c(j - p, p + 0.5, z[2]);
}

void coherent_coeffs(const ComplexVec3& z, int j_max, std::span<Complex> out) {
    std::vector<Complex> c(j_max + 1);
    const Complex gp = ladder_g(1, z), gm = ladder_g(-1, z);
    Complex gp_pow = 1.0, gm_pow = 1.0;
    for (int p = 0; p <= j_max; ++p) {
        gegenbauer_c_all(p + 0.5, z[2], std::span<Complex>(c.data(), j_max - p + 1));
        for (int j = p; j <= j_max; ++j) {
            const double f = std::exp(log_prefactor(j, p)) * std::sqrt(2.0 * j + 1.0);
            out[BasisSpec::index(j, p)] = f * gp_pow * c[j - p];
            if (p > 0) out[BasisSpec::index(j, -p)] = f * gm_pow * c[j - p];
        }
        gp_pow *= gp;
        gm_pow *= gm;
    }
}

CoeffJet coherent_coeff_jet(int j, int m, const ComplexVec3& z) {
    if (j < 0 || std::abs(m) > j) {
        throw DomainError("coherent_coeff_jet: |m| > j");
    }
    const int p = std::abs(m), n = j - p;
    const double a = p + 0.5;
    const double k = std::exp(log_prefactor(j, p)) * std::sqrt(2.0 * j + 1.0);
    const Complex g = ladder_g(m, z);
    const std::array<Complex, 3> dg{m >= 0 ? -0.5 : 0.5, 0.5 * I, 0.0};
    const Complex g0 = ipow(g, p);
    const Complex g1 = p >= 1 ? double(p) * ipow(g, p - 1) : 0.0;
    const Complex g2 = p >= 2 ? double(p * (p - 1)) * ipow(g, p - 2) : 0.0;
    const Complex c0 = gegenbauer_c(n, a, z[2]);
    const Complex c1 = n >= 1 ? 2.0 * a * gegenbauer_c(n - 1, a + 1.0, z[2]) : 0.0;
    const Complex c2 = n >= 2 ? 4.0 * a * (a + 1.0) * gegenbauer_c(n - 2, a + 2.0, z[2]) : 0.0;

    CoeffJet out{};
    out.value = k * g0 * c0;
    for (int r = 0; r < 3; ++r) {
        const double dr = r == 2 ? 1.0 : 0.0;
        out.grad[r] = k * (g1 * dg[r] * c0 + g0 * c1 * dr);
        for (int s = 0; s < 3; ++s) {
            const double ds = s == 2 ? 1.0 : 0.0;
            out.hess[r][s] = k * (g2 * dg[r] * dg[s] * c0 + g1 * (dg[r] * ds + dg[s] * dr) * c1 + g0 * c2 * dr * ds);
        }
    }
    return out;
}

StateVector coherent_state(const ComplexVec3& z, const BasisSpec& spec) {
    spec.validate();
    check_label(z, "coherent_state");
    StateVector s{spec, Eigen::VectorXcd(spec.dim())};
    coherent_coeffs(z, spec.j_max, std::span<Complex>(s.c.data(), s.c.size()));
    s.tail_bound = tail_mass_bound(spec.j_max, z.norm2());
    s.truncation_warning = s.tail_bound > 1e-10;
    return s;
}

StateVector fiducial_state(const BasisSpec& spec) {
    spec.validate();
    StateVector s{spec, Eigen::VectorXcd::Zero(spec.dim())};
    for (int j = 0; j <= spec.j_max; ++j) {
        s.c[BasisSpec::index(j, 0)] = std::exp(-0.5 * j * (j + 1.0)) * std::sqrt(2.0 * j + 1.0);
    }
    s.tail_bound = tail_mass_bound(spec.j_max, 1.0);
    s.truncation_warning = s.tail_bound > 1e-10;
    return s;
}

Complex overlap(const ComplexVec3& z, const ComplexVec3& w, const SeriesConfig& series) {
    check_label(z, "overlap");
    check_label(w, "overlap");
    return heat_legendre_series(z.conj().dot(w), 1.0, series);
}

OperatorMatrix op_matrix(Op op, const BasisSpec& spec) {
    spec.validate();
    OperatorMatrix out{spec, op, OperatorMatrix::Band::diagonal_in_j, build<double>(op, spec)};
    switch (op) {
        case Op::X1: case Op::X2: case Op::X3: case Op::Xplus: case Op::Xminus:
        case Op::Z1: case Op::Z2: case Op::Z3:
            out.band = OperatorMatrix::Band::adjacent_j;
            break;
        default:
            break;
    }
    return out;
}

MatrixXcld op_matrix_extended(Op op, const BasisSpec& spec) {
    spec.validate();
    return build<long double>(op, spec);
}

Eigen::MatrixXcd block_exp(const Eigen::MatrixXcd& generator, const BasisSpec& spec) {
    return block_exp_impl<double>(generator, spec);
}

MatrixXcld block_exp_extended(const MatrixXcld& generator, const BasisSpec& spec) {
    return block_exp_impl<long double>(generator, spec);
}

StateVector coherent_via_rotation(const ComplexVec3& z, const BasisSpec& spec) {
    spec.validate();
    check_label(z, "coherent_via_rotation");
    StateVector fid = fiducial_state(spec);
    const double tol = 1e-12;
    if (std::abs(z[0]) <= tol && std::abs(z[1]) <= tol && std::abs(z[2] - 1.0) <= tol) {
        return fid;
    }
    Eigen::MatrixXcd gen;
    if (std::abs(z[2] + 1.0) <= tol) {
        if (std::abs(z[0]) > 1e-6 || std::abs(z[1]) > 1e-6) {
            throw DomainError("coherent_via_rotation: z3 = -1 with z != -n3, generator degenerates");
        }
        gen = I * pi * mat(Op::J1, spec);
    } else {
        // (arccosh z3 / sqrt(1 - z3^2)) (z x n3).J with z x n3 = (z2, -z1, 0)
        const Complex s = I * rotation_scalar(z[2]);
        gen = s * (z[1] * mat(Op::J1, spec) - z[0] * mat(Op::J2, spec));
    }
    StateVector out{spec, block_exp(gen, spec) * fid.c};
    out.tail_bound = tail_mass_bound(spec.j_max, z.norm2());
    out.truncation_warning = out.tail_bound > 1e-10;
    return out;
}

double interior_max_abs(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const BasisSpec& spec) {
    const int rows = spec.interior_dim();
    if (rows == 0) return 0.0;
    return (a.topRows(rows) - b.topRows(rows)).cwiseAbs().maxCoeff();
}

double interior_max_abs_extended(const MatrixXcld& a, const MatrixXcld& b, const BasisSpec& spec) {
    const int rows = spec.interior_dim();
    if (rows == 0) return 0.0;
    return static_cast<double>((a.topRows(rows) - b.topRows(rows)).cwiseAbs().maxCoeff());
}

double eigenrelation_residual(const ComplexVec3& z, const BasisSpec& spec) {
    const StateVector s = coherent_state(z, spec);
    const int rows = spec.interior_dim();
    double worst = 0.0;
    const Op ops[3] = {Op::Z1, Op::Z2, Op::Z3};
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXcd r = mat(ops[i], spec) * s.c - z[i] * s.c;
        if (rows > 0) worst = std::max(worst, r.head(rows).cwiseAbs().maxCoeff());
    }
    return worst;
}

double complex_rotation_residual(const std::array<Complex, 3>& w, const BasisSpec& spec) {
    const Eigen::MatrixXcd J[3] = {mat(Op::J1, spec), mat(Op::J2, spec), mat(Op::J3, spec)};
    const Eigen::MatrixXcd X[3] = {mat(Op::X1, spec), mat(Op::X2, spec), mat(Op::X3, spec)};
    const Eigen::MatrixXcd wj = w[0] * J[0] + w[1] * J[1] + w[2] * J[2];
    const Eigen::MatrixXcd e_plus = block_exp(wj, spec);
    const Eigen::MatrixXcd e_minus = block_exp(-wj, spec);

    const Complex w2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    Complex ch, shc, c2;  // cosh s, sinh(s)/s, (1 - cosh s)/s^2
    if (std::abs(w2) < 1e-8) {
        ch = 1.0 + w2 / 2.0;
        shc = 1.0 + w2 / 6.0;
        c2 = -0.5 - w2 / 24.0;
    } else {
        const Complex s = std::sqrt(w2);
        ch = std::cosh(s);
        shc = std::sinh(s) / s;
        c2 = (1.0 - ch) / w2;
    }
    const Eigen::MatrixXcd wx = w[0] * X[0] + w[1] * X[1] + w[2] * X[2];
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        const Eigen::MatrixXcd lhs = e_plus * X[i] * e_minus;
        const Eigen::MatrixXcd rhs = ch * X[i] - I * shc * (w[a] * X[b] - w[b] * X[a]) + c2 * w[i] * wx;
        worst = std::max(worst, interior_max_abs(lhs, rhs, spec));
    }
    return worst;
}

AlgebraResiduals algebra_residuals(const BasisSpec& spec) {
    const Eigen::MatrixXcd J[3] = {mat(Op::J1, spec), mat(Op::J2, spec), mat(Op::J3, spec)};
    const Eigen::MatrixXcd X[3] = {mat(Op::X1, spec), mat(Op::X2, spec), mat(Op::X3, spec)};
    const Eigen::MatrixXcd Z[3] = {mat(Op::Z1, spec), mat(Op::Z2, spec), mat(Op::Z3, spec)};
    const int n = spec.dim();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(n, n);
    auto full = [](const Eigen::MatrixXcd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; };

    AlgebraResiduals r{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                r.xx_commutators = std::max(r.xx_commutators, interior_max_abs(X[i] * X[j] - X[j] * X[i], zero, spec));
                r.jx_commutators = std::max(r.jx_commutators, interior_max_abs(J[i] * X[j] - X[j] * J[i], zero, spec));
                continue;
            }
            const int k = 3 - i - j;
            const double eps = (j == (i + 1) % 3) ? 1.0 : -1.0;
            r.jj_commutators = std::max(r.jj_commutators, full(J[i] * J[j] - J[j] * J[i] - I * eps * J[k]));
            r.xx_commutators = std::max(r.xx_commutators, interior_max_abs(X[i] * X[j] - X[j] * X[i], zero, spec));
            r.jx_commutators =
                std::max(r.jx_commutators, interior_max_abs(J[i] * X[j] - X[j] * J[i], I * eps * X[k], spec));
        }
    }
    r.x_squared = interior_max_abs(X[0] * X[0] + X[1] * X[1] + X[2] * X[2], id, spec);
    Eigen::MatrixXcd jx = zero;
    for (int i = 0; i < 3; ++i) jx += 0.5 * (J[i] * X[i] + X[i] * J[i]);
    r.j_dot_x = interior_max_abs(jx, zero, spec);
    const Eigen::MatrixXcd z2 = Z[0] * Z[0] + Z[1] * Z[1] + Z[2] * Z[2];
    r.z_squared = interior_max_abs(z2, id, spec);
    Eigen::MatrixXd scale = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < 3; ++i) scale += Z[i].cwiseAbs() * Z[i].cwiseAbs();
    const int rows = spec.interior_dim();
    if (rows > 0) {
        r.z_squared_scaled = ((z2 - id).topRows(rows).cwiseAbs().array() /
                              scale.topRows(rows).array().max(1.0)).maxCoeff();
    }
    for (int i = 0; i < 3; ++i) {
        r.hermiticity = std::max(r.hermiticity, full(J[i] - J[i].adjoint()));
        r.hermiticity = std::max(r.hermiticity, full(X[i] - X[i].adjoint()));
        r.hermiticity = std::max(r.hermiticity, full(Z[i].adjoint() - conjugate_by_casimir<double>(X[i], -0.5)));
    }
    return r;
}

}  // namespace scs
