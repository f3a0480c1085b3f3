#include "scs/kernels.hpp"

#include <cmath>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scs::kernels {

namespace {

struct Trig {
    std::vector<double> c, s;
    explicit Trig(const std::vector<double>& x) : c(x.size()), s(x.size()) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            c[i] = std::cos(x[i]);
            s[i] = std::sin(x[i]);
        }
    }
};

struct GridTrig {
    Trig phi, theta, alpha;
    std::vector<double> ch, sh;
    explicit GridTrig(const ProductGrid& g) : phi(g.phi.nodes), theta(g.theta.nodes), alpha(g.alpha.nodes) {
        for (double l : g.l.nodes) {
            ch.push_back(std::cosh(l));
            sh.push_back(std::sinh(l));
        }
    }

    // Same expression as phase_to_z, from cached trigonometric values.
    ComplexVec3 z(std::size_t il, std::size_t it, std::size_t ia, std::size_t ip) const {
        const double chl = ch[il], shl = sh[il];
        const double ct = theta.c[it], st = theta.s[it];
        const double cp = phi.c[ip], sp = phi.s[ip];
        const double ca = alpha.c[ia], sa = alpha.s[ia];
        return {Complex(chl * st * cp, shl * (sa * cp * ct - ca * sp)),
                Complex(chl * st * sp, shl * (sa * sp * ct + ca * cp)), Complex(chl * ct, -shl * sa * st)};
    }
};

// Accumulates one l-slab into out.
void accumulate_slab(const ProductGrid& grid, const GridTrig& trig, std::size_t il, const IndexedSampler& left,
                     int n_left, const IndexedSampler& right, int n_right, Eigen::VectorXcd& a, Eigen::VectorXcd& b,
                     Eigen::MatrixXcd& out) {
    const bool same = !right;
    for (std::size_t it = 0; it < grid.theta.size(); ++it) {
        for (std::size_t ia = 0; ia < grid.alpha.size(); ++ia) {
            for (std::size_t ip = 0; ip < grid.phi.size(); ++ip) {
                const double w = grid.norm * grid.l.weights[il] * grid.theta.weights[it] *
                                 grid.alpha.weights[ia] * grid.phi.weights[ip];
                const ComplexVec3 z = trig.z(il, it, ia, ip);
                const GridPoint at{il, it, ia, ip};
                left(z, at, std::span<Complex>(a.data(), n_left));
                if (same) {
                    out.noalias() += w * a.conjugate() * a.transpose();
                } else {
                    right(z, at, std::span<Complex>(b.data(), n_right));
                    out.noalias() += w * a.conjugate() * b.transpose();
                }
            }
        }
    }
}

IndexedSampler indexed(const Sampler& s) {
    if (!s) return nullptr;
    return [s](const ComplexVec3& z, const GridPoint&, std::span<Complex> out) { s(z, out); };
}

}  // namespace

void LogSumExp::add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) {
        return;
    }
    if (log_term > max_) {
        scaled_sum_ = scaled_sum_ * std::exp(max_ - log_term) + 1.0;
        max_ = log_term;
    } else {
        scaled_sum_ += std::exp(log_term - max_);
    }
}

double LogSumExp::value() const { return max_ + std::log(scaled_sum_); }

std::vector<double> log_heat_density_serial(std::span<const double> l_nodes, const HeatKernelConfig& cfg) {
    std::vector<double> out(l_nodes.size());
    for (std::size_t i = 0; i < l_nodes.size(); ++i) {
        out[i] = log_heat_density(l_nodes[i], cfg);
    }
    return out;
}

std::vector<double> log_heat_density_omp(std::span<const double> l_nodes, const HeatKernelConfig& cfg) {
    std::vector<double> out(l_nodes.size());
    std::exception_ptr error;
    std::mutex error_mutex;
    const long n = static_cast<long>(l_nodes.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = log_heat_density(l_nodes[i], cfg);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<double> log_heat_density(std::span<const double> l_nodes, const HeatKernelConfig& cfg, Exec exec) {
    return exec == Exec::serial ? log_heat_density_serial(l_nodes, cfg) : log_heat_density_omp(l_nodes, cfg);
}

Eigen::MatrixXcd cross_accumulate_indexed_serial(const ProductGrid& grid, const IndexedSampler& left, int n_left,
                                                 const IndexedSampler& right, int n_right) {
    if (!right) n_right = n_left;
    const GridTrig trig(grid);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_left, n_right);
    Eigen::VectorXcd a(n_left), b(n_right);
    for (std::size_t il = 0; il < grid.l.size(); ++il) {
        accumulate_slab(grid, trig, il, left, n_left, right, n_right, a, b, out);
    }
    return out;
}

Eigen::MatrixXcd cross_accumulate_indexed_omp(const ProductGrid& grid, const IndexedSampler& left, int n_left,
                                              const IndexedSampler& right, int n_right) {
    if (!right) n_right = n_left;
    const GridTrig trig(grid);
    const long n_slabs = static_cast<long>(grid.l.size());
    std::vector<Eigen::MatrixXcd> partial(n_slabs, Eigen::MatrixXcd::Zero(n_left, n_right));
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel
    {
        Eigen::VectorXcd a(n_left), b(n_right);
#pragma omp for schedule(dynamic)
        for (long il = 0; il < n_slabs; ++il) {
            try {
                accumulate_slab(grid, trig, il, left, n_left, right, n_right, a, b, partial[il]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_left, n_right);
    for (const auto& p : partial) {
        out += p;
    }
    return out;
}

Eigen::MatrixXcd cross_accumulate_indexed(const ProductGrid& grid, const IndexedSampler& left, int n_left,
                                          const IndexedSampler& right, int n_right, Exec exec) {
    return exec == Exec::serial ? cross_accumulate_indexed_serial(grid, left, n_left, right, n_right)
                                : cross_accumulate_indexed_omp(grid, left, n_left, right, n_right);
}

Eigen::MatrixXcd cross_accumulate_serial(const ProductGrid& grid, const Sampler& left, int n_left,
                                         const Sampler& right, int n_right) {
    return cross_accumulate_indexed_serial(grid, indexed(left), n_left, indexed(right), n_right);
}

Eigen::MatrixXcd cross_accumulate_omp(const ProductGrid& grid, const Sampler& left, int n_left,
                                      const Sampler& right, int n_right) {
    return cross_accumulate_indexed_omp(grid, indexed(left), n_left, indexed(right), n_right);
}

Eigen::MatrixXcd cross_accumulate(const ProductGrid& grid, const Sampler& left, int n_left, const Sampler& right,
                                  int n_right, Exec exec) {
    return cross_accumulate_indexed(grid, indexed(left), n_left, indexed(right), n_right, exec);
}

Eigen::MatrixXcd tabulate_serial(std::size_t n_items, int width, const RowFn& f) {
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(n_items, width);
    for (std::size_t i = 0; i < n_items; ++i) {
        f(i, std::span<Complex>(out.row(i).data(), width));
    }
    return out;
}

Eigen::MatrixXcd tabulate_omp(std::size_t n_items, int width, const RowFn& f) {
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(n_items, width);
    std::exception_ptr error;
    std::mutex error_mutex;
    const long n = static_cast<long>(n_items);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            f(static_cast<std::size_t>(i), std::span<Complex>(out.row(i).data(), width));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

Eigen::MatrixXcd tabulate(std::size_t n_items, int width, const RowFn& f, Exec exec) {
    return exec == Exec::serial ? tabulate_serial(n_items, width, f) : tabulate_omp(n_items, width, f);
}

std::vector<double> sample_sphere_serial(std::span<const double> thetas, std::span<const double> phis,
                                         const SphereField& f) {
    std::vector<double> out(thetas.size() * phis.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (std::size_t k = 0; k < phis.size(); ++k) {
            out[i * phis.size() + k] = f(thetas[i], phis[k]);
        }
    }
    return out;
}

std::vector<double> sample_sphere_omp(std::span<const double> thetas, std::span<const double> phis,
                                      const SphereField& f) {
    std::vector<double> out(thetas.size() * phis.size());
    const long n = static_cast<long>(thetas.size());
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            for (std::size_t k = 0; k < phis.size(); ++k) {
                out[i * phis.size() + k] = f(thetas[i], phis[k]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<double> sample_sphere(std::span<const double> thetas, std::span<const double> phis,
                                  const SphereField& f, Exec exec) {
    return exec == Exec::serial ? sample_sphere_serial(thetas, phis, f) : sample_sphere_omp(thetas, phis, f);
}

}  // namespace scs::kernels
