#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "scs/heatkernel.hpp"
#include "scs/quadrature.hpp"
#include "scs/types.hpp"

/** \file kernels.hpp
 *
 *  \brief Data-parallel inner loops, each with a serial reference and an OpenMP version.
 *
 *  The OpenMP versions reduce per-slab partial results in a fixed slab order, so
 *  the output does not depend on the thread count. The serial versions are the
 *  plain single-accumulator loops and are kept as the reference in tests and in
 *  the benchmark.
 */

namespace scs::kernels {

/// Writes values for the label z into out (out.size() values).
using Sampler = std::function<void(const ComplexVec3& z, std::span<Complex> out)>;

/// Position of a node in a ProductGrid.
struct GridPoint {
    std::size_t il, it, ia, ip;
};

/// Sampler that also receives the node position.
using IndexedSampler = std::function<void(const ComplexVec3& z, const GridPoint& at, std::span<Complex> out)>;

/// Running-max log-sum-exp accumulator.
class LogSumExp {
public:
    void add(double log_term);
    double value() const;

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double scaled_sum_ = 0.0;
};

/// log(4 pi k(2l, cfg.t) sinh 2l) at each node.
std::vector<double> log_heat_density_serial(std::span<const double> l_nodes, const HeatKernelConfig& cfg);
std::vector<double> log_heat_density_omp(std::span<const double> l_nodes, const HeatKernelConfig& cfg);
std::vector<double> log_heat_density(std::span<const double> l_nodes, const HeatKernelConfig& cfg, Exec exec);

/** M(a, b) = sum_p w_p conj(left_a(z_p)) right_b(z_p) over the product grid,
    z_p = z(theta, phi, alpha, l). A null right sampler means right = left. */
Eigen::MatrixXcd cross_accumulate_serial(const ProductGrid& grid, const Sampler& left, int n_left,
                                         const Sampler& right, int n_right);
Eigen::MatrixXcd cross_accumulate_omp(const ProductGrid& grid, const Sampler& left, int n_left,
                                      const Sampler& right, int n_right);
Eigen::MatrixXcd cross_accumulate(const ProductGrid& grid, const Sampler& left, int n_left, const Sampler& right,
                                  int n_right, Exec exec);

Eigen::MatrixXcd cross_accumulate_indexed_serial(const ProductGrid& grid, const IndexedSampler& left, int n_left,
                                                 const IndexedSampler& right, int n_right);
Eigen::MatrixXcd cross_accumulate_indexed_omp(const ProductGrid& grid, const IndexedSampler& left, int n_left,
                                              const IndexedSampler& right, int n_right);
Eigen::MatrixXcd cross_accumulate_indexed(const ProductGrid& grid, const IndexedSampler& left, int n_left,
                                          const IndexedSampler& right, int n_right, Exec exec);

/// Row i of the result is f(i, row) for i < n_items; rows have `width` entries.
using RowFn = std::function<void(std::size_t i, std::span<Complex> row)>;
Eigen::MatrixXcd tabulate_serial(std::size_t n_items, int width, const RowFn& f);
Eigen::MatrixXcd tabulate_omp(std::size_t n_items, int width, const RowFn& f);
Eigen::MatrixXcd tabulate(std::size_t n_items, int width, const RowFn& f, Exec exec);

/// Row-major samples f(theta_i, phi_k) of a real field on a sphere grid.
using SphereField = std::function<double(double theta, double phi)>;
std::vector<double> sample_sphere_serial(std::span<const double> thetas, std::span<const double> phis,
                                         const SphereField& f);
std::vector<double> sample_sphere_omp(std::span<const double> thetas, std::span<const double> phis,
                                      const SphereField& f);
std::vector<double> sample_sphere(std::span<const double> thetas, std::span<const double> phis,
                                  const SphereField& f, Exec exec);

}  // namespace scs::kernels
