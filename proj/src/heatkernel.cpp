#include "scs/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "scs/kernels.hpp"
#include "scs/quadrature.hpp"
#include "scs/specfun.hpp"

namespace scs {

namespace {

// 1 / sqrt(cosh 1 - 1): bounds 1/sqrt(cosh s - cosh rho) for s >= rho + 1.
constexpr double tail_envelope = 1.3568891047565264;
constexpr double max_u = 40.0;
constexpr int log_sum_threshold_j = 8;

double sinhc(double q) { return q < 1e-8 ? 1.0 + q * q / 6.0 : std::sinh(q) / q; }

// u-integrand after s = rho + u^2, with e^{-rho^2/4t} factored out.
double scaled_integrand(double u, double rho, double t) {
    const double u2 = u * u;
    const double q = 0.5 * u2;
    const double s = rho + u2;
    const double gauss = std::exp(-u2 * (2.0 * rho + u2) / (4.0 * t));
    return 2.0 * s * gauss / std::sqrt(std::sinh(rho + q) * sinhc(q));
}

std::vector<double> u_breakpoints(double rho, double t, double u_max) {
    std::vector<double> b{0.0};
    if (rho > 0.0 && rho < 1.0) {
        // grade towards u = 0 where the integrand bends on the scale sqrt(rho)
        double c = std::max(0.25 * std::sqrt(rho), 1e-9);
        while (c < 1.0) {
            b.push_back(c);
            c *= 2.0;
        }
    }
    const double start = std::min(1.0, u_max);
    if (b.back() < start) {
        b.push_back(start);
    }
    const double width = std::min(0.5, std::sqrt(2.0 * t / std::max(rho, 1.0)));
    const int n = static_cast<int>(std::ceil((u_max - b.back()) / width));
    const double from = b.back();
    for (int i = 1; i <= n; ++i) {
        b.push_back(from + (u_max - from) * i / n);
    }
    return b;
}

// log of the inner integral, e^{-rho^2/4t} included.
double log_inner_integral(double rho, double t, const HeatKernelConfig& cfg) {
    // Gaussian exponent drop (S^2 - rho^2)/4t chosen from the tail envelope, then certified.
    double drop = std::log(2.0 * t * tail_envelope / cfg.tail_cut) + 0.5 * rho + 5.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double s_max = std::max(std::sqrt(rho * rho + 4.0 * t * drop), rho + 1.0);
        const double u_max = std::sqrt(s_max - rho);
        if (u_max > max_u) {
            throw AccuracyError("heat_kernel_h2: tail cutoff exceeds u = " + std::to_string(max_u),
                                std::numeric_limits<double>::infinity());
        }
        const auto b = u_breakpoints(rho, t, u_max);
        const QuadratureGrid g = composite_gauss_legendre(b, cfg.n_nodes, Coordinate::u);
        double sum = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            sum += g.weights[k] * scaled_integrand(g.nodes[k], rho, t);
        }
        const double tail = 2.0 * t * tail_envelope * std::exp(-(s_max * s_max - rho * rho) / (4.0 * t));
        const double rel_tail = tail / sum;
        if (rel_tail <= cfg.tail_cut) {
            return std::log(sum) - rho * rho / (4.0 * t);
        }
        drop += std::log(rel_tail / cfg.tail_cut) + 1.0;
        if (attempt == 3) {
            throw AccuracyError("heat_kernel_h2: tail bound not met", rel_tail);
        }
    }
    throw AccuracyError("heat_kernel_h2: tail bound not met", std::numeric_limits<double>::infinity());
}

double log_prefactor(double t) { return 0.5 * std::log(2.0) - 1.5 * std::log(4.0 * pi * t) - 0.25 * t; }

double log_sinh(double x) {
    return x > 20.0 ? x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x)) : std::log(std::sinh(x));
}

}  // namespace

void HeatKernelConfig::validate() const {
    if (!(t > 0.0)) {
        throw DomainError("HeatKernelConfig: t must be positive");
    }
    if (n_nodes < 16) {
        throw DomainError("HeatKernelConfig: n_nodes must be >= 16");
    }
    if (!(tail_cut > 0.0 && tail_cut < 1.0)) {
        throw DomainError("HeatKernelConfig: tail_cut must be in (0, 1)");
    }
    if (l_order < 2) {
        throw DomainError("HeatKernelConfig: l_order must be >= 2");
    }
}

double log_heat_kernel_h2(double rho, const HeatKernelConfig& cfg) {
    cfg.validate();
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw DomainError("heat_kernel_h2: rho must be finite and non-negative");
    }
    return log_prefactor(cfg.t) + log_inner_integral(rho, cfg.t, cfg);
}

double heat_kernel_h2(double rho, const HeatKernelConfig& cfg) { return std::exp(log_heat_kernel_h2(rho, cfg)); }

double log_heat_density(double l, const HeatKernelConfig& cfg) {
    if (!(l >= 0.0)) {
        throw DomainError("density_h: l must be non-negative");
    }
    if (l == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(4.0 * pi) + log_heat_kernel_h2(2.0 * l, cfg) + log_sinh(2.0 * l);
}

double log_density_h(double l, const HeatKernelConfig& cfg) {
    HeatKernelConfig unit = cfg;
    unit.t = 1.0;
    return log_heat_density(l, unit);
}

double density_h(double l, const HeatKernelConfig& cfg) { return std::exp(log_density_h(l, cfg)); }

double density_h_explicit(double l, const HeatKernelConfig& cfg) {
    if (!(l >= 0.0)) {
        throw DomainError("density_h_explicit: l must be non-negative");
    }
    if (l == 0.0) {
        return 0.0;
    }
    cfg.validate();
    const double integral = std::exp(log_inner_integral(2.0 * l, 1.0, cfg));
    return std::exp(-0.25) * std::sinh(2.0 * l) / std::sqrt(2.0 * pi) * integral;
}

double moment_cutoff(int j, double t) { return t * j + 10.0 * std::sqrt(t); }

double moment(int j, const HeatKernelConfig& cfg, Exec exec) {
    if (j < 0 || j > 12) {
        throw DomainError("moment: j must lie in [0, 12]");
    }
    cfg.validate();
    const int panels = static_cast<int>(std::ceil(moment_cutoff(j, cfg.t)));
    const QuadratureGrid g = panel_grid(panels, 1.0, cfg.l_order, Coordinate::l);
    // log of 4 pi k(2l, t) sinh 2l at each node
    const std::vector<double> log_h = kernels::log_heat_density(g.nodes, cfg, exec);

    if (j >= log_sum_threshold_j) {
        kernels::LogSumExp acc;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double x = std::cosh(2.0 * g.nodes[k]);
            acc.add(std::log(g.weights[k]) + log_h[k] + std::log(legendre_p(j, x)));
        }
        return std::exp(acc.value());
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        sum += g.weights[k] * std::exp(log_h[k]) * legendre_p(j, std::cosh(2.0 * g.nodes[k]));
    }
    if (!std::isfinite(sum)) {
        throw std::overflow_error("moment: non-finite sum on the direct path");
    }
    return sum;
}

HeatResidual heat_equation_residual(double rho, double t, const HeatKernelConfig& cfg) {
    if (!(rho > 0.1)) {
        throw DomainError("heat_equation_residual: rho must exceed 0.1");
    }
    if (!(t >= 0.5 && t <= 2.0)) {
        throw DomainError("heat_equation_residual: t must lie in [0.5, 2]");
    }
    constexpr double step = 1e-3;
    auto k = [&](double r, double tt) {
        HeatKernelConfig c = cfg;
        c.t = tt;
        return heat_kernel_h2(r, c);
    };
    const double k0 = k(rho, t);
    const double dk_dt = (k(rho, t + step) - k(rho, t - step)) / (2.0 * step);
    const double kp = k(rho + step, t), km = k(rho - step, t);
    const double d2 = (kp - 2.0 * k0 + km) / (step * step);
    const double d1 = (kp - km) / (2.0 * step) / std::tanh(rho);
    const double lap = d2 + d1;
    return {std::abs(dk_dt - lap), dk_dt, lap, std::max({std::abs(dk_dt), std::abs(d2), std::abs(d1)})};
}

}  // namespace scs
