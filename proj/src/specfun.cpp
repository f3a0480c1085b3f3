#include "scs/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace scs {

namespace {

void require_finite(Complex x, const char* who) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw DomainError(std::string(who) + ": non-finite argument");
    }
}

template <typename T>
T legendre_impl(int n, T x) {
    if (n < 0) {
        throw DomainError("legendre_p: negative degree");
    }
    if (n == 0) {
        return T(1);
    }
    T p0 = T(1);
    T p1 = x;
    for (int k = 1; k < n; ++k) {
        T p2 = (T(2 * k + 1) * x * p1 - T(k) * p0) / T(k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

Complex legendre_p(int n, Complex x) {
    require_finite(x, "legendre_p");
    return legendre_impl(n, x);
}

double legendre_p(int n, double x) {
    if (!std::isfinite(x)) {
        throw DomainError("legendre_p: non-finite argument");
    }
    return legendre_impl(n, x);
}

LegendreJet legendre_p_jet(int n, Complex x) {
    require_finite(x, "legendre_p_jet");
    if (n < 0) {
        throw DomainError("legendre_p_jet: negative degree");
    }
    std::vector<Complex> p(n + 1), dp(n + 1), d2p(n + 1);
    p[0] = 1.0;
    dp[0] = 0.0;
    d2p[0] = 0.0;
    if (n >= 1) {
        p[1] = x;
        dp[1] = 1.0;
        d2p[1] = 0.0;
    }
    for (int k = 2; k <= n; ++k) {
        p[k] = (double(2 * k - 1) * x * p[k - 1] - double(k - 1) * p[k - 2]) / double(k);
        dp[k] = dp[k - 2] + double(2 * k - 1) * p[k - 1];
        d2p[k] = d2p[k - 2] + double(2 * k - 1) * dp[k - 1];
    }
    return {p[n], dp[n], d2p[n]};
}

Complex gegenbauer_c(int n, double alpha, Complex x) {
    require_finite(x, "gegenbauer_c");
    if (n < 0) {
        throw DomainError("gegenbauer_c: negative degree");
    }
    if (alpha < 0.5) {
        throw DomainError("gegenbauer_c: order below 1/2");
    }
    if (n == 0) {
        return 1.0;
    }
    Complex c0 = 1.0;
    Complex c1 = 2.0 * alpha * x;
    for (int k = 2; k <= n; ++k) {
        Complex c2 = (2.0 * (k + alpha - 1.0) * x * c1 - (k + 2.0 * alpha - 2.0) * c0) / double(k);
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

void gegenbauer_c_all(double alpha, Complex x, std::span<Complex> out) {
    require_finite(x, "gegenbauer_c_all");
    if (out.empty()) {
        return;
    }
    out[0] = 1.0;
    if (out.size() > 1) {
        out[1] = 2.0 * alpha * x;
    }
    for (std::size_t k = 2; k < out.size(); ++k) {
        const double kd = double(k);
        out[k] = (2.0 * (kd + alpha - 1.0) * x * out[k - 1] - (kd + 2.0 * alpha - 2.0) * out[k - 2]) / kd;
    }
}

double assoc_legendre(int n, int m, double x) {
    if (n < 0 || m < 0) {
        throw DomainError("assoc_legendre: negative degree or order");
    }
    if (!(std::abs(x) <= 1.0)) {
        throw DomainError("assoc_legendre: |x| > 1");
    }
    if (m > n) {
        return 0.0;
    }
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double pmm = 1.0;
    for (int k = 1; k <= m; ++k) {
        pmm *= -double(2 * k - 1) * s;
    }
    if (n == m) {
        return pmm;
    }
    double pm1 = x * double(2 * m + 1) * pmm;
    for (int l = m + 2; l <= n; ++l) {
        double pl = (x * double(2 * l - 1) * pm1 - double(l + m - 1) * pmm) / double(l - m);
        pmm = pm1;
        pm1 = pl;
    }
    return pm1;
}

double log_ket_factor(int j, int p) {
    return std::lgamma(2.0 * p + 1.0) - std::lgamma(p + 1.0) +
           0.5 * (std::lgamma(double(j - p) + 1.0) - std::lgamma(double(j + p) + 1.0));
}

Complex sph_harm(int j, int m, double theta, double phi) {
    const int am = std::abs(m);
    if (j < 0 || am > j) {
        throw DomainError("sph_harm: |m| > j");
    }
    const double sign = ((am - m) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double norm = std::sqrt((2.0 * j + 1.0) / (4.0 * pi) *
                                  std::exp(std::lgamma(double(j - am) + 1.0) - std::lgamma(double(j + am) + 1.0)));
    const double plm = assoc_legendre(j, am, std::cos(theta));
    return sign * norm * plm * std::polar(1.0, m * phi);
}

Complex heat_legendre_series(Complex x, double a, const SeriesConfig& cfg) {
    require_finite(x, "heat_legendre_series");
    const double r = std::abs(x) + std::sqrt(std::norm(x) + 1.0);
    const double q = std::exp(-2.0 * a);
    Complex p0 = 1.0, p1 = x;
    Complex sum = 1.0;
    double w = 1.0;   // e^{-a j(j+1)}
    double qj = 1.0;  // q^j
    double rn = 1.0;  // r^j
    for (int j = 1; j < cfg.max_terms; ++j) {
        if (j > 1) {
            const Complex p2 = (double(2 * j - 1) * x * p1 - double(j - 1) * p0) / double(j);
            p0 = p1;
            p1 = p2;
        }
        qj *= q;
        w *= qj;
        rn *= r;
        sum += w * double(2 * j + 1) * p1;
        if (j + 1 >= cfg.min_terms) {
            // next term bound and the ratio of consecutive bounds
            const double ratio = qj * q * r * (2.0 * j + 5.0) / (2.0 * j + 3.0);
            const double bound = w * qj * q * (2.0 * j + 3.0) * rn * r;
            if (ratio < 0.5 && bound < cfg.rel_tol * std::abs(sum)) {
                return sum;
            }
        }
    }
    throw ConvergenceError("heat_legendre_series: no convergence within max_terms");
}

}  // namespace scs
