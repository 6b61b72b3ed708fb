#pragma once

// Test-only reference for the Student t CDF: Gauss-Legendre quadrature of the
// density in long double. Independent of the incomplete beta route.

#include <cmath>
#include <vector>

namespace oracle {

struct GaussLegendre {
    std::vector<long double> nodes, weights;

    explicit GaussLegendre(int n) {
        const long double pi = 3.141592653589793238462643383279502884L;
        for (int i = 1; i <= n; ++i) {
            long double x = std::cos(pi * (i - 0.25L) / (n + 0.5L));
            long double dp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1);
                const long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L)
                    break;
            }
            nodes.push_back(x);
            weights.push_back(2 / ((1 - x * x) * dp * dp));
        }
    }
};

inline long double t_log_norm(long double nu) {
    const long double pi = 3.141592653589793238462643383279502884L;
    return std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) - 0.5L * std::log(nu * pi);
}

inline long double t_density(long double t, long double nu, long double log_norm) {
    return std::exp(log_norm - (nu + 1) / 2 * std::log1p(t * t / nu));
}

inline double t_cdf(double t, double nu, int panels = 100) {
    static const GaussLegendre gl(20);
    const long double log_norm = t_log_norm(nu);
    const long double a = std::fabs(static_cast<long double>(t));
    const long double h = a / panels;
    long double area = 0;
    for (int p = 0; p < panels; ++p) {
        const long double mid = (p + 0.5L) * h;
        for (std::size_t k = 0; k < gl.nodes.size(); ++k)
            area += gl.weights[k] * t_density(mid + 0.5L * h * gl.nodes[k], nu, log_norm);
    }
    area *= 0.5L * h;
    return static_cast<double>(t >= 0 ? 0.5L + area : 0.5L - area);
}

}  // namespace oracle
