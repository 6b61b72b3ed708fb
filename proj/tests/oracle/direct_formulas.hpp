#pragma once

// Test-only reference: each function written out by direct substitution into
// its closed form, with 1-based indices as in the printed definitions. Shares
// no code with the library.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

using V = std::vector<double>;

inline double at(const V &x, int i) { return x[static_cast<std::size_t>(i - 1)]; }

inline V scaled(const V &y, double c) {
    V z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        z[i] = c / 100.0 * y[i];
    return z;
}

inline double f(int id, const V &y);

inline double basic(int id, const V &y) {
    const int D = static_cast<int>(y.size());
    const double pi = M_PI;
    V x = y;
    switch (id) {
    case 1: {
        double s = 0;
        for (int i = 2; i <= D; ++i) s += at(x, i) * at(x, i);
        return at(x, 1) * at(x, 1) + 1e6 * s;
    }
    case 2: {
        double s = 0;
        for (int i = 1; i <= D; ++i)
            s += std::pow(1e6, double(i - 1) / double(D - 1)) * at(x, i) * at(x, i);
        return s;
    }
    case 3: {
        x = scaled(y, double(D) * double(D));
        double a = 0, b = 0;
        for (int i = 1; i <= D; ++i) a += (at(x, i) - 1) * (at(x, i) - 1);
        for (int i = 2; i <= D; ++i) b += at(x, i) * at(x, i - 1);
        return a + b + double(D) * (D + 1.0) * (D - 1.0) / 6.0;
    }
    case 4: {
        double s = 0;
        for (int i = 2; i <= D; ++i) s += at(x, i) * at(x, i);
        return 1e6 * at(x, 1) * at(x, 1) + s;
    }
    case 5: {
        double s = 0;
        for (int i = 1; i <= D; ++i)
            s += std::pow(std::fabs(at(x, i)), 2.0 + 4.0 * double(i - 1) / double(D - 1));
        return std::sqrt(s);
    }
    case 6: {
        x = scaled(y, 30);
        double s = 0;
        for (int i = 1; i <= D - 1; ++i) {
            const double u = at(x, i) * at(x, i) - at(x, i + 1);
            s += 100 * u * u + (at(x, i) - 1) * (at(x, i) - 1);
        }
        return s;
    }
    case 7: {
        x = scaled(y, 10);
        double s = 0;
        for (int i = 1; i <= D; ++i) s += std::fabs(at(x, i) * std::sin(at(x, i)) + 0.1 * at(x, i));
        return s;
    }
    case 8: {
        double sq = 0, cs = 0;
        for (int i = 1; i <= D; ++i) {
            sq += at(x, i) * at(x, i);
            cs += std::cos(2 * pi * at(x, i));
        }
        return -20 * std::exp(-0.2 * std::sqrt(sq / D)) - std::exp(cs / D) + 20 + M_E;
    }
    case 9: {
        x = scaled(y, 1);
        double s = 0;
        for (int i = 1; i <= D; ++i)
            for (int k = 0; k <= 20; ++k)
                s += std::pow(0.5, k) * std::cos(2 * pi * std::pow(3.0, k) * (at(x, i) + 0.5));
        double c = 0;
        for (int k = 0; k <= 20; ++k) c += std::pow(0.5, k) * std::cos(2 * pi * std::pow(3.0, k) * 0.5);
        return s - D * c;
    }
    case 10: {
        x = scaled(y, 600);
        double s = 0, p = 1;
        for (int i = 1; i <= D; ++i) {
            s += at(x, i) * at(x, i) / 4000;
            p *= std::cos(at(x, i) / std::sqrt(double(i)));
        }
        return s - p + 1;
    }
    case 11: {
        x = scaled(y, 5.12);
        double s = 0;
        for (int i = 1; i <= D; ++i) s += at(x, i) * at(x, i) - 10 * std::cos(2 * pi * at(x, i)) + 10;
        return s;
    }
    case 12: {
        x = scaled(y, 5);
        double p = 1;
        for (int i = 1; i <= D; ++i) {
            double t = 0;
            for (int j = 1; j <= 32; ++j) {
                const double tj = std::ldexp(1.0, j);
                t += std::fabs(tj * at(x, i) - std::floor(tj * at(x, i))) / tj;
            }
            p *= std::pow(1 + i * t, 10 / std::pow(double(D), 1.2));
        }
        return 10.0 / (double(D) * D) * p - 10.0 / (double(D) * D);
    }
    case 13: {
        auto g = [](double a, double b) {
            const double r = a * a + b * b;
            const double den = (1 + 0.001 * r) * (1 + 0.001 * r);
            return 0.5 + (std::sin(std::sqrt(r)) * std::sin(std::sqrt(r)) - 0.5) / den;
        };
        double s = 0;
        for (int i = 1; i <= D - 1; ++i) s += g(at(x, i), at(x, i + 1));
        return s + g(at(x, D), at(x, 1));
    }
    case 14:
    case 15: {
        double sq = 0, sm = 0;
        for (int i = 1; i <= D; ++i) {
            sq += at(x, i) * at(x, i);
            sm += at(x, i);
        }
        const double lead = id == 14 ? std::pow(std::fabs(sq - D), 0.25)
                                     : std::pow(std::fabs(sq * sq - sm * sm), 0.5);
        return lead + (0.5 * sq + sm) / D + 0.5;
    }
    case 16: {
        x = scaled(y, 10);
        double s = 0, p = 1;
        for (int i = 1; i <= D; ++i) {
            s += std::fabs(at(x, i));
            p *= std::fabs(at(x, i));
        }
        return s + p;
    }
    case 17: {
        double s = 0;
        for (int i = 1; i <= D; ++i) {
            double inner = 0;
            for (int j = 1; j <= i; ++j) inner += at(x, j);
            s += inner * inner;
        }
        return s;
    }
    case 18: {
        x = scaled(y, 500);
        double s = 0;
        for (int i = 1; i <= D; ++i) s += at(x, i) * std::sin(std::sqrt(std::fabs(at(x, i))));
        return s;
    }
    case 19: {
        x = scaled(y, 50);
        auto mu = [](double xi, double a, double k, double m) {
            if (xi > a) return k * std::pow(xi - a, m);
            if (xi < -a) return k * std::pow(-xi - a, m);
            return 0.0;
        };
        auto sin2 = [](double v) { return std::sin(v) * std::sin(v); };
        double br = sin2(3 * pi * at(x, 1));
        for (int i = 1; i <= D - 1; ++i)
            br += (at(x, i) - 1) * (at(x, i) - 1) * (1 + sin2(3 * pi * at(x, i + 1)));
        br += (at(x, D) - 1) * (at(x, D) - 1) * (1 + sin2(2 * pi * at(x, D)));
        double pen = 0;
        for (int i = 1; i <= D; ++i) pen += mu(at(x, i), 5, 100, 4);
        return 0.1 * br + pen;
    }
    case 20: {
        double s = 0;
        for (int i = 1; i <= D - 1; ++i) {
            const double q = at(x, i) * at(x, i) + at(x, i + 1) * at(x, i + 1);
            const double w = std::sin(50 * std::pow(q, 0.1));
            s += std::pow(q, 0.25) + std::pow(q, 0.25) * w * w;
        }
        return s / (D - 1);
    }
    case 21: {
        double sm = 0, sq = 0;
        for (int i = 1; i <= D; ++i) {
            sm += at(x, i);
            sq += at(x, i) * at(x, i);
        }
        return 1 - std::cos(2 * pi * sm) + 0.1 * sq;
    }
    case 22: {
        double mx = at(x, 1), sq = 0;
        for (int i = 1; i <= D; ++i) {
            mx = std::fmax(mx, at(x, i));
            sq += at(x, i) * at(x, i);
        }
        return mx < 20 ? sq : 400.0 * D;
    }
    }
    throw std::invalid_argument("oracle: not a basic id");
}

inline double f(int id, const V &y) {
    switch (id) {
    case 23: return f(8, y) + f(13, y) * 10 + f(21, y) * 1e-2;
    case 24: return f(2, y) * 1e-9 + f(9, y) * 2 + f(15, y) * 1e-1 + f(16, y) * 5e-2;
    case 25: return f(3, y) * 0.25 + f(4, y) * 1e-9 + f(7, y) + f(18, y) * 1e-2;
    case 26: return f(5, y) * 1e-5 + f(6, y) * 1e-7 + f(12, y) * 1e-2;
    case 27: return f(18, {f(10, y), f(14, y), f(20, y)});
    case 28: return f(9, {f(19, y), f(17, y), f(1, y)});
    case 29: return f(8, {f(3, y), f(12, y), f(15, y)});
    case 30: return f(13, {f(6, y), f(21, y), f(14, y)});
    default: return basic(id, y);
    }
}

}  // namespace oracle
