#include "icsi/functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace icsi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kE = std::numbers::e;

void check_point(std::span<const double> y) {
    if (y.size() < 2)
        throw std::invalid_argument("evaluation point needs at least 2 coordinates, got " +
                                    std::to_string(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!std::isfinite(y[i]))
            throw std::domain_error("non-finite coordinate at index " + std::to_string(i));
}

double sum_squares(const Vector &z) {
    double s = 0.0;
    for (double v : z)
        s += v * v;
    return s;
}

double sum(const Vector &z) {
    double s = 0.0;
    for (double v : z)
        s += v;
    return s;
}

double bent_cigar(const Vector &z) {
    double tail = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i)
        tail += z[i] * z[i];
    return z[0] * z[0] + 1e6 * tail;
}

double elliptic(const Vector &z) {
    const double d1 = static_cast<double>(z.size() - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        s += std::pow(1e6, static_cast<double>(i) / d1) * z[i] * z[i];
    return s;
}

// Cross-sum over i = 2..D with the printed plus sign.
double neumaier3(const Vector &z) {
    const double d = static_cast<double>(z.size());
    double s = 0.0;
    for (double v : z)
        s += (v - 1.0) * (v - 1.0);
    double cross = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i)
        cross += z[i] * z[i - 1];
    return s + cross + d * (d + 1.0) * (d - 1.0) / 6.0;
}

double discus(const Vector &z) {
    double tail = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i)
        tail += z[i] * z[i];
    return 1e6 * z[0] * z[0] + tail;
}

double different_powers(const Vector &z) {
    const double d1 = static_cast<double>(z.size() - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        s += std::pow(std::abs(z[i]), 2.0 + 4.0 * static_cast<double>(i) / d1);
    return std::sqrt(s);
}

double rosenbrock(const Vector &z) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double alpine(const Vector &z) {
    double s = 0.0;
    for (double v : z)
        s += std::abs(v * std::sin(v) + 0.1 * v);
    return s;
}

double ackley(const Vector &z) {
    const double d = static_cast<double>(z.size());
    double cs = 0.0;
    for (double v : z)
        cs += std::cos(kTwoPi * v);
    return -20.0 * std::expm1(-0.2 * std::sqrt(sum_squares(z) / d)) + (kE - std::exp(cs / d));
}

// k = 0..20, a = 0.5, b = 3.
double weierstrass(const Vector &z) {
    constexpr int kmax = 20;
    double s = 0.0;
    for (double v : z) {
        double ak = 1.0, bk = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            s += ak * std::cos(kTwoPi * bk * (v + 0.5));
            ak *= 0.5;
            bk *= 3.0;
        }
    }
    double base = 0.0;
    double ak = 1.0, bk = 1.0;
    for (int k = 0; k <= kmax; ++k) {
        base += ak * std::cos(kTwoPi * bk * 0.5);
        ak *= 0.5;
        bk *= 3.0;
    }
    return s - static_cast<double>(z.size()) * base;
}

double griewank(const Vector &z) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        s += z[i] * z[i] / 4000.0;
        p *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s - p + 1.0;
}

double rastrigin(const Vector &z) {
    double s = 0.0;
    for (double v : z)
        s += v * v - 10.0 * std::cos(kTwoPi * v) + 10.0;
    return s;
}

// floor as printed, j = 1..32.
double katsuura(const Vector &z) {
    const double d = static_cast<double>(z.size());
    const double expo = 10.0 / std::pow(d, 1.2);
    double p = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double t = 0.0;
        double pj = 2.0;
        for (int j = 1; j <= 32; ++j) {
            const double u = pj * z[i];
            t += std::abs(u - std::floor(u)) / pj;
            pj *= 2.0;
        }
        p *= std::pow(1.0 + static_cast<double>(i + 1) * t, expo);
    }
    const double c = 10.0 / (d * d);
    return c * p - c;
}

double scaffer_g(double x, double y) {
    const double r2 = x * x + y * y;
    const double s = std::sin(std::sqrt(r2));
    const double den = 1.0 + 0.001 * r2;
    return 0.5 + (s * s - 0.5) / (den * den);
}

double expanded_scaffer_f6(const Vector &z) {
    const std::size_t n = z.size();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        s += scaffer_g(z[i], z[i + 1]);
    return s + scaffer_g(z[n - 1], z[0]);
}

double happy_cat(const Vector &z) {
    const double d = static_cast<double>(z.size());
    const double r2 = sum_squares(z);
    return std::pow(std::abs(r2 - d), 0.25) + (0.5 * r2 + sum(z)) / d + 0.5;
}

double hgbat(const Vector &z) {
    const double d = static_cast<double>(z.size());
    const double r2 = sum_squares(z);
    const double sz = sum(z);
    return std::sqrt(std::abs(r2 * r2 - sz * sz)) + (0.5 * r2 + sz) / d + 0.5;
}

double schwefel_222(const Vector &z) {
    double s = 0.0, p = 1.0;
    for (double v : z) {
        s += std::abs(v);
        p *= std::abs(v);
    }
    return s + p;
}

double schwefel_12(const Vector &z) {
    double s = 0.0, prefix = 0.0;
    for (double v : z) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

double schwefel_226(const Vector &z) {
    double s = 0.0;
    for (double v : z)
        s += v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

double penalty_mu(double x, double a, double k, double m) {
    if (x > a)
        return k * std::pow(x - a, m);
    if (x < -a)
        return k * std::pow(-x - a, m);
    return 0.0;
}

// The (x_D - 1)^2 term lives inside the 0.1 bracket.
double penalized(const Vector &z) {
    const std::size_t n = z.size();
    const double s1 = std::sin(3.0 * kPi * z[0]);
    double inner = s1 * s1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double si = std::sin(3.0 * kPi * z[i + 1]);
        inner += (z[i] - 1.0) * (z[i] - 1.0) * (1.0 + si * si);
    }
    const double sd = std::sin(kTwoPi * z[n - 1]);
    inner += (z[n - 1] - 1.0) * (z[n - 1] - 1.0) * (1.0 + sd * sd);
    double pen = 0.0;
    for (double v : z)
        pen += penalty_mu(v, 5.0, 100.0, 4.0);
    return 0.1 * inner + pen;
}

double schaffer_f7(const Vector &z) {
    const std::size_t n = z.size();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        const double sr = std::sqrt(r);
        const double w = std::sin(50.0 * std::pow(r, 0.2));
        s += sr + sr * w * w;
    }
    return s / static_cast<double>(n - 1);
}

// cos(2*pi*sum(x)), not the norm used by the textbook Salomon function.
double salomon(const Vector &z) {
    return 1.0 - std::cos(kTwoPi * sum(z)) + 0.1 * sum_squares(z);
}

double well(const Vector &z) {
    const double mx = *std::max_element(z.begin(), z.end());
    if (mx < 20.0)
        return sum_squares(z);
    return 400.0 * static_cast<double>(z.size());
}

using Kernel = double (*)(const Vector &);

constexpr std::array<Kernel, kLastBasic> kKernels = {
    bent_cigar, elliptic,    neumaier3,           discus,       different_powers, rosenbrock,
    alpine,     ackley,      weierstrass,         griewank,     rastrigin,        katsuura,
    expanded_scaffer_f6,     happy_cat,           hgbat,        schwefel_222,     schwefel_12,
    schwefel_226,            penalized,           schaffer_f7,  salomon,          well,
};

constexpr std::array<double, kLastBasic> kScale = {
    100, 100, 0 /* D^2 */, 100, 100, 30, 10, 100, 1, 600, 5.12,
    5,   100, 100,         100, 10,  100, 500, 50, 100, 100, 100,
};

constexpr WeightedTerm kF23[] = {{8, 1.0}, {13, 10.0}, {21, 1e-2}};
constexpr WeightedTerm kF24[] = {{2, 1e-9}, {9, 2.0}, {15, 1e-1}, {16, 5e-2}};
constexpr WeightedTerm kF25[] = {{3, 0.25}, {4, 1e-9}, {7, 1.0}, {18, 1e-2}};
constexpr WeightedTerm kF26[] = {{5, 1e-5}, {6, 1e-7}, {12, 1e-2}};

constexpr std::array<NestedSpec, 4> kNested = {{
    {{10, 14, 20}, 18},
    {{19, 17, 1}, 9},
    {{3, 12, 15}, 8},
    {{6, 21, 14}, 13},
}};

constexpr const char *kNames[kNumFunctions] = {
    "Bent Cigar",          "High Conditioned Elliptic", "Neumaier 3",        "Discus",
    "Different Powers",    "Rosenbrock",                "Alpine",            "Ackley",
    "Weierstrass",         "Griewank",                  "Rastrigin",         "Katsuura",
    "Expanded Scaffer F6", "HappyCat",                  "HGBat",             "Schwefel 2.22",
    "Schwefel 1.2",        "Schwefel 2.26",             "Penalized",         "Schaffer F7",
    "Salomon",             "Well",                      "'8'+'13'+'21'",     "'2'+'9'+'15'+'16'",
    "'3'+'4'+'7'+'18'",    "'5'+'6'+'12'",              "('10'+'14'+'20')*'18'",
    "('19'+'17'+'1')*'9'", "('3'+'12'+'15')*'8'",       "('6'+'21'+'14')*'13'",
};

void require_class(FunctionId fid, FunctionClass expected, const char *what) {
    if (fid.kind() != expected)
        throw std::invalid_argument("function " + std::to_string(fid.value()) + " is not " + what);
}

}  // namespace

FunctionId::FunctionId(int id) : id_(id) {
    if (id < 1 || id > kNumFunctions)
        throw std::invalid_argument("unknown function id " + std::to_string(id) +
                                    " (expected 1..30)");
}

FunctionClass FunctionId::kind() const {
    if (id_ <= kLastBasic)
        return FunctionClass::basic;
    if (id_ <= kLastWeighted)
        return FunctionClass::weighted_composition;
    return FunctionClass::nested_composition;
}

double scale_factor(FunctionId fid, std::size_t dim) {
    require_class(fid, FunctionClass::basic, "a basic function");
    if (fid.value() == 3)
        return static_cast<double>(dim) * static_cast<double>(dim);
    return kScale[fid.value() - 1];
}

Vector input_scale(FunctionId fid, std::span<const double> y) {
    if (y.empty())
        throw std::invalid_argument("cannot scale an empty point");
    const double c = scale_factor(fid, y.size());
    Vector z(y.begin(), y.end());
    if (c != 100.0) {
        const double f = c / 100.0;
        for (double &v : z)
            v *= f;
    }
    return z;
}

double eval_basic(FunctionId fid, std::span<const double> y) {
    require_class(fid, FunctionClass::basic, "a basic function");
    check_point(y);
    return kKernels[fid.value() - 1](input_scale(fid, y));
}

double eval_weighted(FunctionId fid, std::span<const double> y) {
    require_class(fid, FunctionClass::weighted_composition, "a weighted composition");
    check_point(y);
    double s = 0.0;
    for (const auto &term : weighted_terms(fid))
        s += eval_basic(FunctionId(term.inner), y) * term.weight;
    return s;
}

double eval_nested(FunctionId fid, std::span<const double> y) {
    require_class(fid, FunctionClass::nested_composition, "a nested composition");
    check_point(y);
    const NestedSpec spec = nested_spec(fid);
    std::array<double, 3> v{};
    for (int k = 0; k < 3; ++k) {
        v[k] = eval_basic(FunctionId(spec.inner[k]), y);
        if (!std::isfinite(v[k]))
            throw std::domain_error("inner function " + std::to_string(spec.inner[k]) + " of f" +
                                    std::to_string(fid.value()) + " is not finite");
    }
    return eval_basic(FunctionId(spec.outer), v);
}

double eval_raw(FunctionId fid, std::span<const double> y) {
    switch (fid.kind()) {
    case FunctionClass::basic:
        return eval_basic(fid, y);
    case FunctionClass::weighted_composition:
        return eval_weighted(fid, y);
    case FunctionClass::nested_composition:
        return eval_nested(fid, y);
    }
    throw std::logic_error("unreachable function class");
}

std::span<const WeightedTerm> weighted_terms(FunctionId fid) {
    switch (fid.value()) {
    case 23: return kF23;
    case 24: return kF24;
    case 25: return kF25;
    case 26: return kF26;
    default: break;
    }
    throw std::invalid_argument("function " + std::to_string(fid.value()) +
                                " is not a weighted composition");
}

NestedSpec nested_spec(FunctionId fid) {
    require_class(fid, FunctionClass::nested_composition, "a nested composition");
    return kNested[fid.value() - kLastWeighted - 1];
}

std::string function_name(FunctionId fid) { return kNames[fid.value() - 1]; }

}  // namespace icsi
