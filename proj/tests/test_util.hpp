#pragma once

// Shared test oracles, independent of the library's computation paths:
// adaptive quadrature, finite differences, least-squares fits, random
// measures, and small statistics helpers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "barron/measure.hpp"
#include "barron/numeric.hpp"

namespace testutil {

/// Adaptive Simpson quadrature.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Central finite difference.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// One-sided finite differences of f along v at x.
inline double forward_diff_nd(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> x, std::span<const double> v,
                              double h = 1e-6) {
    const double f0 = f(x);
    std::vector<double> xp = x;
    for (std::size_t k = 0; k < x.size(); ++k) xp[k] += h * v[k];
    return (f(xp) - f0) / h;
}

/// Least-squares affine fit y ~ c0 + c . x over row-major points; returns
/// (c, c0). Plain normal equations are enough at test scale.
std::pair<std::vector<double>, double> linear_fit(std::span<const double> points,
                                                  std::span<const double> values, int dim);

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline std::vector<double> random_point(std::mt19937_64& rng, int dim, double scale) {
    std::vector<double> x(dim);
    for (double& v : x) v = scale * (2.0 * barron::uniform01(rng) - 1.0);
    return x;
}

inline std::vector<double> random_unit(std::mt19937_64& rng, int dim) {
    barron::NormalSampler normal;
    std::vector<double> x(dim);
    double n = 0.0;
    do {
        n = 0.0;
        for (double& v : x) {
            v = normal(rng);
            n += v * v;
        }
    } while (n == 0.0);
    n = std::sqrt(n);
    for (double& v : x) v /= n;
    return x;
}

/// Random atomic measure with the requested atom count (nonzero weights,
/// generic directions).
inline barron::SphereMeasure random_atomic_measure(std::mt19937_64& rng, int dim,
                                                   int atoms, double weight_scale = 1.0) {
    std::vector<double> w(atoms);
    std::vector<double> d;
    d.reserve(atoms * (dim + 1));
    for (int i = 0; i < atoms; ++i) {
        double s = 2.0 * barron::uniform01(rng) - 1.0;
        if (std::abs(s) < 0.05) s = s < 0 ? -0.05 : 0.05;
        w[i] = weight_scale * s;
        const auto u = random_unit(rng, dim + 1);
        d.insert(d.end(), u.begin(), u.end());
    }
    return barron::SphereMeasure::create(dim, std::move(w), std::move(d));
}

/// Raw network evaluation, the reference path for measure equivalence.
inline double raw_network_eval(const std::vector<barron::Neuron>& neurons,
                               std::span<const double> x) {
    double s = 0.0;
    for (const auto& n : neurons) {
        double z = n.b;
        for (std::size_t k = 0; k < n.w.size(); ++k) z += n.w[k] * x[k];
        s += n.a * std::max(z, 0.0);
    }
    return s;
}

/// Kolmogorov-Smirnov distance between samples and a discrete CDF table:
/// at each table point, the empirical fraction <= z is compared with F(z)
/// and the fraction < z with the left limit F(z-).
inline double ks_distance(std::vector<double> samples,
                          const std::vector<std::pair<double, double>>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    double prev_f = 0.0;
    for (const auto& [z, fz] : cdf) {
        const auto lo =
            std::lower_bound(samples.begin(), samples.end(), z) - samples.begin();
        const auto hi =
            std::upper_bound(samples.begin(), samples.end(), z) - samples.begin();
        worst = std::max(worst, std::abs(static_cast<double>(hi) / n - fz));
        worst = std::max(worst, std::abs(static_cast<double>(lo) / n - prev_f));
        prev_f = fz;
    }
    return worst;
}

} // namespace testutil
