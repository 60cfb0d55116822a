#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace barron {

/// Compensated (Kahan-Neumaier) accumulator. Summation order still matters
/// for bit-reproducibility, so callers iterate containers in canonical order.
class KahanSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

inline double relu(double z) { return z > 0.0 ? z : 0.0; }

/// Uniform double in [0,1) with 53 random bits. Unlike the distribution
/// adaptors in <random>, the output stream is fixed by the engine alone.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (deterministic given the engine stream).
class NormalSampler {
  public:
    double operator()(std::mt19937_64& rng) {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = uniform01(rng);
        double u2 = uniform01(rng);
        while (u1 <= 0.0) u1 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

  private:
    double spare_ = 0.0;
    bool have_ = false;
};

/// Inverse standard normal CDF (Acklam's rational approximation, then one
/// Halley refinement against erfc). Used to map low-discrepancy points to
/// Gaussian coordinates; accuracy is far below quadrature error.
double normal_quantile(double p);

} // namespace barron
