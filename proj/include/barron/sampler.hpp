#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "barron/measure.hpp"

namespace barron {

/// Data distribution P with its exact second moment integral
/// int (|x|^2 + 1) dP: empirical weighted point clouds, the standard
/// Gaussian, or the uniform ball.
class DataDistribution {
  public:
    enum class Kind { empirical, gaussian, ball };

    static DataDistribution gaussian(int dim);
    static DataDistribution ball(int dim, double radius);
    /// Points row-major (count x dim); weights are normalized to sum 1 and
    /// must be nonnegative.
    static DataDistribution empirical(int dim, std::vector<double> points,
                                      std::vector<double> weights);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double second_moment_plus_one() const { return second_moment_plus_one_; }

    std::size_t point_count() const { return weights_.size(); }
    std::span<const double> point(std::size_t i) const {
        return {points_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    double weight(std::size_t i) const { return weights_[i]; }

    /// Draws `count` points (row-major), deterministic per seed.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

  private:
    Kind kind_ = Kind::gaussian;
    int dim_ = 0;
    double radius_ = 1.0;
    double second_moment_plus_one_ = 1.0;
    std::vector<double> points_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

/// Finite network drawn from a measure; path_norm = sum |a_i| |(w_i, b_i)|.
struct SampledNetwork {
    std::vector<Neuron> neurons;
    double path_norm = 0.0;

    double operator()(std::span<const double> x) const;
};

/// Probability form of a signed measure: all variation absorbed into the
/// sampling probabilities, so every draw carries amplitude +-TV(mu).
class EqualizedMeasure {
  public:
    explicit EqualizedMeasure(const SphereMeasure& mu);

    int dim() const { return dim_; }
    double total_variation() const { return tv_; }
    std::size_t support_size() const { return amps_.size(); }
    double probability(std::size_t i) const;
    double amplitude(std::size_t i) const { return amps_[i]; }
    std::span<const double> direction(std::size_t i) const {
        return {dirs_.data() + i * (dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
    }

    /// Index draw by the generalized inverse of the cumulative weights.
    std::size_t draw(std::mt19937_64& rng) const;

  private:
    int dim_ = 0;
    double tv_ = 0.0;
    std::vector<double> amps_;
    std::vector<double> dirs_;
    std::vector<double> cumulative_;
};

EqualizedMeasure equalize(const SphereMeasure& mu);

/// m iid draws from equalize(mu), each neuron scaled by 1/m; the path norm
/// then equals TV(mu) for every m and seed.
SampledNetwork sample_network(const SphereMeasure& mu, int m, std::uint64_t seed);

struct ErrorEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// L2(P) distance between f and g: exact weighted sum for empirical P,
/// Monte-Carlo with n_mc points otherwise. Monte-Carlo points are drawn in
/// fixed-size chunks with per-chunk subseeds, so the estimate does not
/// depend on how the chunks are scheduled.
ErrorEstimate l2_error(const BarronFunction& f, const SampledNetwork& g,
                       const DataDistribution& P, std::size_t n_mc, std::uint64_t seed);

/// Interleaves the leading decimal digits of x in [0,1]^d into one number in
/// [0,1]; coordinate j contributes digits at positions j, j+d, j+2d, ...
/// The budget is 12 digits total (floor(12/d) per coordinate), inside the
/// range where decimal grids are exact in doubles.
double digit_interleave(std::span<const double> x);
std::vector<double> digit_deinterleave(double z, int dim);
int digits_per_coordinate(int dim);

/// Left-continuous generalized inverse of a tabulated CDF: smallest z_i with
/// F(z_i) >= u. The table must be nondecreasing in both columns with F in
/// [0,1].
double inverse_cdf_sample(const std::vector<std::pair<double, double>>& cdf_table,
                          double u);

} // namespace barron
