#include "barron/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace barron {

DataDistribution DataDistribution::gaussian(int dim) {
    if (dim < 1) throw std::invalid_argument("DataDistribution: dim must be >= 1");
    DataDistribution p;
    p.kind_ = Kind::gaussian;
    p.dim_ = dim;
    p.second_moment_plus_one_ = dim + 1.0;
    return p;
}

DataDistribution DataDistribution::ball(int dim, double radius) {
    if (dim < 1 || radius <= 0.0)
        throw std::invalid_argument("DataDistribution: bad ball parameters");
    DataDistribution p;
    p.kind_ = Kind::ball;
    p.dim_ = dim;
    p.radius_ = radius;
    p.second_moment_plus_one_ = radius * radius * dim / (dim + 2.0) + 1.0;
    return p;
}

DataDistribution DataDistribution::empirical(int dim, std::vector<double> points,
                                             std::vector<double> weights) {
    if (dim < 1) throw std::invalid_argument("DataDistribution: dim must be >= 1");
    if (points.size() != weights.size() * dim || weights.empty())
        throw std::invalid_argument("DataDistribution: point/weight size mismatch");
    KahanSum total;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("DataDistribution: negative weight");
        total.add(w);
    }
    if (total.value() <= 0.0)
        throw std::invalid_argument("DataDistribution: weights must have positive sum");

    DataDistribution p;
    p.kind_ = Kind::empirical;
    p.dim_ = dim;
    p.points_ = std::move(points);
    p.weights_ = std::move(weights);
    for (double& w : p.weights_) w /= total.value();

    KahanSum m2;
    p.cumulative_.reserve(p.weights_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < p.weights_.size(); ++i) {
        double s = 1.0;
        for (int k = 0; k < dim; ++k) {
            const double v = p.points_[i * dim + k];
            s += v * v;
        }
        m2.add(p.weights_[i] * s);
        run += p.weights_[i];
        p.cumulative_.push_back(run);
    }
    p.cumulative_.back() = 1.0;
    p.second_moment_plus_one_ = m2.value();
    return p;
}

std::vector<double> DataDistribution::sample(std::size_t count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    NormalSampler normal;
    std::vector<double> out(count * dim_);
    switch (kind_) {
        case Kind::gaussian:
            for (double& v : out) v = normal(rng);
            break;
        case Kind::ball:
            for (std::size_t i = 0; i < count; ++i) {
                double nrm = 0.0;
                for (int k = 0; k < dim_; ++k) {
                    out[i * dim_ + k] = normal(rng);
                    nrm += out[i * dim_ + k] * out[i * dim_ + k];
                }
                nrm = std::sqrt(nrm);
                if (nrm == 0.0) nrm = 1.0;
                const double r =
                    radius_ * std::pow(uniform01(rng), 1.0 / static_cast<double>(dim_));
                for (int k = 0; k < dim_; ++k) out[i * dim_ + k] *= r / nrm;
            }
            break;
        case Kind::empirical:
            for (std::size_t i = 0; i < count; ++i) {
                const double u = uniform01(rng);
                const auto it =
                    std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
                const std::size_t idx =
                    std::min<std::size_t>(it - cumulative_.begin(), point_count() - 1);
                for (int k = 0; k < dim_; ++k)
                    out[i * dim_ + k] = points_[idx * dim_ + k];
            }
            break;
    }
    return out;
}

double SampledNetwork::operator()(std::span<const double> x) const {
    KahanSum acc;
    for (const Neuron& n : neurons) {
        double z = n.b;
        for (std::size_t k = 0; k < n.w.size(); ++k) z += n.w[k] * x[k];
        if (z > 0.0) acc.add(n.a * z);
    }
    return acc.value();
}

EqualizedMeasure::EqualizedMeasure(const SphereMeasure& mu) {
    dim_ = mu.dim();
    tv_ = barron::total_variation(mu);
    if (tv_ <= 0.0)
        throw std::invalid_argument("equalize: measure has zero total variation");

    auto absorb = [&](double w, std::span<const double> dir) {
        if (w == 0.0) return;
        amps_.push_back(w > 0.0 ? tv_ : -tv_);
        dirs_.insert(dirs_.end(), dir.begin(), dir.end());
        cumulative_.push_back(std::abs(w));
    };
    for (std::size_t i = 0; i < mu.atom_count(); ++i) absorb(mu.atom_weight(i), mu.atom_dir(i));
    for (std::size_t i = 0; i < mu.node_count(); ++i) absorb(mu.node_weight(i), mu.node_dir(i));

    KahanSum run;
    for (double& c : cumulative_) {
        run.add(c);
        c = run.value() / tv_;
    }
    if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

double EqualizedMeasure::probability(std::size_t i) const {
    return (i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1]);
}

std::size_t EqualizedMeasure::draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng);
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(it - cumulative_.begin(), amps_.size() - 1);
}

EqualizedMeasure equalize(const SphereMeasure& mu) { return EqualizedMeasure(mu); }

SampledNetwork sample_network(const SphereMeasure& mu, int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("sample_network: width must be >= 1");
    const EqualizedMeasure eq(mu);
    const int d = mu.dim();

    std::mt19937_64 rng(seed);
    SampledNetwork net;
    net.neurons.reserve(m);
    KahanSum path;
    for (int i = 0; i < m; ++i) {
        const std::size_t idx = eq.draw(rng);
        auto dir = eq.direction(idx);
        Neuron n;
        n.a = eq.amplitude(idx) / m;
        n.w.assign(dir.begin(), dir.begin() + d);
        n.b = dir[d];
        path.add(std::abs(n.a));  // |(w, b)| = 1 by construction
        net.neurons.push_back(std::move(n));
    }
    net.path_norm = path.value();
    return net;
}

ErrorEstimate l2_error(const BarronFunction& f, const SampledNetwork& g,
                       const DataDistribution& P, std::size_t n_mc, std::uint64_t seed) {
    if (P.dim() != f.dim())
        throw std::invalid_argument("l2_error: distribution/function dimension mismatch");

    const int d = P.dim();
    KahanSum sq, quad;
    std::size_t count = 0;

    if (P.kind() == DataDistribution::Kind::empirical) {
        for (std::size_t i = 0; i < P.point_count(); ++i) {
            auto x = P.point(i);
            const double r = f(x) - g(x);
            sq.add(P.weight(i) * r * r);
        }
        return {std::sqrt(std::max(0.0, sq.value())), 0.0};
    }

    if (n_mc < 1) throw std::invalid_argument("l2_error: n_mc must be >= 1");
    constexpr std::size_t kChunk = 4096;
    std::size_t chunk_index = 0;
    while (count < n_mc) {
        const std::size_t take = std::min(kChunk, n_mc - count);
        const std::uint64_t subseed = seed * 0x9e3779b97f4a7c15ull + chunk_index;
        const std::vector<double> pts = P.sample(take, subseed);
        for (std::size_t i = 0; i < take; ++i) {
            std::span<const double> x{pts.data() + i * d, static_cast<std::size_t>(d)};
            const double r = f(x) - g(x);
            sq.add(r * r);
            quad.add(r * r * r * r);
        }
        count += take;
        ++chunk_index;
    }

    const double mean_sq = sq.value() / count;
    const double mean_quad = quad.value() / count;
    const double var_sq = std::max(0.0, mean_quad - mean_sq * mean_sq) / count;
    const double rmse = std::sqrt(std::max(0.0, mean_sq));
    // delta method: se(sqrt(m)) = se(m) / (2 sqrt(m))
    const double se = rmse > 0.0 ? std::sqrt(var_sq) / (2.0 * rmse) : 0.0;
    return {rmse, se};
}

int digits_per_coordinate(int dim) {
    if (dim < 1 || dim > 12)
        throw std::invalid_argument("digit_interleave: dim must lie in [1, 12]");
    return 12 / dim;
}

double digit_interleave(std::span<const double> x) {
    const int d = static_cast<int>(x.size());
    const int per = digits_per_coordinate(d);

    // Round each coordinate to its digit budget; values rounding up to 1.0
    // clamp to the largest representable grid point (no trailing nines).
    std::vector<long long> grid(d);
    const double scale = std::pow(10.0, per);
    for (int k = 0; k < d; ++k) {
        if (!(x[k] >= 0.0 && x[k] <= 1.0))
            throw std::invalid_argument("digit_interleave: coordinate " +
                                        std::to_string(k) + " outside [0, 1]");
        long long g = std::llround(x[k] * scale);
        if (g >= static_cast<long long>(scale)) g = static_cast<long long>(scale) - 1;
        grid[k] = g;
    }

    // Digit j of coordinate k lands at interleaved position j*d + k.
    double out = 0.0;
    double place = 1.0;
    for (int j = 0; j < per; ++j) {
        long long div = 1;
        for (int t = 0; t < per - 1 - j; ++t) div *= 10;
        for (int k = 0; k < d; ++k) {
            const int digit = static_cast<int>((grid[k] / div) % 10);
            place /= 10.0;
            out += digit * place;
        }
    }
    return out;
}

std::vector<double> digit_deinterleave(double z, int dim) {
    if (!(z >= 0.0 && z <= 1.0))
        throw std::invalid_argument("digit_deinterleave: value outside [0, 1]");
    const int per = digits_per_coordinate(dim);
    const int total = per * dim;

    long long packed = std::llround(z * std::pow(10.0, total));
    long long cap = 1;
    for (int t = 0; t < total; ++t) cap *= 10;
    if (packed >= cap) packed = cap - 1;

    std::vector<long long> grid(dim, 0);
    // Digits come out most-significant first: position p = j*dim + k.
    for (int p = 0; p < total; ++p) {
        long long div = 1;
        for (int t = 0; t < total - 1 - p; ++t) div *= 10;
        const int digit = static_cast<int>((packed / div) % 10);
        grid[p % dim] = grid[p % dim] * 10 + digit;
    }
    std::vector<double> out(dim);
    const double scale = std::pow(10.0, per);
    for (int k = 0; k < dim; ++k) out[k] = static_cast<double>(grid[k]) / scale;
    return out;
}

double inverse_cdf_sample(const std::vector<std::pair<double, double>>& cdf_table,
                          double u) {
    if (cdf_table.empty()) throw std::invalid_argument("inverse_cdf_sample: empty table");
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument("inverse_cdf_sample: u outside [0, 1]");
    double prev_z = -std::numeric_limits<double>::infinity();
    double prev_f = 0.0;
    for (const auto& [z, fz] : cdf_table) {
        if (z < prev_z || fz < prev_f || fz > 1.0 + 1e-15)
            throw std::invalid_argument("inverse_cdf_sample: table not monotone in [0, 1]");
        prev_z = z;
        prev_f = fz;
    }
    const auto it = std::lower_bound(
        cdf_table.begin(), cdf_table.end(), u,
        [](const std::pair<double, double>& row, double v) { return row.second < v; });
    if (it == cdf_table.end()) return cdf_table.back().first;
    return it->first;
}

} // namespace barron
